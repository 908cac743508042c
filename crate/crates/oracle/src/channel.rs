use std::f64::consts::PI;

use ngstates_core::exec::Exec;
use ngstates_core::numkernel::quadrature::GaussHermite;
use ngstates_core::Complex;

use crate::density::DensityMatrix;
use crate::error::{OracleError, Result};
use crate::ops::{displacement, CMatrix};

const TRACE_DRIFT_TOL: f64 = 1e-6;

/// Gauss–Hermite rule per real axis of the displacement plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    pub order_per_axis: usize,
    pub exec: Exec,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { order_per_axis: 24, exec: Exec::default() }
    }
}

impl QuadratureConfig {
    pub fn new(order_per_axis: usize) -> Result<Self> {
        if order_per_axis < 8 {
            return Err(OracleError::Invalid(format!("quadrature order {order_per_axis} below 8")));
        }
        Ok(QuadratureConfig { order_per_axis, ..Default::default() })
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        QuadratureConfig { exec, ..self }
    }

    /// Node scale `√(s/(1+s))` of the displacement variable.
    pub fn displacement_scale(s: f64) -> f64 {
        (s / (1.0 + s)).sqrt()
    }
}

/// `Σ_i w_i D(z_i) ρ D(z_i)†` along one axis; terms are summed in node order.
fn axis_pass(rho: &CMatrix, nodes: &[(Complex, f64)], exec: Exec) -> CMatrix {
    let n = rho.nrows();
    let terms = exec.map(nodes, |&(z, w)| {
        let d = displacement(z, n);
        (&d * rho * d.adjoint()) * Complex::new(w, 0.0)
    });
    terms.into_iter().fold(CMatrix::zeros(n, n), |acc, t| acc + t)
}

/// `Φ_s(ρ) = ∫ d²z G(z) D(z) ρ D(z)†` with `G(z) = exp(-|z|²/s)/(πs)`.
///
/// The product rule over `(Re z, Im z)` is evaluated as an `Im z` pass
/// followed by a `Re z` pass, since `D(x + iy) ρ D(x + iy)† = D(x) D(iy) ρ D(iy)† D(x)†`.
/// Matrix elements of `D(x) σ D(x)†` are `e^{-x²}` times a polynomial in `x`, so
/// the Hermite rule is fitted to the combined weight `e^{-x²(1+s)/s}` and the
/// `e^{-x²}` factor is divided back out at the nodes.
pub fn apply_channel(rho: &DensityMatrix, s: f64, quad: QuadratureConfig) -> Result<DensityMatrix> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(OracleError::Invalid(format!("noise variance {s}")));
    }
    if s == 0.0 {
        return Ok(rho.clone());
    }
    if quad.order_per_axis < 8 {
        return Err(OracleError::Invalid(format!("quadrature order {} below 8", quad.order_per_axis)));
    }
    let gh = GaussHermite::new(quad.order_per_axis);
    let scale = QuadratureConfig::displacement_scale(s);
    let axis = |unit: Complex| -> Vec<(Complex, f64)> {
        gh.nodes
            .iter()
            .zip(&gh.weights)
            .map(|(&t, &w)| {
                let x = scale * t;
                (unit * x, w * (x * x).exp() / (PI * (1.0 + s)).sqrt())
            })
            .collect()
    };
    let inner = axis_pass(rho.matrix(), &axis(Complex::new(0.0, 1.0)), quad.exec);
    let out = axis_pass(&inner, &axis(Complex::new(1.0, 0.0)), quad.exec);
    let out = DensityMatrix::from_matrix(out);
    let drift = (out.trace() - rho.trace()).abs();
    if drift > TRACE_DRIFT_TOL {
        return Err(OracleError::QuadratureOrder { drift });
    }
    Ok(out)
}
