use std::f64::consts::PI;

use ngstates_core::numkernel::falling;
use ngstates_core::{Complex, KappaOrder};

use crate::density::DensityMatrix;
use crate::error::{OracleError, Result};
use crate::ops::displacement;

fn check_point(rho: &DensityMatrix, z: Complex) -> Result<()> {
    let bound = rho.cutoff() as f64 / 8.0;
    if z.norm() > bound {
        return Err(OracleError::Range(format!("|{z}| exceeds cutoff/8 = {bound}")));
    }
    Ok(())
}

/// `Tr[ρ M]` for a matrix of exact elements on the same basis.
fn trace_product(rho: &DensityMatrix, m: &crate::ops::CMatrix, sign: impl Fn(usize) -> f64) -> Complex {
    let r = rho.matrix();
    let n = rho.cutoff();
    (0..n)
        .map(|i| {
            let row: Complex = (0..n).map(|j| r[(i, j)] * m[(j, i)]).sum();
            row * sign(i)
        })
        .sum()
}

/// `W(α) = (2/π) Tr[ρ D(2α) Π]`, with `D(α) Π D(α)† = D(2α) Π`.
pub fn oracle_wigner(rho: &DensityMatrix, alpha: Complex) -> Result<f64> {
    check_point(rho, alpha)?;
    let d = displacement(alpha * 2.0, rho.cutoff());
    let parity = trace_product(rho, &d, |i| if i % 2 == 0 { 1.0 } else { -1.0 });
    Ok(2.0 / PI * parity.re)
}

/// `Q(α) = ⟨α|ρ|α⟩/π`.
pub fn oracle_q(rho: &DensityMatrix, alpha: Complex) -> Result<f64> {
    check_point(rho, alpha)?;
    let d = displacement(alpha, rho.cutoff());
    let coherent = d.column(0);
    Ok((coherent.adjoint() * rho.matrix() * coherent)[(0, 0)].re / PI)
}

/// `Tr[ρ D(γ)] exp(κ|γ|²/2)`.
pub fn oracle_char(rho: &DensityMatrix, gamma: Complex, kappa: KappaOrder) -> Result<Complex> {
    check_point(rho, gamma)?;
    let d = displacement(gamma, rho.cutoff());
    Ok(trace_product(rho, &d, |_| 1.0) * (kappa.value() * gamma.norm_sqr() / 2.0).exp())
}

pub fn oracle_pnd(rho: &DensityMatrix, n: usize) -> Result<f64> {
    if n >= rho.cutoff().saturating_sub(10) {
        return Err(OracleError::Range(format!("n = {n} inside the top ten basis states")));
    }
    Ok(rho.get(n, n).re)
}

/// `Σ_n n!/(n-r)! ρ_nn`.
pub fn oracle_moment(rho: &DensityMatrix, r: u32) -> Result<f64> {
    if rho.top_occupation(10) > 1e-10 {
        return Err(OracleError::Range("occupied headroom; raise the cutoff".into()));
    }
    Ok(rho.populations().iter().enumerate().map(|(n, p)| falling(n as u64, r) * p).sum())
}
