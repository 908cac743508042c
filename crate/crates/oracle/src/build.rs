use ngstates_core::{Complex, StateSpec};

use crate::density::DensityMatrix;
use crate::error::{OracleError, Result};
use crate::ops::{annihilation, squeeze, CMatrix};

pub const DEFAULT_CUTOFF: usize = 60;
/// Extra basis states carried during construction and dropped at the end.
pub const HEADROOM: usize = 40;
/// Smallest cutoff accepted for squeezed states.
const SQUEEZED_MIN_CUTOFF: usize = 60;
const TAIL_TOL: f64 = 1e-10;
/// Largest trace deficit accepted after truncating the headroom.
const TRUNCATED_TOL: f64 = 1e-6;

/// The unnormalized operator behind each family, on `cutoff + HEADROOM` states:
/// `a†^m (Σ q^n |n⟩⟨n|) a^m` for PATS, `a^m (Σ q^{n+1} |n⟩⟨n|) a†^m` for PSTS,
/// `a†^m (Σ_{n≠k} q^n |n⟩⟨n|) a^m` for PAKFTS, and `a†^m ρ_s a^m`,
/// `a^m ρ_s a†^m` with the normalized squeezed thermal `ρ_s` otherwise.
fn unnormalized(spec: &StateSpec, cutoff: usize) -> Result<CMatrix> {
    spec.validate()?;
    let n_th = spec.n_th();
    let q = n_th / (1.0 + n_th);
    if q > 0.0 && q.powi(cutoff as i32) / (1.0 - q) >= TAIL_TOL {
        return Err(OracleError::Truncation { cutoff, tail: q.powi(cutoff as i32) / (1.0 - q) });
    }
    let squeezed = matches!(spec, StateSpec::Pasts { .. } | StateSpec::Pssts { .. });
    if squeezed && cutoff < SQUEEZED_MIN_CUTOFF {
        return Err(OracleError::Range(format!("squeezed states need cutoff ≥ {SQUEEZED_MIN_CUTOFF}")));
    }
    let w = cutoff + HEADROOM;
    let weights: Vec<f64> = (0..w)
        .map(|n| match *spec {
            StateSpec::Pats { .. } => q.powi(n as i32),
            StateSpec::Psts { .. } => q.powi(n as i32 + 1),
            StateSpec::Pakfts { k, .. } if n == k as usize => 0.0,
            StateSpec::Pakfts { .. } => q.powi(n as i32),
            _ => (1.0 - q) * q.powi(n as i32),
        })
        .collect();
    // the vacuum written as a subtracted thermal state
    let weights = if matches!(spec, StateSpec::Psts { n_th, .. } if *n_th == 0.0) {
        (0..w).map(|n| if n == 0 { 1.0 } else { 0.0 }).collect()
    } else {
        weights
    };
    let mut rho = DensityMatrix::diagonal(&weights).matrix().clone();
    if squeezed {
        let s = squeeze(spec.lambda(), w);
        rho = &s * rho * s.adjoint();
    }
    let a = annihilation(w);
    let ad = a.adjoint();
    let added = matches!(spec, StateSpec::Pats { .. } | StateSpec::Pakfts { .. } | StateSpec::Pasts { .. });
    for _ in 0..spec.m() {
        rho = if added { &ad * rho * &a } else { &a * rho * &ad };
    }
    Ok(rho)
}

/// Trace of the unnormalized operator of [`build_state`].
pub fn unnormalized_trace(spec: &StateSpec, cutoff: usize) -> Result<f64> {
    Ok(unnormalized(spec, cutoff)?.trace().re)
}

/// Normalized density matrix on `|0⟩..|cutoff-1⟩`.
pub fn build_state(spec: &StateSpec, cutoff: usize) -> Result<DensityMatrix> {
    let rho = unnormalized(spec, cutoff)?;
    let total = rho.trace().re;
    if !(total > 0.0) {
        return Err(OracleError::Invalid(format!("unnormalized trace {total} is not positive")));
    }
    let rho = DensityMatrix::from_matrix(rho * Complex::new(1.0 / total, 0.0));
    let kept = rho.truncated(cutoff);
    let tail = 1.0 - kept.trace();
    if tail > TRUNCATED_TOL {
        return Err(OracleError::Truncation { cutoff, tail });
    }
    Ok(kept)
}
