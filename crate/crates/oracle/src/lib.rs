//! Brute-force ground truth in a truncated Fock basis: density matrices built
//! operator by operator, the noise channel by Gauss–Hermite quadrature over
//! displacements, and phase-space and photon-statistics readouts.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod build;
mod channel;
mod density;
mod error;
mod ops;
mod readout;

pub use build::{build_state, unnormalized_trace, DEFAULT_CUTOFF, HEADROOM};
pub use channel::{apply_channel, QuadratureConfig};
pub use density::DensityMatrix;
pub use error::{OracleError, Result};
pub use ops::{annihilation, displacement, squeeze};
pub use readout::{oracle_char, oracle_moment, oracle_pnd, oracle_q, oracle_wigner};

use ngstates_core::{Stage, StateSpec};

/// Cutoffs tried in order by [`prepare`].
pub const CUTOFF_LADDER: [usize; 4] = [60, 100, 150, 200];

/// Weight allowed outside the basis, and in its top ten states after the channel.
const TOP_TAIL: f64 = 1e-10;

/// Builds the state and pushes it through the channel, escalating the cutoff
/// until construction succeeds and the top of the basis is empty.
pub fn prepare(spec: &StateSpec, stage: Stage, quad: QuadratureConfig) -> Result<DensityMatrix> {
    let mut last = None;
    for &cutoff in &CUTOFF_LADDER {
        match prepare_at(spec, stage, quad, cutoff) {
            Ok(rho) => return Ok(rho),
            Err(e @ (OracleError::Truncation { .. } | OracleError::QuadratureOrder { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("non-empty ladder"))
}

/// [`prepare`] at a fixed cutoff.
pub fn prepare_at(spec: &StateSpec, stage: Stage, quad: QuadratureConfig, cutoff: usize) -> Result<DensityMatrix> {
    let rho = build_state(spec, cutoff)?;
    if 1.0 - rho.trace() > TOP_TAIL {
        return Err(OracleError::Truncation { cutoff, tail: 1.0 - rho.trace() });
    }
    let out = apply_channel(&rho, stage.s(), quad)?;
    let top = out.top_occupation(10);
    if top > TOP_TAIL {
        return Err(OracleError::Truncation { cutoff, tail: top });
    }
    Ok(out)
}
