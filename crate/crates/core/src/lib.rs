//! Closed-form phase-space distributions and photon statistics for photon-added,
//! photon-subtracted, number-filtered and squeezed thermal states, before and
//! after a classical Gaussian noise channel.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod exec;
pub mod numkernel;
pub mod photstat;
pub mod quasiprob;
pub mod states;
pub mod variants;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;
pub use quasiprob::{KappaOrder, PhaseField, PhaseGrid};
pub use states::{Stage, StateSpec};
