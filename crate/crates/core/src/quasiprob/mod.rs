//! κ-ordered characteristic functions and quasi-probability distributions.
//!
//! `χ(γ,κ) = Tr[ρ exp(γa† - γ*a + κ|γ|²/2)]` and
//! `P_κ(α) = (1/π) ∫ d²γ/π exp(γ*α - γα*) χ(γ,κ)`; κ = -1, 0, 1 give Q, W, P.

mod squeezed;
mod thermal;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::variants::{PstsOutputShift, PsstsOutputExponent};
use crate::{Complex, Error, Result, Stage, StateSpec};

pub use squeezed::{AddedChain, SubtractedChain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KappaOrder {
    /// κ = -1
    Q,
    /// κ = 0
    W,
    /// κ = +1
    P,
}

impl KappaOrder {
    pub const ALL: [KappaOrder; 3] = [KappaOrder::Q, KappaOrder::W, KappaOrder::P];

    pub fn value(self) -> f64 {
        match self {
            KappaOrder::Q => -1.0,
            KappaOrder::W => 0.0,
            KappaOrder::P => 1.0,
        }
    }

    pub fn from_value(kappa: i32) -> Result<Self> {
        match kappa {
            -1 => Ok(KappaOrder::Q),
            0 => Ok(KappaOrder::W),
            1 => Ok(KappaOrder::P),
            _ => Err(Error::Domain(format!("kappa must be -1, 0 or 1, got {kappa}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Admissibility {
    Admissible,
    Inadmissible(String),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Rectangular sampling of the α plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub n_re: usize,
    pub n_im: usize,
}

impl PhaseGrid {
    pub fn new(re_min: f64, re_max: f64, n_re: usize, im_min: f64, im_max: f64, n_im: usize) -> Result<Self> {
        let g = PhaseGrid { re_min, re_max, im_min, im_max, n_re, n_im };
        if !(re_max > re_min && im_max > im_min) || n_re < 2 || n_im < 2 {
            return Err(Error::Domain(format!("degenerate phase grid {g:?}")));
        }
        Ok(g)
    }

    pub fn square(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new(min, max, n, min, max, n)
    }

    pub fn re(&self, i: usize) -> f64 {
        self.re_min + (self.re_max - self.re_min) * i as f64 / (self.n_re - 1) as f64
    }

    pub fn im(&self, j: usize) -> f64 {
        self.im_min + (self.im_max - self.im_min) * j as f64 / (self.n_im - 1) as f64
    }

    /// Nodes in row-major order (real part outer).
    pub fn nodes(&self) -> Vec<Complex> {
        (0..self.n_re)
            .flat_map(|i| (0..self.n_im).map(move |j| (i, j)))
            .map(|(i, j)| Complex::new(self.re(i), self.im(j)))
            .collect()
    }
}

/// Values of a quasi-probability on a [`PhaseGrid`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseField {
    pub grid: PhaseGrid,
    pub values: Vec<f64>,
}

impl PhaseField {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n_im + j]
    }

    /// CSV with header `re,im,value` and 17 significant digits.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "re,im,value")?;
        for (node, v) in self.grid.nodes().iter().zip(&self.values) {
            writeln!(w, "{},{},{}", Sci(node.re), Sci(node.im), Sci(*v))?;
        }
        Ok(())
    }
}

/// Locale-independent float formatting with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Sci(pub f64);

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `+ 0.0` folds a negative zero into zero
        write!(f, "{:.16e}", self.0 + 0.0)
    }
}

/// A state and stage prepared for repeated evaluation at fixed κ.
#[derive(Debug, Clone)]
pub struct QuasiProb {
    kappa: KappaOrder,
    model: Model,
}

#[derive(Debug, Clone)]
enum Model {
    Radial(thermal::RadialSeries),
    Added(squeezed::AddedModel),
    Subtracted(squeezed::SubtractedModel),
}

impl QuasiProb {
    pub fn new(spec: &StateSpec, stage: Stage, kappa: KappaOrder) -> Result<Self> {
        Self::with_variants(spec, stage, kappa, PsstsOutputExponent::default())
    }

    pub fn with_variants(
        spec: &StateSpec,
        stage: Stage,
        kappa: KappaOrder,
        exponent: PsstsOutputExponent,
    ) -> Result<Self> {
        stage.validate()?;
        let model = match spec {
            StateSpec::Pasts { .. } => Model::Added(squeezed::AddedModel::new(spec, stage, kappa)?),
            StateSpec::Pssts { .. } => {
                Model::Subtracted(squeezed::SubtractedModel::new(spec, stage, kappa, exponent)?)
            }
            _ => Model::Radial(thermal::RadialSeries::new(spec, stage)?),
        };
        Ok(QuasiProb { kappa, model })
    }

    pub fn guard(&self) -> Admissibility {
        match &self.model {
            Model::Radial(r) => r.guard(self.kappa),
            Model::Added(a) => a.guard(),
            Model::Subtracted(s) => s.guard(),
        }
    }

    fn require_admissible(&self) -> Result<()> {
        match self.guard() {
            Admissibility::Admissible => Ok(()),
            Admissibility::Inadmissible(reason) => Err(Error::Inadmissible(reason)),
        }
    }

    pub fn char_fn(&self, gamma: Complex) -> Result<Complex> {
        self.require_admissible()?;
        match &self.model {
            Model::Radial(r) => Ok(r.char_fn(self.kappa, gamma)),
            Model::Added(a) => a.char_fn(gamma),
            Model::Subtracted(s) => s.char_fn(gamma),
        }
    }

    pub fn point(&self, alpha: Complex) -> Result<f64> {
        self.require_admissible()?;
        match &self.model {
            Model::Radial(r) => r.quasiprob(self.kappa, alpha, PstsOutputShift::default()),
            Model::Added(a) => a.quasiprob(alpha),
            Model::Subtracted(s) => s.quasiprob(alpha),
        }
    }

    pub fn grid(&self, grid: &PhaseGrid, exec: Exec) -> Result<PhaseField> {
        self.require_admissible()?;
        let nodes = grid.nodes();
        let values = exec.map(&nodes, |&a| {
            self.point(a).map_err(|e| Error::Domain(format!("at α = {a}: {e}")))
        });
        let values = values.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(PhaseField { grid: *grid, values })
    }
}

pub fn convergence_guard(spec: &StateSpec, stage: Stage, kappa: KappaOrder) -> Admissibility {
    match QuasiProb::new(spec, stage, kappa) {
        Ok(q) => q.guard(),
        Err(e) => Admissibility::Inadmissible(e.to_string()),
    }
}

pub fn char_fn(spec: &StateSpec, stage: Stage, kappa: KappaOrder, gamma: Complex) -> Result<Complex> {
    QuasiProb::new(spec, stage, kappa)?.char_fn(gamma)
}

pub fn quasiprob_point(spec: &StateSpec, stage: Stage, kappa: KappaOrder, alpha: Complex) -> Result<f64> {
    QuasiProb::new(spec, stage, kappa)?.point(alpha)
}

pub fn quasiprob_grid(spec: &StateSpec, stage: Stage, kappa: KappaOrder, grid: &PhaseGrid) -> Result<PhaseField> {
    quasiprob_grid_with(spec, stage, kappa, grid, Exec::default())
}

pub fn quasiprob_grid_with(
    spec: &StateSpec,
    stage: Stage,
    kappa: KappaOrder,
    grid: &PhaseGrid,
    exec: Exec,
) -> Result<PhaseField> {
    QuasiProb::new(spec, stage, kappa)?.grid(grid, exec)
}

/// Output photon-subtracted thermal P_κ with a selectable ordering shift.
pub fn psts_output_quasiprob(
    n_th: f64,
    m: u32,
    s: f64,
    kappa: KappaOrder,
    alpha: Complex,
    shift: PstsOutputShift,
) -> Result<f64> {
    let series = thermal::RadialSeries::new(&StateSpec::Psts { n_th, m }, Stage::Output { s })?;
    series.quasiprob(kappa, alpha, shift)
}

#[cfg(test)]
mod tests;
