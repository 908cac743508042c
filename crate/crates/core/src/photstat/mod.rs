//! Photon-number distributions, factorial moments `⟨a†^r a^r⟩`, Mandel Q and g².

mod squeezed;
mod thermal;

use serde::Serialize;

use crate::numkernel::{falling, FACTORIAL_MAX};
use crate::variants::{PastsPndPoint, PstsPndPoint};
use crate::{Error, Result, Stage, StateSpec};

/// Hard cap on the number of terms of an infinite moment series.
pub const SERIES_CAP: u64 = 4000;
/// Largest supported moment order.
pub const MAX_MOMENT: u32 = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PndResult {
    pub probabilities: Vec<f64>,
    /// Majorant of `Σ_{n > n_max} P(n)`.
    pub tail_bound: f64,
}

impl PndResult {
    pub fn sum(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// CSV with header `n,probability`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,probability")?;
        for (n, p) in self.probabilities.iter().enumerate() {
            writeln!(w, "{n},{}", crate::quasiprob::Sci(*p))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatSummary {
    pub mean_n: f64,
    pub second_factorial_moment: f64,
    pub mandel_q: f64,
    pub g2: f64,
}

/// The vacuum written as a photon-subtracted thermal state is handled as the
/// zero-temperature thermal state.
fn canonical(spec: &StateSpec) -> StateSpec {
    match *spec {
        StateSpec::Psts { n_th: 0.0, .. } => StateSpec::thermal(0.0),
        s => s,
    }
}

fn prepare(spec: &StateSpec, stage: Stage) -> Result<StateSpec> {
    spec.validate()?;
    stage.validate()?;
    Ok(canonical(spec))
}

/// `P(0..=n_max)` for a validated, canonical spec.
fn pnd_vec(spec: &StateSpec, stage: Stage, n_max: u32) -> Result<Vec<f64>> {
    let s = stage.s();
    match *spec {
        StateSpec::Psts { n_th, m } => thermal::psts_pnd(n_th, m, s, n_max, PstsPndPoint::default()),
        StateSpec::Pasts { .. } => squeezed::pasts_pnd(spec, s, n_max, PastsPndPoint::default()),
        StateSpec::Pssts { .. } => squeezed::pssts_pnd(spec, s, n_max),
        _ => {
            let d = thermal::Diagonal::new(spec, s)?;
            Ok((0..=n_max as u64).map(|n| d.at(n)).collect())
        }
    }
}

fn check_range(spec: &StateSpec, n: u32) -> Result<()> {
    if n + spec.m() > FACTORIAL_MAX {
        return Err(Error::Range(format!("n + m = {} exceeds the factorial table", n + spec.m())));
    }
    Ok(())
}

/// Probability of finding `n` photons.
pub fn pnd(spec: &StateSpec, stage: Stage, n: u32) -> Result<f64> {
    let spec = prepare(spec, stage)?;
    check_range(&spec, n)?;
    Ok(pnd_vec(&spec, stage, n)?[n as usize])
}

pub fn pnd_full(spec: &StateSpec, stage: Stage, n_max: u32) -> Result<PndResult> {
    let spec = prepare(spec, stage)?;
    check_range(&spec, n_max)?;
    let probabilities = pnd_vec(&spec, stage, n_max)?;
    let tail_bound = tail_bound(&probabilities);
    Ok(PndResult { probabilities, tail_bound })
}

/// Geometric majorant of the residual, using pairs of consecutive terms so that
/// parity-alternating distributions are covered; falls back to `1 - Σ`.
fn tail_bound(p: &[f64]) -> f64 {
    let fallback = (1.0 - p.iter().sum::<f64>()).max(0.0);
    let n = p.len();
    if n < 4 {
        return fallback;
    }
    let last = p[n - 1] + p[n - 2];
    let prev = p[n - 3] + p[n - 4];
    if last == 0.0 {
        return 0.0;
    }
    let r = last / prev;
    if prev > 0.0 && r < 1.0 {
        last * r / (1.0 - r)
    } else {
        fallback
    }
}

/// Photon-number distribution of the output photon-subtracted thermal state
/// with a selectable expansion point of its generator.
pub fn psts_output_pnd(n_th: f64, m: u32, s: f64, n: u32, point: PstsPndPoint) -> Result<f64> {
    let spec = prepare(&StateSpec::Psts { n_th, m }, Stage::Output { s })?;
    check_range(&spec, n)?;
    match spec {
        StateSpec::Psts { n_th, m } => Ok(thermal::psts_pnd(n_th, m, s, n, point)?[n as usize]),
        other => Ok(pnd_vec(&other, Stage::Output { s }, n)?[n as usize]),
    }
}

/// Photon-number distribution of the photon-added squeezed thermal state with
/// a selectable expansion point of its generator.
pub fn pasts_pnd(spec: &StateSpec, stage: Stage, n: u32, point: PastsPndPoint) -> Result<f64> {
    let spec = prepare(spec, stage)?;
    if !matches!(spec, StateSpec::Pasts { .. }) {
        return Err(Error::Contract("pasts_pnd needs a PASTS spec".into()));
    }
    check_range(&spec, n)?;
    Ok(squeezed::pasts_pnd(&spec, stage.s(), n, point)?[n as usize])
}

/// Sums `Σ_n f(n)` over a series whose terms are eventually polynomial times
/// geometric, stopping once the term is negligible and the ratio bound
/// certifies the residual.
pub(crate) fn geometric_series<F: FnMut(u64) -> f64>(start: u64, min_terms: u64, mut f: F) -> Result<f64> {
    let mut sum = 0.0;
    let mut prev = f64::NAN;
    for n in start..start + SERIES_CAP {
        let t = f(n);
        sum += t;
        if n >= start + min_terms {
            if t == 0.0 && prev == 0.0 {
                return Ok(sum);
            }
            let r = (t / prev).abs();
            if t.abs() <= 1e-14 * sum.abs() && r < 1.0 && t.abs() * r / (1.0 - r) < 1e-12 {
                return Ok(sum);
            }
        }
        prev = t;
    }
    Err(Error::NonConvergent(format!("moment series did not settle within {SERIES_CAP} terms")))
}

/// `⟨a†^r a^r⟩`.
pub fn moment(spec: &StateSpec, stage: Stage, r: u32) -> Result<f64> {
    let spec = prepare(spec, stage)?;
    if r > MAX_MOMENT {
        return Err(Error::Domain(format!("moment order {r} above {MAX_MOMENT}")));
    }
    if r == 0 {
        return Ok(1.0);
    }
    let s = stage.s();
    match spec {
        StateSpec::Psts { n_th, m } => thermal::psts_moment(n_th, m, s, r),
        StateSpec::Pasts { .. } => squeezed::pasts_moment(&spec, s, r),
        StateSpec::Pssts { .. } => squeezed::pssts_moment(&spec, s, r),
        _ => {
            let d = thermal::Diagonal::new(&spec, s)?;
            geometric_series(r as u64, (spec.m() + spec.k() + 2) as u64, |n| d.at(n) * falling(n, r))
        }
    }
}

pub fn stat_summary(spec: &StateSpec, stage: Stage) -> Result<StatSummary> {
    let mean_n = moment(spec, stage, 1)?;
    if !(mean_n > 1e-300) {
        return Err(Error::UndefinedStatistic(format!("mean photon number {mean_n} is zero")));
    }
    let second = moment(spec, stage, 2)?;
    Ok(StatSummary {
        mean_n,
        second_factorial_moment: second,
        mandel_q: (second - mean_n * mean_n) / mean_n,
        g2: second / (mean_n * mean_n),
    })
}

pub fn mandel_q(spec: &StateSpec, stage: Stage) -> Result<f64> {
    Ok(stat_summary(spec, stage)?.mandel_q)
}

pub fn g2(spec: &StateSpec, stage: Stage) -> Result<f64> {
    Ok(stat_summary(spec, stage)?.g2)
}
