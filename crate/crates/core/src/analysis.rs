//! Noise thresholds for the loss of Wigner negativity at the origin, parameter
//! sweeps and classification of photon statistics.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exec::Exec;
use crate::photstat::{pnd_full, stat_summary};
use crate::quasiprob::{quasiprob_point, Sci};
use crate::{Complex, Error, KappaOrder, Result, Stage, StateSpec};

const SAMPLES: usize = 32;
const MAX_BISECTIONS: u32 = 200;
const S_TOL: f64 = 1e-10;

/// `W(0)` of the state after the channel with noise `s`.
pub fn wigner_center(spec: &StateSpec, s: f64) -> Result<f64> {
    let stage = if s == 0.0 { Stage::Input } else { Stage::Output { s } };
    quasiprob_point(spec, stage, KappaOrder::W, Complex::new(0.0, 0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub s_star: f64,
    pub bracket: (f64, f64),
    pub iterations: u32,
    pub w0_at_star: f64,
    /// Set when the sampled `W(0)` curve is not monotone; the smallest root is reported.
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Threshold {
    Found(ThresholdResult),
    /// `W(0)` is still negative at `s_max`.
    NoThreshold { s_max: f64, w0_at_s_max: f64 },
}

impl Threshold {
    pub fn s_star(&self) -> Option<f64> {
        match self {
            Threshold::Found(r) => Some(r.s_star),
            Threshold::NoThreshold { .. } => None,
        }
    }
}

/// Smallest `s` in `[0, s_max]` at which `W(0)` of the output state changes
/// from negative to non-negative, found by bisection to `|W(0)| < tol`.
pub fn wigner_center_threshold(spec: &StateSpec, s_max: f64, tol: f64) -> Result<Threshold> {
    if !(s_max > 0.0 && s_max.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("need s_max > 0 and tol > 0, got {s_max}, {tol}")));
    }
    let f0 = wigner_center(spec, 0.0)?;
    if f0 >= 0.0 {
        return Err(Error::NotApplicable(format!("input W(0) = {f0} is not negative")));
    }
    let grid: Vec<f64> = (0..SAMPLES).map(|i| s_max * i as f64 / (SAMPLES - 1) as f64).collect();
    let values = grid.iter().map(|&s| wigner_center(spec, s)).collect::<Result<Vec<_>>>()?;
    let Some(i) = values.iter().position(|&v| v >= 0.0) else {
        return Ok(Threshold::NoThreshold { s_max, w0_at_s_max: values[SAMPLES - 1] });
    };
    // monotone up to the first non-negative sample and no later dip below zero
    let monotone = values[..=i].windows(2).all(|w| w[1] >= w[0]) && values[i..].iter().all(|&v| v >= 0.0);
    let warning = (!monotone).then(|| "sampled W(0) is not monotone in s; smallest root reported".to_string());
    let (mut lo, mut hi) = (grid[i - 1], grid[i]);
    let bracket = (lo, hi);
    let mut iterations = 0;
    let (mut mid, mut f_mid);
    loop {
        iterations += 1;
        mid = 0.5 * (lo + hi);
        f_mid = wigner_center(spec, mid)?;
        if f_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if (f_mid.abs() < tol && hi - lo < S_TOL) || iterations >= MAX_BISECTIONS || hi - lo < f64::EPSILON * hi {
            break;
        }
    }
    if f_mid.abs() >= tol {
        return Err(Error::NonConvergent(format!("bisection ended at s = {mid} with W(0) = {f_mid}")));
    }
    Ok(Threshold::Found(ThresholdResult { s_star: mid, bracket, iterations, w0_at_star: f_mid, warning }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    NTh,
    Lambda,
    S,
    M,
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "n_th" | "nth" => Ok(Axis::NTh),
            "lambda" => Ok(Axis::Lambda),
            "s" => Ok(Axis::S),
            "m" => Ok(Axis::M),
            _ => Err(Error::Domain(format!("unknown sweep axis `{s}`"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::NTh => "n_th",
            Axis::Lambda => "lambda",
            Axis::S => "s",
            Axis::M => "m",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    W0,
    Q0,
    MandelQ,
    G2,
    PndPeak,
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w0" => Ok(Quantity::W0),
            "q0" => Ok(Quantity::Q0),
            "mandel_q" | "mandelq" => Ok(Quantity::MandelQ),
            "g2" => Ok(Quantity::G2),
            "pnd_peak" | "pndpeak" => Ok(Quantity::PndPeak),
            _ => Err(Error::Domain(format!("unknown sweep quantity `{s}`"))),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::W0 => "W0",
            Quantity::Q0 => "Q0",
            Quantity::MandelQ => "mandel_q",
            Quantity::G2 => "g2",
            Quantity::PndPeak => "pnd_peak",
        })
    }
}

/// Photon number range scanned for the PND peak.
const PEAK_SCAN: u32 = 120;

/// One quantity at one state and stage.
pub fn evaluate(spec: &StateSpec, stage: Stage, quantity: Quantity) -> Result<f64> {
    let origin = Complex::new(0.0, 0.0);
    match quantity {
        Quantity::W0 => quasiprob_point(spec, stage, KappaOrder::W, origin),
        Quantity::Q0 => quasiprob_point(spec, stage, KappaOrder::Q, origin),
        Quantity::MandelQ => Ok(stat_summary(spec, stage)?.mandel_q),
        Quantity::G2 => Ok(stat_summary(spec, stage)?.g2),
        Quantity::PndPeak => {
            let p = pnd_full(spec, stage, PEAK_SCAN)?.probabilities;
            Ok(argmax(&p) as f64)
        }
    }
}

/// Index of the first largest entry.
pub fn argmax(p: &[f64]) -> usize {
    p.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best })
        .0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    pub quantity: Quantity,
    /// `None` marks a point whose evaluation failed; see `errors`.
    pub values: Vec<Option<f64>>,
    pub errors: Vec<Option<String>>,
}

impl SweepTable {
    /// CSV with header `<axis>,<quantity>,error`; failed points leave the value empty.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{},{},error", self.axis, self.quantity)?;
        for ((x, v), e) in self.axis_values.iter().zip(&self.values).zip(&self.errors) {
            let v = v.map(|v| Sci(v).to_string()).unwrap_or_default();
            let e = e.as_deref().unwrap_or("").replace([',', '\n'], ";");
            writeln!(w, "{},{v},{e}", Sci(*x))?;
        }
        Ok(())
    }
}

fn instantiate(template: &StateSpec, stage: Stage, axis: Axis, x: f64) -> Result<(StateSpec, Stage)> {
    let (spec, stage) = match axis {
        Axis::NTh => (template.with_n_th(x), stage),
        Axis::Lambda => (template.with_lambda(x), stage),
        Axis::M => {
            if !(x >= 0.0 && x.fract() == 0.0) {
                return Err(Error::Domain(format!("m must be a non-negative integer, got {x}")));
            }
            (template.with_m(x as u32), stage)
        }
        Axis::S => (*template, if x == 0.0 { Stage::Input } else { Stage::Output { s: x } }),
    };
    spec.validate()?;
    Ok((spec, stage))
}

pub fn sweep(
    template: &StateSpec,
    stage: Stage,
    axis: Axis,
    values: &[f64],
    quantity: Quantity,
    exec: Exec,
) -> SweepTable {
    let results = exec.map(values, |&x| {
        instantiate(template, stage, axis, x).and_then(|(spec, stage)| evaluate(&spec, stage, quantity))
    });
    let (values_out, errors) = results
        .into_iter()
        .map(|r| match r {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        })
        .unzip();
    SweepTable { axis, axis_values: values.to_vec(), quantity, values: values_out, errors }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhotonStatistics {
    Sub,
    Poissonian,
    Super,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bunching {
    Bunching,
    Antibunching,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub statistics: PhotonStatistics,
    pub bunching: Bunching,
}

pub fn classify(mandel_q: f64, g2: f64) -> Classification {
    let statistics = if mandel_q < -1e-12 {
        PhotonStatistics::Sub
    } else if mandel_q > 1e-12 {
        PhotonStatistics::Super
    } else {
        PhotonStatistics::Poissonian
    };
    let bunching = if g2 > 1.0 + 1e-12 { Bunching::Bunching } else { Bunching::Antibunching };
    Classification { statistics, bunching }
}

pub fn classify_statistics(spec: &StateSpec, stage: Stage) -> Result<Classification> {
    let st = stat_summary(spec, stage)?;
    Ok(classify(st.mandel_q, st.g2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thermal_is_super_and_bunched() {
        let c = classify_statistics(&StateSpec::thermal(0.5), Stage::Input).unwrap();
        assert_eq!(c, Classification { statistics: PhotonStatistics::Super, bunching: Bunching::Bunching });
    }

    #[test]
    fn single_photon_is_sub_and_antibunched() {
        let c = classify_statistics(&StateSpec::Pats { n_th: 0.0, m: 1 }, Stage::Input).unwrap();
        assert_eq!(c, Classification { statistics: PhotonStatistics::Sub, bunching: Bunching::Antibunching });
    }

    #[test]
    fn subtracted_squeezed_m2_is_bunched() {
        for n_th in [0.01, 0.05] {
            let spec = StateSpec::Pssts { n_th, m: 2, lambda: 0.3 };
            let c = classify_statistics(&spec, Stage::Input).unwrap();
            assert_ne!(c.statistics, PhotonStatistics::Sub);
            assert_eq!(c.bunching, Bunching::Bunching);
        }
    }

    #[test]
    fn pats_threshold_exists_and_changes_sign() {
        let spec = StateSpec::Pats { n_th: 0.1, m: 1 };
        let t = wigner_center_threshold(&spec, 2.0, 1e-12).unwrap();
        let Threshold::Found(r) = t else { panic!("no threshold") };
        assert!(r.s_star > 0.0 && r.s_star < 2.0);
        assert!(r.bracket.0 < r.s_star && r.s_star < r.bracket.1);
        assert!(r.warning.is_none());
        assert!(wigner_center(&spec, r.s_star - 0.05).unwrap() < 0.0);
        assert!(wigner_center(&spec, r.s_star + 0.05).unwrap() > 0.0);
    }

    fn s_star(spec: StateSpec) -> f64 {
        wigner_center_threshold(&spec, 2.0, 1e-12).unwrap().s_star().unwrap()
    }

    #[test]
    fn photon_added_thresholds_sit_at_one_half() {
        // W(0) after the channel at s = 1/2 is P(0)/π, which vanishes once a photon is added
        for spec in [
            StateSpec::Pats { n_th: 0.1, m: 1 },
            StateSpec::Pats { n_th: 0.5, m: 1 },
            StateSpec::Pasts { n_th: 0.1, m: 1, lambda: 0.1 },
            StateSpec::Pasts { n_th: 0.1, m: 1, lambda: 0.3 },
            StateSpec::Pakfts { n_th: 0.2, m: 1, k: 1 },
        ] {
            assert!((s_star(spec) - 0.5).abs() < 1e-9, "{spec:?}");
        }
    }

    #[test]
    fn subtracted_squeezed_threshold_depends_on_temperature_and_squeezing() {
        let a = s_star(StateSpec::Pssts { n_th: 0.05, m: 1, lambda: 0.3 });
        let b = s_star(StateSpec::Pssts { n_th: 0.02, m: 1, lambda: 0.3 });
        let c = s_star(StateSpec::Pssts { n_th: 0.05, m: 1, lambda: 0.4 });
        assert!(a < 0.5 && b < 0.5 && c < 0.5);
        assert!((a - b).abs() > 1e-3, "{a} vs {b}");
        assert!((a - c).abs() > 1e-3, "{a} vs {c}");
    }

    #[test]
    fn positive_input_is_not_applicable() {
        let err = wigner_center_threshold(&StateSpec::thermal(0.3), 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn w0_sweep_over_s_is_nondecreasing() {
        let xs: Vec<f64> = (0..6).map(|i| 0.2 * i as f64).collect();
        let t = sweep(&StateSpec::Pats { n_th: 0.1, m: 1 }, Stage::Input, Axis::S, &xs, Quantity::W0, Exec::default());
        let v: Vec<f64> = t.values.iter().map(|v| v.unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]), "{v:?}");
    }

    #[test]
    fn pnd_peak_follows_m() {
        let t = sweep(
            &StateSpec::Pats { n_th: 0.2, m: 0 },
            Stage::Input,
            Axis::M,
            &[0.0, 1.0, 2.0],
            Quantity::PndPeak,
            Exec::Sequential,
        );
        assert_eq!(t.values, vec![Some(0.0), Some(1.0), Some(2.0)]);
    }

    #[test]
    fn mandel_q_of_added_squeezed_crosses_zero_in_lambda() {
        let xs: Vec<f64> = (0..=30).map(|i| 0.05 * i as f64).collect();
        let t = sweep(
            &StateSpec::Pasts { n_th: 0.1, m: 1, lambda: 0.0 },
            Stage::Input,
            Axis::Lambda,
            &xs,
            Quantity::MandelQ,
            Exec::default(),
        );
        let v: Vec<f64> = t.values.iter().map(|v| v.unwrap()).collect();
        assert!(v[0] < 0.0);
        assert!(v.iter().any(|&q| q > 0.0), "{v:?}");
    }

    #[test]
    fn sweep_reports_gaps() {
        let t = sweep(&StateSpec::thermal(0.2), Stage::Input, Axis::NTh, &[0.1, -1.0], Quantity::G2, Exec::Sequential);
        assert!(t.values[0].is_some());
        assert!(t.values[1].is_none() && t.errors[1].is_some());
        let mut out = Vec::new();
        t.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 3);
    }
}
