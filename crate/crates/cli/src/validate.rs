//! Closed forms against the Fock oracle over a parameter lattice, and the
//! record of which alternative formula variants the oracle accepts.

use ngstates_core::exec::Exec;
use ngstates_core::photstat::{moment, pasts_pnd, pnd_full, psts_output_pnd};
use ngstates_core::quasiprob::{char_fn, psts_output_quasiprob, quasiprob_point, QuasiProb};
use ngstates_core::states::{normalization_with, Family};
use ngstates_core::variants::{NormPoint, PastsPndPoint, PsstsOutputExponent, PstsOutputShift, PstsPndPoint};
use ngstates_core::{Complex, KappaOrder, PhaseGrid, Stage, StateSpec};
use ngstates_oracle::{
    oracle_char, oracle_moment, oracle_pnd, oracle_q, oracle_wigner, prepare, prepare_at, unnormalized_trace,
    DensityMatrix, QuadratureConfig, DEFAULT_CUTOFF,
};
use serde::Serialize;

use crate::config::OracleLevel;
use crate::error::Result;

pub const TOL_CHI_ORIGIN: f64 = 1e-12;
pub const TOL_PND_SUM: f64 = 1e-9;
pub const TOL_PHASE: f64 = 1e-6;
pub const TOL_PND: f64 = 1e-7;
pub const TOL_MOMENT: f64 = 1e-7;
/// Photon numbers compared against the oracle.
pub const PND_COMPARED: usize = 40;
/// Photon numbers summed for the normalization check.
pub const PND_SUMMED: u32 = 160;
/// Ratio of rejected to accepted deviation required of an arbitration.
pub const DECISIVE_RATIO: f64 = 1e3;

/// How the oracle is built.
#[derive(Debug, Clone, Copy)]
#[derive(Default)]
pub struct OracleSettings {
    /// Fixed cutoff; `None` escalates from the default.
    pub cutoff: Option<usize>,
    pub quad: QuadratureConfig,
}


impl OracleSettings {
    pub fn new(cutoff: Option<usize>, quad_order: Option<usize>) -> Result<Self> {
        let quad = match quad_order {
            Some(n) => QuadratureConfig::new(n)?,
            None => QuadratureConfig::default(),
        };
        Ok(OracleSettings { cutoff, quad })
    }

    pub fn prepare(&self, spec: &StateSpec, stage: Stage) -> Result<DensityMatrix> {
        Ok(match self.cutoff {
            Some(c) => prepare_at(spec, stage, self.quad, c)?,
            None => prepare(spec, stage, self.quad)?,
        })
    }
}

/// Largest deviation seen for one quantity.
#[derive(Debug, Clone, Serialize)]
pub struct Deviation {
    pub quantity: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    /// Where the largest deviation occurred.
    pub worst: Option<String>,
    pub samples: usize,
}

impl Deviation {
    pub fn new(quantity: &'static str, tolerance: f64) -> Self {
        Deviation { quantity, tolerance, max_deviation: 0.0, worst: None, samples: 0 }
    }

    pub fn record(&mut self, dev: f64, at: impl FnOnce() -> String) {
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        self.samples += 1;
        if dev > self.max_deviation || (self.worst.is_none() && dev.is_infinite()) {
            self.max_deviation = dev;
            self.worst = Some(at());
        }
    }

    pub fn absorb(&mut self, other: &Deviation) {
        self.samples += other.samples;
        if other.max_deviation > self.max_deviation {
            self.max_deviation = other.max_deviation;
            self.worst = other.worst.clone();
        }
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// The lattice of states and stages a validation level covers.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub stages: Vec<Stage>,
    pub n_th: Vec<f64>,
    pub m: Vec<u32>,
    pub lambda: Vec<f64>,
    pub k: Vec<u32>,
    /// Phase-space comparison points.
    pub grid: PhaseGrid,
}

impl Lattice {
    pub fn full() -> Self {
        Lattice {
            stages: vec![Stage::Input, Stage::Output { s: 0.3 }, Stage::Output { s: 1.0 }],
            n_th: vec![0.1, 0.5, 1.0],
            m: vec![0, 1, 2],
            lambda: vec![0.0, 0.2, 0.4],
            k: vec![0, 1, 2],
            grid: PhaseGrid::square(-3.0, 3.0, 9).expect("static grid"),
        }
    }

    pub fn spot() -> Self {
        Lattice {
            stages: vec![Stage::Input, Stage::Output { s: 0.3 }],
            n_th: vec![0.5],
            m: vec![1],
            lambda: vec![0.2],
            k: vec![1],
            grid: PhaseGrid::square(-3.0, 3.0, 3).expect("static grid"),
        }
    }

    pub fn for_level(level: OracleLevel) -> Self {
        match level {
            OracleLevel::Full => Self::full(),
            OracleLevel::Spot | OracleLevel::Off => Self::spot(),
        }
    }

    pub fn specs(&self) -> Vec<StateSpec> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for &n_th in &self.n_th {
                for &m in &self.m {
                    let ks: &[u32] = if family == Family::Pakfts { &self.k } else { &[0] };
                    let lambdas: &[f64] = if family.is_squeezed() { &self.lambda } else { &[0.0] };
                    for &k in ks {
                        for &lambda in lambdas {
                            if let Ok(spec) = StateSpec::from_parts(family, n_th, m, k, lambda) {
                                out.push(spec);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn cases(&self) -> Vec<(StateSpec, Stage)> {
        self.specs().into_iter().flat_map(|spec| self.stages.iter().map(move |&st| (spec, st))).collect()
    }
}

fn label(spec: &StateSpec, stage: Stage) -> String {
    let stage = match stage {
        Stage::Input => "input".to_string(),
        Stage::Output { s } => format!("s={s}"),
    };
    format!(
        "{} n_th={} m={} k={} lambda={} {stage}",
        spec.family().name(),
        spec.n_th(),
        spec.m(),
        spec.k(),
        spec.lambda()
    )
}

/// Closed-form self-consistency: `χ(0, κ) = 1` and `Σ P(n) = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    pub chi_origin: Deviation,
    pub pnd_sum: Deviation,
}

impl Normalization {
    fn new() -> Self {
        Normalization {
            chi_origin: Deviation::new("chi_origin", TOL_CHI_ORIGIN),
            pnd_sum: Deviation::new("pnd_sum", TOL_PND_SUM),
        }
    }

    fn absorb(&mut self, o: &Normalization) {
        self.chi_origin.absorb(&o.chi_origin);
        self.pnd_sum.absorb(&o.pnd_sum);
    }
}

pub fn normalization_case(spec: &StateSpec, stage: Stage) -> Normalization {
    let mut out = Normalization::new();
    let at = || label(spec, stage);
    for kappa in KappaOrder::ALL {
        let Ok(q) = QuasiProb::new(spec, stage, kappa) else {
            out.chi_origin.record(f64::INFINITY, at);
            continue;
        };
        if !q.guard().is_admissible() {
            continue;
        }
        let dev = q.char_fn(Complex::new(0.0, 0.0)).map_or(f64::INFINITY, |c| (c - 1.0).norm());
        out.chi_origin.record(dev, || format!("{} kappa={}", at(), kappa.value()));
    }
    let dev = pnd_full(spec, stage, PND_SUMMED).map_or(f64::INFINITY, |p| (p.sum() - 1.0).abs());
    out.pnd_sum.record(dev, at);
    out
}

/// Closed form against oracle for one state and stage.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub wigner: Deviation,
    pub husimi: Deviation,
    pub characteristic: Deviation,
    pub pnd: Deviation,
    pub moments: Deviation,
    /// Cases whose oracle could not be built.
    pub oracle_failures: Vec<String>,
}

impl OracleComparison {
    pub fn new() -> Self {
        OracleComparison {
            wigner: Deviation::new("wigner", TOL_PHASE),
            husimi: Deviation::new("husimi", TOL_PHASE),
            characteristic: Deviation::new("characteristic", TOL_PHASE),
            pnd: Deviation::new("pnd", TOL_PND),
            moments: Deviation::new("moments", TOL_MOMENT),
            oracle_failures: Vec::new(),
        }
    }

    pub fn deviations(&self) -> [&Deviation; 5] {
        [&self.wigner, &self.husimi, &self.characteristic, &self.pnd, &self.moments]
    }

    fn absorb(&mut self, o: &OracleComparison) {
        self.wigner.absorb(&o.wigner);
        self.husimi.absorb(&o.husimi);
        self.characteristic.absorb(&o.characteristic);
        self.pnd.absorb(&o.pnd);
        self.moments.absorb(&o.moments);
        self.oracle_failures.extend(o.oracle_failures.iter().cloned());
    }

    pub fn passed(&self) -> bool {
        self.oracle_failures.is_empty() && self.deviations().iter().all(|d| d.passed())
    }
}

impl Default for OracleComparison {
    fn default() -> Self {
        Self::new()
    }
}

fn diff<T, E>(closed: std::result::Result<T, E>, oracle: std::result::Result<T, impl std::fmt::Debug>, d: impl Fn(T, T) -> f64) -> f64 {
    match (closed, oracle) {
        (Ok(a), Ok(b)) => d(a, b),
        _ => f64::INFINITY,
    }
}

pub fn compare_case(spec: &StateSpec, stage: Stage, points: &[Complex], settings: &OracleSettings) -> OracleComparison {
    let mut out = OracleComparison::new();
    let name = label(spec, stage);
    let rho = match settings.prepare(spec, stage) {
        Ok(rho) => rho,
        Err(e) => {
            out.oracle_failures.push(format!("{name}: {e}"));
            return out;
        }
    };
    let kappas: Vec<KappaOrder> = KappaOrder::ALL
        .into_iter()
        .filter(|&k| QuasiProb::new(spec, stage, k).is_ok_and(|q| q.guard().is_admissible()))
        .collect();
    for &a in points {
        let at = || format!("{name} alpha={a}");
        let w = diff(quasiprob_point(spec, stage, KappaOrder::W, a), oracle_wigner(&rho, a), |x, y| (x - y).abs());
        out.wigner.record(w, at);
        let q = diff(quasiprob_point(spec, stage, KappaOrder::Q, a), oracle_q(&rho, a), |x, y| (x - y).abs());
        out.husimi.record(q, at);
        for &k in &kappas {
            let c = diff(char_fn(spec, stage, k, a), oracle_char(&rho, a, k), |x, y| (x - y).norm());
            out.characteristic.record(c, || format!("{name} gamma={a} kappa={}", k.value()));
        }
    }
    let n_max = PND_COMPARED.min(rho.cutoff().saturating_sub(11));
    match pnd_full(spec, stage, n_max as u32) {
        Ok(p) => {
            for n in 0..=n_max {
                let d = oracle_pnd(&rho, n).map_or(f64::INFINITY, |o| (p.probabilities[n] - o).abs());
                out.pnd.record(d, || format!("{name} n={n}"));
            }
        }
        Err(_) => out.pnd.record(f64::INFINITY, || name.clone()),
    }
    for r in 1..=2 {
        let d = diff(moment(spec, stage, r), oracle_moment(&rho, r), |x, y| (x - y).abs() / x.abs().max(1.0));
        out.moments.record(d, || format!("{name} r={r}"));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Arbitration {
    pub formula: &'static str,
    pub accepted: &'static str,
    pub rejected: &'static str,
    pub accepted_deviation: f64,
    /// Largest deviation among probes where the rejected variant evaluates;
    /// infinite when it fails everywhere.
    pub rejected_deviation: f64,
    /// Probes where the rejected variant raised an error or gave a non-finite value.
    pub rejected_failures: usize,
    /// First error raised by the rejected variant.
    pub rejected_error: Option<String>,
    /// `log10(rejected / accepted)`.
    pub orders_of_magnitude: f64,
    pub samples: usize,
}

impl Arbitration {
    pub fn decisive(&self) -> bool {
        self.accepted_deviation.is_finite()
            && self.rejected_deviation >= DECISIVE_RATIO * self.accepted_deviation.max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Default)]
struct Tally {
    accepted: f64,
    rejected: Option<f64>,
    failures: usize,
    rejected_error: Option<String>,
    samples: usize,
}

impl Tally {
    fn add<E: std::fmt::Display>(&mut self, truth: f64, accepted: std::result::Result<f64, E>, rejected: std::result::Result<f64, E>, scale: f64) {
        self.samples += 1;
        match accepted {
            Ok(v) if v.is_finite() => self.accepted = self.accepted.max((v - truth).abs() / scale),
            _ => self.accepted = f64::INFINITY,
        }
        match rejected {
            Ok(v) if v.is_finite() => {
                let d = (v - truth).abs() / scale;
                self.rejected = Some(self.rejected.map_or(d, |r| r.max(d)));
            }
            Ok(v) => {
                self.failures += 1;
                self.rejected_error.get_or_insert_with(|| format!("non-finite value {v}"));
            }
            Err(e) => {
                self.failures += 1;
                self.rejected_error.get_or_insert_with(|| e.to_string());
            }
        }
    }

    fn finish(self, formula: &'static str, accepted: &'static str, rejected: &'static str) -> Arbitration {
        let rejected_deviation = self.rejected.unwrap_or(f64::INFINITY);
        let ratio = rejected_deviation / self.accepted.max(f64::MIN_POSITIVE);
        Arbitration {
            formula,
            accepted,
            rejected,
            accepted_deviation: self.accepted,
            rejected_deviation,
            rejected_failures: self.failures,
            rejected_error: self.rejected_error,
            orders_of_magnitude: ratio.log10(),
            samples: self.samples,
        }
    }
}

const PROBE_POINTS: [(f64, f64); 3] = [(0.0, 0.0), (0.7, -0.3), (-1.5, 1.0)];

fn probe_points() -> impl Iterator<Item = Complex> {
    PROBE_POINTS.iter().map(|&(re, im)| Complex::new(re, im))
}

/// Each alternative-versus-default formula pair, scored against the oracle.
pub fn arbitrate(settings: &OracleSettings, exec: Exec) -> Result<Vec<Arbitration>> {
    let jobs: [fn(&OracleSettings) -> Result<Arbitration>; 5] =
        [norm_point, psts_shift, psts_pnd_point, pasts_pnd_point, pssts_exponent];
    exec.map(&jobs, |job| job(settings)).into_iter().collect()
}

fn norm_point(settings: &OracleSettings) -> Result<Arbitration> {
    let mut t = Tally::default();
    let cutoff = settings.cutoff.unwrap_or(DEFAULT_CUTOFF);
    for family in [Family::Pasts, Family::Pssts] {
        for n_th in [0.1, 0.5] {
            for m in [0, 1, 2] {
                for lambda in [0.2, 0.4] {
                    let spec = StateSpec::from_parts(family, n_th, m, 0, lambda)?;
                    let truth = unnormalized_trace(&spec, cutoff)?;
                    t.add(
                        1.0,
                        normalization_with(&spec, NormPoint::OneMinusB).map(|v| v / truth),
                        normalization_with(&spec, NormPoint::B).map(|v| v / truth),
                        1.0,
                    );
                }
            }
        }
    }
    Ok(t.finish("squeezed-family normalization evaluation point", "X = 1 - B", "v = B"))
}

fn psts_cases() -> impl Iterator<Item = (f64, u32, f64)> {
    [0.5, 1.0].into_iter().flat_map(|n| [1, 2].into_iter().flat_map(move |m| [0.3, 1.0].map(|s| (n, m, s))))
}

fn psts_shift(settings: &OracleSettings) -> Result<Arbitration> {
    let mut t = Tally::default();
    for (n_th, m, s) in psts_cases() {
        let rho = settings.prepare(&StateSpec::Psts { n_th, m }, Stage::Output { s })?;
        for a in probe_points() {
            for (kappa, truth) in [(KappaOrder::W, oracle_wigner(&rho, a)?), (KappaOrder::Q, oracle_q(&rho, a)?)] {
                let f = |shift| psts_output_quasiprob(n_th, m, s, kappa, a, shift);
                t.add(truth, f(PstsOutputShift::KappaMinusOne), f(PstsOutputShift::KappaPlusOne), 1.0);
            }
        }
    }
    Ok(t.finish("output photon-subtracted thermal ordering shift", "(kappa - 1)/2", "(kappa + 1)/2"))
}

fn psts_pnd_point(settings: &OracleSettings) -> Result<Arbitration> {
    let mut t = Tally::default();
    for (n_th, m, s) in psts_cases() {
        let rho = settings.prepare(&StateSpec::Psts { n_th, m }, Stage::Output { s })?;
        for n in 0..=20u32 {
            let f = |point| psts_output_pnd(n_th, m, s, n, point);
            t.add(oracle_pnd(&rho, n as usize)?, f(PstsPndPoint::MinusOne), f(PstsPndPoint::Zero), 1.0);
        }
    }
    Ok(t.finish("output photon-subtracted thermal PND generator point", "u = -1", "u = 0"))
}

fn pasts_pnd_point(settings: &OracleSettings) -> Result<Arbitration> {
    let mut t = Tally::default();
    for m in [1, 2] {
        for lambda in [0.2, 0.4] {
            for s in [0.3, 1.0] {
                let spec = StateSpec::Pasts { n_th: 0.5, m, lambda };
                let stage = Stage::Output { s };
                let rho = settings.prepare(&spec, stage)?;
                for n in 0..=20u32 {
                    let f = |point| pasts_pnd(&spec, stage, n, point);
                    t.add(oracle_pnd(&rho, n as usize)?, f(PastsPndPoint::Zero), f(PastsPndPoint::One), 1.0);
                }
            }
        }
    }
    Ok(t.finish("output photon-added squeezed PND generator point", "u = 0", "u = 1"))
}

fn pssts_exponent(settings: &OracleSettings) -> Result<Arbitration> {
    let mut t = Tally::default();
    for m in [1, 2] {
        for lambda in [0.2, 0.4] {
            for s in [0.3, 1.0] {
                let spec = StateSpec::Pssts { n_th: 0.5, m, lambda };
                let stage = Stage::Output { s };
                let rho = settings.prepare(&spec, stage)?;
                for a in probe_points() {
                    let f = |v| QuasiProb::with_variants(&spec, stage, KappaOrder::W, v).and_then(|q| q.point(a));
                    t.add(
                        oracle_wigner(&rho, a)?,
                        f(PsstsOutputExponent::Consistent),
                        f(PsstsOutputExponent::Swapped),
                        1.0,
                    );
                }
            }
        }
    }
    Ok(t.finish("output photon-subtracted squeezed exponent assignment", "consistent", "swapped"))
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub level: OracleLevel,
    pub cases: usize,
    pub normalization: Normalization,
    pub oracle: OracleComparison,
    pub arbitration: Vec<Arbitration>,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = [&self.normalization.chi_origin, &self.normalization.pnd_sum]
            .into_iter()
            .chain(self.oracle.deviations())
            .filter(|d| !d.passed())
            .map(|d| format!("{} deviation {:e} above {:e}", d.quantity, d.max_deviation, d.tolerance))
            .collect();
        out.extend(self.oracle.oracle_failures.iter().cloned());
        out.extend(
            self.arbitration
                .iter()
                .filter(|a| !a.decisive())
                .map(|a| format!("arbitration of {} is not decisive", a.formula)),
        );
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

pub fn validate(level: OracleLevel, settings: &OracleSettings, exec: Exec) -> Result<ValidationReport> {
    let lattice = Lattice::for_level(level);
    let cases = lattice.cases();
    let points = lattice.grid.nodes();
    let per_case = exec.map(&cases, |(spec, stage)| {
        (normalization_case(spec, *stage), compare_case(spec, *stage, &points, settings))
    });
    let mut normalization = Normalization::new();
    let mut oracle = OracleComparison::new();
    for (n, o) in &per_case {
        normalization.absorb(n);
        oracle.absorb(o);
    }
    let arbitration = arbitrate(settings, exec)?;
    Ok(ValidationReport { level, cases: cases.len(), normalization, oracle, arbitration })
}
