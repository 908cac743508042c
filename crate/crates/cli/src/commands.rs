//! The five subcommands. Each writes its artifact to the configured output
//! (stdout by default) and reports diagnostics as `key=value` lines on stderr.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use ngstates_core::analysis::{classify, sweep, wigner_center_threshold, Axis, Classification, Quantity, Threshold};
use ngstates_core::exec::Exec;
use ngstates_core::photstat::{pnd_full, stat_summary, PndResult, StatSummary};
use ngstates_core::quasiprob::{Admissibility, QuasiProb, Sci};
use ngstates_core::{Complex, Error as CoreError, KappaOrder, PhaseGrid, Stage, StateSpec};
use ngstates_oracle::oracle_wigner;
use serde::Serialize;

use crate::config::{Command, Format, OracleLevel, RunConfig, SweepConfig};
use crate::error::{CliError, Result};
use crate::validate::{compare_case, validate, OracleComparison, OracleSettings};

const DEFAULT_GRID: (f64, f64, usize) = (-4.0, 4.0, 81);
const DEFAULT_N_MAX: u32 = 40;
const DEFAULT_S_MAX: f64 = 4.0;
const DEFAULT_TOL: f64 = 1e-10;
/// Bound on `|W_oracle(0)|` at a reported threshold.
pub const THRESHOLD_ORACLE_TOL: f64 = 1e-5;
/// Phase-space points compared in a spot check.
const SPOT_POINTS: usize = 9;

/// One diagnostic record: `key=value` pairs on a single stderr line.
#[derive(Debug, Default)]
pub struct Diag(Vec<(String, String)>);

impl Diag {
    pub fn new() -> Self {
        Diag(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn emit(&self) {
        eprintln!("{self}");
    }
}

impl std::fmt::Display for Diag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fields: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| {
                if v.is_empty() || v.contains([' ', '"', '=', '\n']) {
                    format!("{k}={v:?}")
                } else {
                    format!("{k}={v}")
                }
            })
            .collect();
        f.write_str(&fields.join(" "))
    }
}

struct Sink {
    out: Box<dyn Write>,
    name: String,
}

impl Sink {
    fn open(cfg: &RunConfig) -> Result<Self> {
        match &cfg.output_path {
            Some(p) => {
                let f = File::create(p).map_err(|e| CliError::io(format!("creating {}", p.display()), e))?;
                Ok(Sink { out: Box::new(BufWriter::new(f)), name: p.display().to_string() })
            }
            None => Ok(Sink { out: Box::new(std::io::stdout().lock()), name: "stdout".into() }),
        }
    }

    fn write_with(mut self, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
        let name = self.name.clone();
        f(&mut self.out).and_then(|_| self.out.flush()).map_err(|e| CliError::io(format!("writing {name}"), e))
    }

    fn csv(self, cfg: &RunConfig, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
        let stamp = (!cfg.reproducible()).then(|| {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            format!("# ngstates {} unix_time={secs}\n", env!("CARGO_PKG_VERSION"))
        });
        self.write_with(|w| {
            if let Some(s) = stamp {
                w.write_all(s.as_bytes())?;
            }
            body(w)
        })
    }

    fn json<T: Serialize>(self, value: &T) -> Result<()> {
        self.write_with(|w| {
            serde_json::to_writer_pretty(&mut *w, value).map_err(std::io::Error::other)?;
            writeln!(w)
        })
    }
}

pub fn run(cfg: &RunConfig) -> Result<()> {
    match cfg.command()? {
        Command::Quasiprob => cmd_quasiprob(cfg),
        Command::Stats => cmd_stats(cfg),
        Command::Threshold => cmd_threshold(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Validate => cmd_validate(cfg),
    }
}

fn oracle_settings(cfg: &RunConfig) -> Result<OracleSettings> {
    OracleSettings::new(cfg.cutoff, cfg.quad_order)
}

fn report_oracle(cmp: &OracleComparison) -> Result<()> {
    for d in cmp.deviations().into_iter().filter(|d| d.samples > 0) {
        Diag::new()
            .with("oracle_check", d.quantity)
            .with("max_deviation", Sci(d.max_deviation))
            .with("tolerance", Sci(d.tolerance))
            .with("samples", d.samples)
            .with("status", if d.passed() { "pass" } else { "fail" })
            .emit();
    }
    if cmp.passed() {
        Ok(())
    } else {
        let mut what: Vec<String> = cmp.oracle_failures.clone();
        what.extend(cmp.deviations().iter().filter(|d| !d.passed()).map(|d| d.quantity.to_string()));
        Err(CliError::Validation(what.join("; ")))
    }
}

#[derive(Serialize)]
struct FieldJson<'a> {
    state: StateSpec,
    stage: Stage,
    kappa: f64,
    grid: PhaseGrid,
    values: &'a [f64],
}

pub fn cmd_quasiprob(cfg: &RunConfig) -> Result<()> {
    let spec = cfg.state()?;
    let stage = cfg.stage()?;
    let kappa = cfg.kappa()?;
    let (lo, hi, n) = DEFAULT_GRID;
    let grid = match cfg.grid {
        Some(g) => g,
        None => PhaseGrid::square(lo, hi, n)?,
    };
    let q = QuasiProb::new(&spec, stage, kappa)?;
    if let Admissibility::Inadmissible(reason) = q.guard() {
        return Err(CoreError::Inadmissible(reason).into());
    }
    let field = q.grid(&grid, Exec::default())?;
    let (min, max) = field.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let sink = Sink::open(cfg)?;
    match cfg.format()? {
        Format::Csv => sink.csv(cfg, |w| field.write_csv(w))?,
        Format::Json => sink.json(&FieldJson { state: spec, stage, kappa: kappa.value(), grid, values: &field.values })?,
    }
    Diag::new().with("rows", field.values.len()).with("min", Sci(min)).with("max", Sci(max)).emit();

    let level = cfg.oracle.unwrap_or_default();
    if level == OracleLevel::Off {
        return Ok(());
    }
    let nodes = grid.nodes();
    let points: Vec<Complex> = match level {
        OracleLevel::Full => nodes,
        _ => {
            let step = (nodes.len() / SPOT_POINTS).max(1);
            nodes.into_iter().step_by(step).take(SPOT_POINTS).collect()
        }
    };
    let cmp = compare_case(&spec, stage, &points, &oracle_settings(cfg)?);
    if kappa == KappaOrder::P {
        Diag::new().with("oracle_note", "no oracle readout of P; W, Q and chi compared").emit();
    }
    report_oracle(&cmp)
}

#[derive(Serialize)]
struct StatsJson<'a> {
    state: StateSpec,
    stage: Stage,
    summary: StatSummary,
    classification: Classification,
    pnd: &'a PndResult,
}

pub fn cmd_stats(cfg: &RunConfig) -> Result<()> {
    let spec = cfg.state()?;
    let stage = cfg.stage()?;
    let n_max = cfg.n_max.unwrap_or(DEFAULT_N_MAX);
    let pnd = pnd_full(&spec, stage, n_max)?;
    let summary = stat_summary(&spec, stage)?;
    let classification = classify(summary.mandel_q, summary.g2);
    let sink = Sink::open(cfg)?;
    match cfg.format()? {
        Format::Csv => sink.csv(cfg, |w| pnd.write_csv(w))?,
        Format::Json => sink.json(&StatsJson { state: spec, stage, summary, classification, pnd: &pnd })?,
    }
    Diag::new()
        .with("mean_n", Sci(summary.mean_n))
        .with("mandel_q", Sci(summary.mandel_q))
        .with("g2", Sci(summary.g2))
        .with("pnd_sum", Sci(pnd.sum()))
        .with("tail_bound", Sci(pnd.tail_bound))
        .emit();
    if cfg.oracle.unwrap_or_default() == OracleLevel::Off {
        return Ok(());
    }
    report_oracle(&compare_case(&spec, stage, &[], &oracle_settings(cfg)?))
}

#[derive(Serialize)]
struct ThresholdJson {
    state: StateSpec,
    #[serde(flatten)]
    threshold: Threshold,
}

pub fn cmd_threshold(cfg: &RunConfig) -> Result<()> {
    let spec = cfg.state()?;
    let s_max = cfg.s_max.unwrap_or(DEFAULT_S_MAX);
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    let threshold = wigner_center_threshold(&spec, s_max, tol)?;
    Sink::open(cfg)?.json(&ThresholdJson { state: spec, threshold: threshold.clone() })?;
    let mut diag = Diag::new();
    if let Threshold::Found(r) = &threshold {
        diag = diag.with("s_star", Sci(r.s_star)).with("iterations", r.iterations);
        if let Some(w) = &r.warning {
            diag = diag.with("warning", w);
        }
    } else {
        diag = diag.with("s_star", "none");
    }
    diag.emit();
    let Some(s_star) = threshold.s_star() else { return Ok(()) };
    if cfg.oracle.unwrap_or_default() == OracleLevel::Off {
        return Ok(());
    }
    let rho = oracle_settings(cfg)?.prepare(&spec, Stage::Output { s: s_star })?;
    let w0 = oracle_wigner(&rho, Complex::new(0.0, 0.0))?;
    let ok = w0.abs() < THRESHOLD_ORACLE_TOL;
    Diag::new()
        .with("oracle_w0_at_s_star", Sci(w0))
        .with("tolerance", Sci(THRESHOLD_ORACLE_TOL))
        .with("status", if ok { "pass" } else { "fail" })
        .emit();
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation(format!("oracle W(0) = {w0:e} at s* = {s_star}")))
    }
}

/// `steps` evenly spaced values from `from` to `to` inclusive.
pub fn axis_values(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..steps).map(|i| from + (to - from) * i as f64 / (steps - 1) as f64).collect(),
    }
}

fn sweep_parts(sw: &SweepConfig) -> Result<(Axis, Quantity, Vec<f64>)> {
    let need = |what: &str| CliError::Config(format!("sweep needs --{what}"));
    let axis: Axis = sw.axis.as_deref().ok_or_else(|| need("axis"))?.parse()?;
    let quantity: Quantity = sw.quantity.as_deref().unwrap_or("W0").parse()?;
    let from = sw.from.ok_or_else(|| need("from"))?;
    let to = sw.to.ok_or_else(|| need("to"))?;
    let steps = sw.steps.ok_or_else(|| need("steps"))?;
    if steps == 0 {
        return Err(CliError::Config("--steps must be positive".into()));
    }
    Ok((axis, quantity, axis_values(from, to, steps)))
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<()> {
    let spec = cfg.state()?;
    let stage = cfg.stage()?;
    let (axis, quantity, values) = sweep_parts(&cfg.sweep.clone().unwrap_or_default())?;
    let table = sweep(&spec, stage, axis, &values, quantity, Exec::default());
    let sink = Sink::open(cfg)?;
    match cfg.format()? {
        Format::Csv => sink.csv(cfg, |w| table.write_csv(w))?,
        Format::Json => sink.json(&table)?,
    }
    let failed = table.values.iter().filter(|v| v.is_none()).count();
    Diag::new().with("rows", table.values.len()).with("failed_points", failed).emit();
    Ok(())
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<()> {
    let level = cfg.level.or(cfg.oracle).unwrap_or(OracleLevel::Spot);
    let level = if level == OracleLevel::Off { OracleLevel::Spot } else { level };
    let report = validate(level, &oracle_settings(cfg)?, Exec::default())?;
    Sink::open(cfg)?.json(&report)?;
    Diag::new().with("level", format!("{level:?}").to_lowercase()).with("cases", report.cases).emit();
    let n = &report.normalization;
    for d in [&n.chi_origin, &n.pnd_sum].into_iter().chain(report.oracle.deviations()) {
        Diag::new()
            .with("check", d.quantity)
            .with("max_deviation", Sci(d.max_deviation))
            .with("tolerance", Sci(d.tolerance))
            .with("status", if d.passed() { "pass" } else { "fail" })
            .emit();
    }
    for a in &report.arbitration {
        Diag::new()
            .with("arbitration", a.formula)
            .with("accepted", a.accepted)
            .with("accepted_deviation", Sci(a.accepted_deviation))
            .with("rejected", a.rejected)
            .with("rejected_deviation", Sci(a.rejected_deviation))
            .with("rejected_failures", a.rejected_failures)
            .with("status", if a.decisive() { "decisive" } else { "ambiguous" })
            .emit();
    }
    let failures = report.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(failures.join("; ")))
    }
}
