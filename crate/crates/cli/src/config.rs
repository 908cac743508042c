//! Run configuration: a JSON file, command-line flags, or both (flags win).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use ngstates_core::states::Family;
use ngstates_core::{KappaOrder, PhaseGrid, Stage, StateSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Quasiprob,
    Stats,
    Threshold,
    Sweep,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Quasiprob => "quasiprob",
            Command::Stats => "stats",
            Command::Threshold => "threshold",
            Command::Sweep => "sweep",
            Command::Validate => "validate",
        }
    }

    pub fn default_format(self) -> Format {
        match self {
            Command::Quasiprob | Command::Sweep => Format::Csv,
            Command::Stats | Command::Threshold | Command::Validate => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Config(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleLevel {
    #[default]
    Off,
    Spot,
    Full,
}

impl FromStr for OracleLevel {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(OracleLevel::Off),
            "spot" => Ok(OracleLevel::Spot),
            "full" => Ok(OracleLevel::Full),
            _ => Err(CliError::Config(format!("unknown oracle level `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
    pub quantity: Option<String>,
}

/// Serialized form of a run. Every field is optional so that a file can hold
/// a partial configuration that flags complete.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub state: Option<StateSpec>,
    pub stage: Option<Stage>,
    pub kappa: Option<i32>,
    pub grid: Option<PhaseGrid>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub oracle: Option<OracleLevel>,
    pub cutoff: Option<usize>,
    pub quad_order: Option<usize>,
    pub n_max: Option<u32>,
    pub s_max: Option<f64>,
    pub tol: Option<f64>,
    pub sweep: Option<SweepConfig>,
    pub level: Option<OracleLevel>,
    pub reproducible: Option<bool>,
}

/// Flat state flags, applied field by field over a base spec.
#[derive(Debug, Clone, Default)]
pub struct StateFlags {
    /// A family name, or `thermal` for the family-free thermal state.
    pub state: Option<String>,
    pub n_th: Option<f64>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub lambda: Option<f64>,
}

impl StateFlags {
    fn is_empty(&self) -> bool {
        self.state.is_none() && self.n_th.is_none() && self.m.is_none() && self.k.is_none() && self.lambda.is_none()
    }

    pub fn apply(&self, base: Option<StateSpec>) -> Result<Option<StateSpec>> {
        if self.is_empty() {
            return Ok(base);
        }
        let (family, thermal) = match self.state.as_deref() {
            Some("thermal") => (Family::Pats, true),
            Some(name) => (Family::from_str(name)?, false),
            None => match base {
                Some(b) => (b.family(), false),
                None => return Err(CliError::Config("--state is required".into())),
            },
        };
        let same = base.filter(|b| b.family() == family);
        let n_th = self
            .n_th
            .or(same.map(|b| b.n_th()))
            .ok_or_else(|| CliError::Config("--nth is required".into()))?;
        let m = if thermal { 0 } else { self.m.or(same.map(|b| b.m())).unwrap_or(0) };
        if thermal && self.m.is_some_and(|m| m != 0) {
            return Err(CliError::Config("a thermal state has m = 0".into()));
        }
        let k = self.k.or(same.map(|b| b.k())).unwrap_or(0);
        let lambda = self.lambda.or(same.map(|b| b.lambda())).unwrap_or(0.0);
        Ok(Some(StateSpec::from_parts(family, n_th, m, k, lambda)?))
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// `overlay` wins wherever it is set.
    pub fn merged(self, overlay: RunConfig) -> RunConfig {
        let sweep = match (self.sweep, overlay.sweep) {
            (Some(a), Some(b)) => Some(SweepConfig {
                axis: b.axis.or(a.axis),
                from: b.from.or(a.from),
                to: b.to.or(a.to),
                steps: b.steps.or(a.steps),
                quantity: b.quantity.or(a.quantity),
            }),
            (a, b) => b.or(a),
        };
        RunConfig {
            command: overlay.command.or(self.command),
            state: overlay.state.or(self.state),
            stage: overlay.stage.or(self.stage),
            kappa: overlay.kappa.or(self.kappa),
            grid: overlay.grid.or(self.grid),
            output_path: overlay.output_path.or(self.output_path),
            format: overlay.format.or(self.format),
            oracle: overlay.oracle.or(self.oracle),
            cutoff: overlay.cutoff.or(self.cutoff),
            quad_order: overlay.quad_order.or(self.quad_order),
            n_max: overlay.n_max.or(self.n_max),
            s_max: overlay.s_max.or(self.s_max),
            tol: overlay.tol.or(self.tol),
            sweep,
            level: overlay.level.or(self.level),
            reproducible: overlay.reproducible.or(self.reproducible),
        }
    }

    pub fn command(&self) -> Result<Command> {
        self.command.ok_or_else(|| CliError::Config("no command given".into()))
    }

    pub fn state(&self) -> Result<StateSpec> {
        let spec = self.state.ok_or_else(|| CliError::Config("no state given".into()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn stage(&self) -> Result<Stage> {
        let stage = self.stage.unwrap_or(Stage::Input);
        stage.validate()?;
        Ok(stage)
    }

    pub fn kappa(&self) -> Result<KappaOrder> {
        Ok(KappaOrder::from_value(self.kappa.unwrap_or(0))?)
    }

    pub fn format(&self) -> Result<Format> {
        Ok(self.format.unwrap_or(self.command()?.default_format()))
    }

    pub fn reproducible(&self) -> bool {
        self.reproducible.unwrap_or(false)
    }
}

/// `--stage input|output` with `--s`; a bare `--s` means the output stage.
pub fn parse_stage(stage: Option<&str>, s: Option<f64>) -> Result<Option<Stage>> {
    match (stage, s) {
        (None, None) => Ok(None),
        (Some("input"), None) => Ok(Some(Stage::Input)),
        (Some("input"), Some(_)) => Err(CliError::Config("--s applies to the output stage".into())),
        (Some("output") | None, Some(s)) => Ok(Some(Stage::Output { s })),
        (Some("output"), None) => Err(CliError::Config("--stage output needs --s".into())),
        (Some(other), _) => Err(CliError::Config(format!("unknown stage `{other}`"))),
    }
}

/// `min:max:n`, the same range on both axes.
pub fn parse_grid(text: &str) -> Result<PhaseGrid> {
    let bad = || CliError::Config(format!("grid `{text}` is not min:max:n"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else { return Err(bad()) };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    Ok(PhaseGrid::square(lo, hi, n)?)
}
