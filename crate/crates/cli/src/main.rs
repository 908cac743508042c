use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ngstates_cli::commands::{run, Diag};
use ngstates_cli::config::{parse_grid, parse_stage, SweepConfig};
use ngstates_cli::{CliError, Command, Format, OracleLevel, RunConfig, StateFlags};

/// Quasi-probabilities and photon statistics of non-Gaussian thermal states
/// under Gaussian classical noise.
#[derive(Parser)]
#[command(name = "ngstates", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Q, W or P on a phase-space grid.
    Quasiprob {
        #[command(flatten)]
        common: Common,
        /// Ordering parameter: -1 (Q), 0 (W) or 1 (P).
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<i32>,
        /// Square grid `min:max:n`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Photon-number distribution, Mandel Q and g².
    Stats {
        #[command(flatten)]
        common: Common,
        /// Largest photon number listed.
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Noise at which W(0) stops being negative.
    Threshold {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        s_max: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// One quantity along one parameter axis.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// n_th, lambda, s or m.
        #[arg(long)]
        axis: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        /// Number of points, endpoints included.
        #[arg(long)]
        steps: Option<usize>,
        /// W0, Q0, mandel_q, g2 or pnd_peak.
        #[arg(long)]
        quantity: Option<String>,
    },
    /// Closed forms against the Fock oracle over the validation lattice.
    Validate {
        #[command(flatten)]
        common: Common,
        /// spot or full.
        #[arg(long)]
        level: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// pats, psts, pakfts, pasts, pssts or thermal.
    #[arg(long)]
    state: Option<String>,
    #[arg(long = "nth")]
    n_th: Option<f64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    lambda: Option<f64>,
    /// input or output.
    #[arg(long)]
    stage: Option<String>,
    /// Noise variance of the channel; implies the output stage.
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// off, spot or full.
    #[arg(long)]
    oracle: Option<String>,
    /// Fixed oracle cutoff instead of the escalation ladder.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Gauss-Hermite nodes per axis for the oracle channel.
    #[arg(long)]
    quad_order: Option<usize>,
    /// Omit the timestamp comment from CSV output.
    #[arg(long)]
    reproducible: bool,
}

impl Common {
    fn into_config(self, command: Command) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        if base.command.is_some_and(|c| c != command) {
            return Err(CliError::Config(format!("config file is for another command than `{}`", command.name())));
        }
        let flags = StateFlags { state: self.state, n_th: self.n_th, m: self.m, k: self.k, lambda: self.lambda };
        let overlay = RunConfig {
            command: Some(command),
            state: flags.apply(base.state)?,
            stage: parse_stage(self.stage.as_deref(), self.s)?,
            output_path: self.output,
            format: self.format.as_deref().map(str::parse::<Format>).transpose()?,
            oracle: self.oracle.as_deref().map(str::parse::<OracleLevel>).transpose()?,
            cutoff: self.cutoff,
            quad_order: self.quad_order,
            reproducible: self.reproducible.then_some(true),
            ..Default::default()
        };
        Ok(base.merged(overlay))
    }
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    Ok(match cli.command {
        Sub::Quasiprob { common, kappa, grid } => {
            let grid = grid.as_deref().map(parse_grid).transpose()?;
            let cfg = common.into_config(Command::Quasiprob)?;
            cfg.merged(RunConfig { kappa, grid, ..Default::default() })
        }
        Sub::Stats { common, n_max } => {
            common.into_config(Command::Stats)?.merged(RunConfig { n_max, ..Default::default() })
        }
        Sub::Threshold { common, s_max, tol } => {
            common.into_config(Command::Threshold)?.merged(RunConfig { s_max, tol, ..Default::default() })
        }
        Sub::Sweep { common, axis, from, to, steps, quantity } => {
            let sweep = SweepConfig { axis, from, to, steps, quantity };
            common.into_config(Command::Sweep)?.merged(RunConfig { sweep: Some(sweep), ..Default::default() })
        }
        Sub::Validate { common, level } => {
            let level = level.as_deref().map(str::parse::<OracleLevel>).transpose()?;
            common.into_config(Command::Validate)?.merged(RunConfig { level, ..Default::default() })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build(cli).and_then(|cfg| {
        run(&cfg)?;
        Ok(cfg)
    });
    match result {
        Ok(cfg) => {
            let name = cfg.command.map_or("", Command::name);
            Diag::new().with("status", "ok").with("command", name).emit();
            ExitCode::SUCCESS
        }
        Err(e) => {
            Diag::new()
                .with("status", "error")
                .with("code", e.exit_code())
                .with("kind", e.kind())
                .with("reason", e.reason())
                .emit();
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
