use ngstates_core::Error as CoreError;
use ngstates_oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    /// 0 ok, 1 I/O, 2 domain or guard violation, 3 validation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config(_) | CliError::Core(_) | CliError::Oracle(OracleError::Core(_)) => 2,
            CliError::Oracle(_) | CliError::Validation(_) => 3,
        }
    }

    /// Short machine-readable category for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Config(_) => "config",
            CliError::Core(e) | CliError::Oracle(OracleError::Core(e)) => match e {
                CoreError::Domain(_) => "domain",
                CoreError::Contract(_) => "contract",
                CoreError::SingularExpansion => "singular_expansion",
                CoreError::Divergent(_) => "divergent",
                CoreError::BranchAmbiguity(_) => "branch_ambiguity",
                CoreError::Degenerate(_) => "degenerate",
                CoreError::InvalidState(_) => "invalid_state",
                CoreError::Inadmissible(_) => "inadmissible",
                CoreError::Range(_) => "range",
                CoreError::NonConvergent(_) => "non_convergent",
                CoreError::UndefinedStatistic(_) => "undefined_statistic",
                CoreError::NotApplicable(_) => "not_applicable",
            },
            CliError::Oracle(_) => "oracle",
            CliError::Validation(_) => "validation",
        }
    }

    /// The bare reason, without the category prefix added by `Display`.
    pub fn reason(&self) -> String {
        match self {
            CliError::Core(CoreError::Inadmissible(r)) => r.clone(),
            other => other.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
