use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("singular expansion: constant term is zero")]
    SingularExpansion,
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("branch ambiguity: {0}")]
    BranchAmbiguity(String),
    #[error("coefficient degeneracy: {0}")]
    Degenerate(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("series did not converge: {0}")]
    NonConvergent(String),
    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}
