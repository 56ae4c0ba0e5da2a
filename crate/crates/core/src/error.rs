use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("site {site} out of range for a lattice of {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// The sector decomposition only exists when every bond has t = delta.
    #[error("parameters are off the solvable point: {0}")]
    NonSolvable(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigensolver failed: {0}")]
    Solver(String),

    #[error("{n_sites} sites exceed the oracle cap of {cap}")]
    OracleCap { n_sites: usize, cap: usize },

    #[error("invalid scan plan: {0}")]
    InvalidPlan(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
