//! Structured errors shared by all modules.
//!
//! Every error carries a stable machine-readable name (see [`Error::name`])
//! that the CLI prints next to the human-readable message.

use thiserror::Error;

/// Errors produced by the alcove combinatorics, character arithmetic and
/// decomposition engines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid root index {index}: root system has {count} positive roots")]
    InvalidRootIndex { index: usize, count: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("mixed root systems: {0}")]
    MixedRootSystems(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("unsupported ell {ell}: need ell >= Coxeter number {h}")]
    UnsupportedEll { ell: i64, h: i64 },

    #[error("modular case requires a prime ell, got {0}")]
    EllNotPrime(i64),

    #[error("operation only implemented for types A1/A2, not {0}")]
    EngineScope(String),

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("digit parity error: {0}")]
    Parity(String),

    #[error("weight not in the required alcove: {0}")]
    Alcove(String),

    #[error("parameter outside the extended principal block: {0}")]
    Block(String),

    #[error("wrong case for this operation: {0}")]
    Case(String),

    #[error("outside the supported parameter region: {0}")]
    Scope(String),

    #[error("malformed module label: {0}")]
    Structure(String),

    #[error("not a Weyl-group-invariant character: {0}")]
    Invariance(String),

    #[error("character table failed validation against the Jantzen sum formula: {0}")]
    DataIntegrity(String),

    #[error("computation exceeds resource limits: {0}")]
    Resource(String),
}

impl Error {
    /// Stable identifier for scripting against CLI output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRootIndex { .. } => "invalid-root-index",
            Error::InvalidCartan(_) => "invalid-cartan",
            Error::MixedRootSystems(_) => "type-error",
            Error::NotDominant(_) => "dominance-error",
            Error::UnsupportedEll { .. } => "unsupported-ell",
            Error::EllNotPrime(_) => "ell-not-prime",
            Error::EngineScope(_) => "engine-scope-error",
            Error::Range(_) => "range-error",
            Error::Parity(_) => "parity-error",
            Error::Alcove(_) => "alcove-error",
            Error::Block(_) => "block-error",
            Error::Case(_) => "case-error",
            Error::Scope(_) => "scope-error",
            Error::Structure(_) => "structure-error",
            Error::Invariance(_) => "invariance-error",
            Error::DataIntegrity(_) => "data-integrity-error",
            Error::Resource(_) => "resource-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
