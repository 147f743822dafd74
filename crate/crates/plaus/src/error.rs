//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed measure: {0}")]
    MalformedMeasure(String),

    #[error("value {value} does not belong to the {carrier} carrier")]
    CarrierMismatch { carrier: &'static str, value: String },

    #[error("measure kind {found} cannot feed the {wanted} construction")]
    WrongMeasureKind { wanted: &'static str, found: &'static str },

    #[error("index set for the indexed-family domain must be nonempty")]
    EmptyIndexSet,

    #[error("malformed conditional plausibility space: {0}")]
    MalformedCps(String),

    #[error("domain {0} declares no ⊕/⊗ algebra")]
    NoAlgebra(&'static str),

    #[error("variable sets must be pairwise disjoint: {0}")]
    OverlappingSets(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("graph is cyclic")]
    CyclicGraph,

    #[error("not a partition of the world set: {0}")]
    BadPartition(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("domain mismatch: file declares {file}, requested {requested}")]
    DomainMismatch { file: String, requested: String },

    #[error("bad query: {0}")]
    BadQuery(String),

    #[error("no richness witness among declared candidates for domain {0}")]
    NoRichnessWitness(&'static str),

    #[error("counterexample verification failed: {0}")]
    VerificationFailed(String),

    #[error("{0}")]
    Unsupported(String),
}
