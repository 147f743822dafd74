//! Conditional plausibility spaces over pluggable uncertainty domains.
//!
//! The crate provides one value algebra per supported representation of
//! uncertainty (exact-rational probability, ranking functions, two
//! possibility conditionings, indexed sets of probability measures, and
//! lower/upper probability intervals), the standard constructions that turn
//! an unconditional measure into a conditional plausibility space, and
//! mechanical auditors for every axiom family those constructions are
//! supposed to satisfy: the measure axioms, the Popper-algebra and
//! conditioning axioms, coherence, the algebraic (⊕/⊗) axioms, the
//! semi-graphoid properties of conditional independence, and the
//! BN-compatibility conditions that make Bayesian-network reconstruction
//! and d-separation work.
//!
//! All numeric carriers use exact rational arithmetic; every check is a
//! pure function and safe to evaluate from multiple threads. The heavy
//! exhaustive scans are data-parallel and run on rayon when the `parallel`
//! feature (default) is enabled; see [`exec`].

pub mod audit;
pub mod bayesnet;
pub mod conditioning;
pub mod cps;
pub mod domain;
pub mod error;
pub mod exec;
pub mod fileio;
pub mod fixtures;
pub mod gen;
pub mod independence;
pub mod measure;
pub mod rational;
pub mod report;
pub mod value;
pub mod worlds;

pub use audit::{AuditOptions, AxiomId, AxiomReport, Witness, WitnessItem};
pub use cps::Cps;
pub use domain::{DomainKind, DomainSpec};
pub use error::{Error, Result};
pub use measure::{Measure, UnconditionalPl};
pub use rational::Rat;
pub use value::{IntervalValue, LiftedValue, PlpValue, Rank, Value};
pub use worlds::{Event, Worlds};
