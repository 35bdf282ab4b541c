//! Executable equity axioms for infinite utility streams.
//!
//! The crate represents infinite utility streams finitely, decides
//! generalized-equity relations between them by constructing pairing-function
//! witnesses, evaluates explicit social welfare functions exactly, compares
//! streams under the filter-leximin relation, classifies utility domains by
//! order type, and rebuilds the classical counterexample streams at a finite
//! truncation depth.
//!
//! All arithmetic is exact; see [`Rational`].

pub mod axioms;
pub mod cli;
pub mod constructions;
pub mod domains;
pub mod error;
pub mod json;
pub mod pairing;
pub mod rational;
pub mod streams;
pub mod swf;
pub mod swr;

pub use axioms::{AuditReport, AxiomTag};
pub use domains::{DomainClass, MonotoneChain, UtilityDomain};
pub use error::{Error, Result};
pub use pairing::{Direction, PairingFunction, WitnessReport, WitnessStatus};
pub use rational::{q, Rational};
pub use streams::{PeriodicIndexSet, Stream, StreamKind};
pub use swf::{FiveValueDomain, SevenValueDomain, WelfareFunction};
pub use swr::{ComparisonVerdict, Relation, WelfareRelation};

/// Version tag carried by every JSON document the CLI emits.
pub const SCHEMA_VERSION: u32 = 1;
