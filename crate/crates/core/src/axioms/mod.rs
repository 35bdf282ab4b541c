//! Equity axioms: premises on pairs of streams, and audits of welfare
//! functions and relations against them.

mod audit;
mod generate;

use std::fmt;
use std::str::FromStr;

pub use audit::{audit_swf, audit_swr, AuditReport, Observation, Violation};
pub use generate::{generate_instance, GeneratorConfig, Instance};

use crate::error::{Error, Result};
use crate::pairing::{
    find_witness, pair_orientation, validate, Direction, PairingFunction, WitnessReport,
    WitnessStatus,
};
use crate::streams::{comparable, dominates, is_finite_permutation, pair_difference, ComparablePair, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum AxiomTag {
    /// Anonymity: finite permutations are indifferent.
    AN,
    /// Monotonicity: coordinate-wise dominance is weakly preferred.
    M,
    /// Pigou-Dalton: one exact transfer from richer to poorer.
    PD,
    /// Strong equity: one nested spread.
    SE,
    /// Generalized equity: any set of nested spreads in one direction.
    GE,
    /// Generalized Pigou-Dalton: any set of exact transfers.
    GPD,
    /// Infinite equity: GE with infinitely many pairs.
    IE,
    /// Weak equity: GE with every coordinate paired.
    WE,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 8] = [
        AxiomTag::AN,
        AxiomTag::M,
        AxiomTag::PD,
        AxiomTag::SE,
        AxiomTag::GE,
        AxiomTag::GPD,
        AxiomTag::IE,
        AxiomTag::WE,
    ];

    /// Axioms whose premise is witnessed by a pairing function.
    pub const PAIRING: [AxiomTag; 6] =
        [AxiomTag::PD, AxiomTag::SE, AxiomTag::GE, AxiomTag::GPD, AxiomTag::IE, AxiomTag::WE];

    pub fn has_pairing_witness(self) -> bool {
        !matches!(self, AxiomTag::AN | AxiomTag::M)
    }

    /// Each pair must be a transfer of equal size.
    pub fn requires_exact_transfer(self) -> bool {
        matches!(self, AxiomTag::PD | AxiomTag::GPD)
    }

    /// Whether every welfare criterion satisfying `self` satisfies `other`,
    /// because `other`'s premise is a special case of `self`'s.
    pub fn implies(self, other: AxiomTag) -> bool {
        use AxiomTag::*;
        self == other
            || matches!(
                (self, other),
                (GE, IE | WE | GPD | SE | PD) | (IE, WE) | (GPD, PD) | (SE, PD)
            )
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for AxiomTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomTag::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown axiom {s:?}")))
    }
}

/// Checks whether `(x, y)` satisfies the premise of `axiom`.
///
/// Truncated streams are examined on their first `depth` coordinates;
/// eventually periodic streams are examined exhaustively, except that the
/// pairing axioms GE, GPD, IE and WE go through [`find_witness`] with its
/// search limits.
pub fn premise_holds(axiom: AxiomTag, x: &Stream, y: &Stream, depth: usize) -> Result<WitnessReport> {
    if depth == 0 {
        return Err(Error::BadParameter("depth must be positive".into()));
    }
    match axiom {
        AxiomTag::GE | AxiomTag::GPD | AxiomTag::IE | AxiomTag::WE => {
            return find_witness(x, y, axiom, depth);
        }
        _ => {}
    }
    let pair = frame(x, y, depth)?;
    let verified = if pair.is_periodic() {
        WitnessStatus::VerifiedPeriodic
    } else {
        WitnessStatus::VerifiedToDepth(depth)
    };
    let missing = WitnessReport {
        axiom,
        direction: None,
        pairing: None,
        status: WitnessStatus::NoWitnessToDepth(depth),
    };
    match axiom {
        AxiomTag::AN => {
            let holds = is_finite_permutation(&pair.x, &pair.y)?;
            Ok(if holds { WitnessReport { status: verified, ..missing } } else { missing })
        }
        AxiomTag::M => {
            let direction = if dominates(&pair.x, &pair.y)? {
                Some(Direction::XOverY)
            } else if dominates(&pair.y, &pair.x)? {
                Some(Direction::YOverX)
            } else {
                return Ok(missing);
            };
            Ok(WitnessReport { direction, status: verified, ..missing })
        }
        _ => {
            let d = pair_difference(&pair);
            if !d.is_finite() || d.explicit().len() != 2 {
                return Ok(missing);
            }
            let mut it = d.explicit().iter().copied();
            let (i, j) = (it.next().unwrap_or(0), it.next().unwrap_or(0));
            let (xi, yi) = (pair.x.coordinate(i)?, pair.y.coordinate(i)?);
            let (xj, yj) = (pair.x.coordinate(j)?, pair.y.coordinate(j)?);
            if pair_orientation(xi, yi, xj, yj, axiom.requires_exact_transfer()).is_none() {
                return Ok(missing);
            }
            validate(&PairingFunction::finite([(i, j)])?, &pair.x, &pair.y, axiom)
        }
    }
}

// Periodic pairs as they are; truncations cut to `depth`.
fn frame(x: &Stream, y: &Stream, depth: usize) -> Result<ComparablePair> {
    let pair = comparable(x, y)?;
    if pair.is_periodic() {
        return Ok(pair);
    }
    if pair.exhaustive_len() < depth {
        return Err(Error::OutOfDepth { index: depth, depth: pair.exhaustive_len() });
    }
    Ok(ComparablePair { x: pair.x.truncate(depth)?, y: pair.y.truncate(depth)? })
}
