//! Claims about constructed streams and their checking.

use serde::Serialize;

use crate::axioms::{premise_holds, AxiomTag};
use crate::error::{Error, Result};
use crate::pairing::{validate, Direction, PairingFunction};
use crate::streams::{dominates, is_finite_permutation, Stream};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    /// `validate(pairing, x, y, axiom)` succeeds in direction `expect`.
    Witness { axiom: AxiomTag, pairing: String, x: String, y: String, expect: Direction },
    Dominates { upper: String, lower: String },
    Permutation { x: String, y: String },
    /// The premise of `axiom` does not hold between `x` and `y`.
    NoPremise { axiom: AxiomTag, x: String, y: String, depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub statement: String,
    pub check: Check,
}

/// Named streams and pairings with the claims made about them.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub name: String,
    pub streams: Vec<(String, Stream)>,
    pub pairings: Vec<(String, PairingFunction)>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
}

impl NamedExample {
    pub fn stream(&self, name: &str) -> Result<&Stream> {
        self.streams
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::UnknownName(format!("{}: stream {name}", self.name)))
    }

    pub fn pairing(&self, name: &str) -> Result<&PairingFunction> {
        self.pairings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnknownName(format!("{}: pairing {name}", self.name)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub name: String,
    pub steps: Vec<Step>,
    pub notes: Vec<String>,
}

impl Transcript {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }
}

/// Checks every claim of `example`.
pub fn verify(example: &NamedExample) -> Result<Transcript> {
    let mut steps = Vec::with_capacity(example.claims.len());
    for claim in &example.claims {
        let (passed, detail) = match &claim.check {
            Check::Witness { axiom, pairing, x, y, expect } => {
                let report =
                    validate(example.pairing(pairing)?, example.stream(x)?, example.stream(y)?, *axiom)?;
                let ok = report.is_verified() && report.direction == Some(*expect);
                let dir = report.direction.map_or("none".to_string(), |d| d.to_string());
                (ok, format!("{axiom} via {pairing} on ({x}, {y}): {}, direction {dir}", report.status))
            }
            Check::Dominates { upper, lower } => {
                let ok = dominates(example.stream(upper)?, example.stream(lower)?)?;
                (ok, format!("{upper} >= {lower} coordinate-wise: {ok}"))
            }
            Check::Permutation { x, y } => {
                let ok = is_finite_permutation(example.stream(x)?, example.stream(y)?)?;
                (ok, format!("{y} is a finite permutation of {x}: {ok}"))
            }
            Check::NoPremise { axiom, x, y, depth } => {
                let report = premise_holds(*axiom, example.stream(x)?, example.stream(y)?, *depth)?;
                let ok = !report.is_verified();
                (ok, format!("{axiom} premise on ({x}, {y}): {}", report.status))
            }
        };
        steps.push(Step { statement: claim.statement.clone(), passed, detail });
    }
    Ok(Transcript { name: example.name.clone(), steps, notes: example.notes.clone() })
}
