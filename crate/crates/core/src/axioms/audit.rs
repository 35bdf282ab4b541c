//! Randomized audits of welfare functions and relations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::generate::{generate_instance, GeneratorConfig, Instance};
use super::AxiomTag;
use crate::error::Result;
use crate::pairing::PairingFunction;
use crate::rational::Rational;
use crate::streams::Stream;
use crate::swf::WelfareFunction;
use crate::swr::{Relation, WelfareRelation};

/// What the audited criterion said about a generated pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Observation {
    Values { better: Rational, worse: Rational },
    /// Relation of `better` to `worse`.
    Verdict(Relation),
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub trial: usize,
    pub better: Stream,
    pub worse: Stream,
    pub witness: Option<PairingFunction>,
    pub observed: Observation,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub subject: String,
    pub axiom: AxiomTag,
    pub trials: usize,
    pub seed: u64,
    /// Sorted by trial.
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `W(better) > W(worse)` on generated instances of the pairing
/// axioms, `=` for AN and `>=` for M.
pub fn audit_swf<W: WelfareFunction + Sync + ?Sized>(
    w: &W,
    axiom: AxiomTag,
    config: &GeneratorConfig,
    trials: usize,
    seed: u64,
) -> Result<AuditReport> {
    let violations = run(axiom, config, trials, seed, |inst| {
        let better = w.evaluate(&inst.better)?;
        let worse = w.evaluate(&inst.worse)?;
        let holds = match axiom {
            AxiomTag::AN => better == worse,
            AxiomTag::M => better >= worse,
            _ => better > worse,
        };
        Ok((!holds).then_some(Observation::Values { better, worse }))
    })?;
    Ok(AuditReport { subject: w.name(), axiom, trials, seed, violations })
}

/// Checks that `better` compares strictly greater on generated instances
/// of the pairing axioms, equivalent for AN and not less for M. An
/// undetermined verdict counts as a violation.
pub fn audit_swr<R: WelfareRelation + Sync + ?Sized>(
    r: &R,
    axiom: AxiomTag,
    config: &GeneratorConfig,
    trials: usize,
    seed: u64,
) -> Result<AuditReport> {
    let violations = run(axiom, config, trials, seed, |inst| {
        let verdict = r.compare(&inst.better, &inst.worse)?.relation;
        let holds = match axiom {
            AxiomTag::AN => verdict == Relation::Equivalent,
            AxiomTag::M => matches!(verdict, Relation::Equivalent | Relation::StrictlyGreater),
            _ => verdict == Relation::StrictlyGreater,
        };
        Ok((!holds).then_some(Observation::Verdict(verdict)))
    })?;
    Ok(AuditReport { subject: r.name(), axiom, trials, seed, violations })
}

fn run(
    axiom: AxiomTag,
    config: &GeneratorConfig,
    trials: usize,
    seed: u64,
    check: impl Fn(&Instance) -> Result<Option<Observation>> + Sync,
) -> Result<Vec<Violation>> {
    let found: Vec<Option<Violation>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let inst = generate_instance(axiom, config, &mut rng)?;
            Ok(check(&inst)?.map(|observed| Violation {
                trial,
                better: inst.better,
                worse: inst.worse,
                witness: inst.witness,
                observed,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
