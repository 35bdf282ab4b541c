//! Forward generators of premise-satisfying stream pairs.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;

use super::AxiomTag;
use crate::domains::UtilityDomain;
use crate::error::{Error, Result};
use crate::pairing::PairingFunction;
use crate::rational::Rational;
use crate::streams::Stream;

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    /// Utility values to draw from, sorted and distinct.
    pub values: Vec<Rational>,
    /// Search and comparison depth used when re-checking instances.
    pub depth: usize,
    pub max_pre: usize,
    pub max_period: usize,
}

impl GeneratorConfig {
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut values: Vec<Rational> = values.into_iter().collect();
        values.sort();
        values.dedup();
        if values.is_empty() {
            return Err(Error::Generator("no values to draw from".into()));
        }
        Ok(GeneratorConfig { values, depth: 200, max_pre: 8, max_period: 12 })
    }

    /// Finite domains contribute every value; chains contribute their first
    /// materialized terms.
    pub fn from_domain(domain: &UtilityDomain) -> Result<Self> {
        GeneratorConfig::new(domain.sample_values(12))
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_shape(mut self, max_pre: usize, max_period: usize) -> Self {
        self.max_pre = max_pre;
        self.max_period = max_period.max(2);
        self
    }

    // Index quadruples a < b < c < d, with b - a = d - c when `exact`.
    fn quadruples(&self, exact: bool) -> Vec<[usize; 4]> {
        let v = &self.values;
        let n = v.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if !exact || &v[b] - &v[a] == &v[d] - &v[c] {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A premise-satisfying pair: `better` is the stream the axiom says is
/// (weakly, for M; equally, for AN) preferred.
#[derive(Debug, Clone)]
pub struct Instance {
    pub better: Stream,
    pub worse: Stream,
    /// For pairing axioms, pairs `better` over `worse`.
    pub witness: Option<PairingFunction>,
}

/// Draws one instance for `axiom`: nested spreads placed on a random base
/// stream for the pairing axioms, transpositions for AN, coordinate
/// increases for M.
pub fn generate_instance(axiom: AxiomTag, config: &GeneratorConfig, rng: &mut impl Rng) -> Result<Instance> {
    match axiom {
        AxiomTag::AN => anonymity(config, rng),
        AxiomTag::M => monotonicity(config, rng),
        _ => spreads(axiom, config, rng),
    }
}

fn random_values(config: &GeneratorConfig, len: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..len).map(|_| config.values[rng.gen_range(0..config.values.len())].clone()).collect()
}

fn anonymity(config: &GeneratorConfig, rng: &mut impl Rng) -> Result<Instance> {
    let pre = rng.gen_range(0..=config.max_pre);
    let period = rng.gen_range(1..=config.max_period);
    let worse = Stream::periodic(random_values(config, pre, rng), random_values(config, period, rng))?;
    // Unroll one period so the swaps can touch it without touching every
    // later repetition.
    let mut head = worse.prefix(pre + period)?;
    let tail = worse.period().to_vec();
    if head.len() >= 2 {
        for _ in 0..rng.gen_range(1..=3) {
            let ij = sample(rng, head.len(), 2);
            head.swap(ij.index(0), ij.index(1));
        }
    }
    let better = Stream::periodic(head, tail)?;
    Ok(Instance { better, worse, witness: None })
}

fn monotonicity(config: &GeneratorConfig, rng: &mut impl Rng) -> Result<Instance> {
    let pre = rng.gen_range(0..=config.max_pre);
    let period = rng.gen_range(1..=config.max_period);
    let base = random_values(config, pre + period, rng);
    let raised: Vec<Rational> = base
        .iter()
        .map(|v| {
            let above = config.values.partition_point(|w| w <= v);
            if above < config.values.len() && rng.gen_bool(1.0 / 3.0) {
                config.values[rng.gen_range(above..config.values.len())].clone()
            } else {
                v.clone()
            }
        })
        .collect();
    let split = |v: Vec<Rational>| -> Result<Stream> {
        let (p, q) = v.split_at(pre);
        Stream::periodic(p.to_vec(), q.to_vec())
    };
    Ok(Instance { better: split(raised)?, worse: split(base)?, witness: None })
}

fn spreads(axiom: AxiomTag, config: &GeneratorConfig, rng: &mut impl Rng) -> Result<Instance> {
    let quads = config.quadruples(axiom.requires_exact_transfer());
    if quads.is_empty() {
        let kind = if axiom.requires_exact_transfer() { "equal-gap " } else { "" };
        return Err(Error::Generator(format!(
            "{axiom} needs four {kind}values a < b < c < d in the domain"
        )));
    }
    let max_pre = config.max_pre;
    let max_period = config.max_period.max(2);
    let (pre, period) = match axiom {
        AxiomTag::PD | AxiomTag::SE => (rng.gen_range(2..=max_pre.max(2)), rng.gen_range(1..=max_period)),
        AxiomTag::WE => (2 * rng.gen_range(0..=max_pre / 2), 2 * rng.gen_range(1..=max_period / 2)),
        AxiomTag::IE => (rng.gen_range(0..=max_pre), rng.gen_range(2..=max_period)),
        _ => {
            let pre = rng.gen_range(0..=max_pre);
            let lo = if pre < 2 { 2 } else { 1 };
            (pre, rng.gen_range(lo..=max_period))
        }
    };
    let (pre_pairs, period_pairs) = match axiom {
        AxiomTag::PD | AxiomTag::SE => (1, 0),
        AxiomTag::WE => (pre / 2, period / 2),
        AxiomTag::IE => (rng.gen_range(0..=pre / 2), rng.gen_range(1..=period / 2)),
        _ => loop {
            let k = (rng.gen_range(0..=pre / 2), rng.gen_range(0..=period / 2));
            if k != (0, 0) {
                break k;
            }
        },
    };
    let mut better = random_values(config, pre + period, rng);
    let mut worse = better.clone();
    let mut pairs = Vec::new();
    for (offset, len, k) in [(0, pre, pre_pairs), (pre, period, period_pairs)] {
        let mut slots: Vec<usize> = (offset..offset + len).collect();
        slots.shuffle(rng);
        for chunk in slots[..2 * k].chunks(2) {
            let (low, high) = (chunk[0], chunk[1]);
            let [a, b, c, d] = quads[rng.gen_range(0..quads.len())];
            let v = &config.values;
            worse[low] = v[a].clone();
            better[low] = v[b].clone();
            better[high] = v[c].clone();
            worse[high] = v[d].clone();
            pairs.push((low.min(high) + 1, low.max(high) + 1));
        }
    }
    let witness = if period_pairs == 0 {
        PairingFunction::finite(pairs)?
    } else {
        PairingFunction::periodic(pairs, pre + period, period)?
    };
    let split = |v: Vec<Rational>| -> Result<Stream> {
        let (p, q) = v.split_at(pre);
        Stream::periodic(p.to_vec(), q.to_vec())
    };
    Ok(Instance { better: split(better)?, worse: split(worse)?, witness: Some(witness) })
}
