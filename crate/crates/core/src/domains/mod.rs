//! Utility domains and their order types.
//!
//! A [`UtilityDomain`] is a finite set of rationals together with finitely
//! many monotone chains given in closed form. For such sets the order-type
//! questions reduce to comparisons between chain directions and limits:
//!
//! * an infinite strictly decreasing sequence must eventually live inside a
//!   single part, and only decreasing chains contain one;
//! * a subset of type `σ` (the integers) exists exactly when some decreasing
//!   chain converges strictly below the limit of some increasing chain, the
//!   two tails on either side of a separating point forming `ω* + ω`.
//!
//! These procedures are proved for this presentation only. General countable
//! order types are out of reach.

mod form;

use std::collections::BTreeSet;

pub use form::{ChainForm, Extended};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Terms materialized per chain.
pub const MATERIALIZED_TERMS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ChainDirection {
    #[serde(rename = "inc")]
    Increasing,
    #[serde(rename = "dec")]
    Decreasing,
}

/// `{ form(n) : n >= start }`, strictly monotone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneChain {
    form: ChainForm,
    source: String,
    start: usize,
    direction: ChainDirection,
    limit: Extended,
    terms: Vec<Rational>,
}

impl MonotoneChain {
    pub fn parse(source: &str) -> Result<Self> {
        MonotoneChain::from_form(ChainForm::parse(source)?, source.trim().to_string(), 1)
    }

    pub fn parse_from(source: &str, start: usize) -> Result<Self> {
        MonotoneChain::from_form(ChainForm::parse(source)?, source.trim().to_string(), start)
    }

    pub fn from_form(form: ChainForm, source: String, start: usize) -> Result<Self> {
        if start == 0 {
            return Err(Error::InvalidDomain("chain indices start at 1".into()));
        }
        let det = form.determinant();
        if det.is_zero() {
            return Err(Error::InvalidDomain(format!("{source:?} is constant")));
        }
        if let Some(pole) = form.pole() {
            if pole >= Rational::integer(start as i64) {
                return Err(Error::InvalidDomain(format!(
                    "{source:?} has a pole at n = {pole}, inside the index range"
                )));
            }
        }
        let direction = if det.is_positive() {
            ChainDirection::Increasing
        } else {
            ChainDirection::Decreasing
        };
        let terms: Vec<Rational> = (start..start + MATERIALIZED_TERMS)
            .map(|n| form.eval(&Rational::integer(n as i64)).expect("no pole in range"))
            .collect();
        let limit = form.limit();
        Ok(MonotoneChain { form, source, start, direction, limit, terms })
    }

    /// Checks a declared direction and limit against the closed form.
    pub fn expect(self, direction: Option<ChainDirection>, limit: Option<&Extended>) -> Result<Self> {
        if let Some(dir) = direction {
            if dir != self.direction {
                return Err(Error::InvalidDomain(format!(
                    "{:?} is declared {dir:?} but is {:?}",
                    self.source, self.direction
                )));
            }
        }
        if let Some(lim) = limit {
            if *lim != self.limit {
                return Err(Error::InvalidDomain(format!(
                    "{:?} is declared to converge to {lim} but its limit is {}",
                    self.source, self.limit
                )));
            }
        }
        Ok(self)
    }

    pub fn form(&self) -> &ChainForm {
        &self.form
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn direction(&self) -> ChainDirection {
        self.direction
    }

    pub fn limit(&self) -> &Extended {
        &self.limit
    }

    /// The first [`MATERIALIZED_TERMS`] values.
    pub fn terms(&self) -> &[Rational] {
        &self.terms
    }

    pub fn first(&self) -> &Rational {
        &self.terms[0]
    }

    /// The `k`-th value, 1-based from the chain's start.
    pub fn term(&self, k: usize) -> Rational {
        assert!(k >= 1, "chain terms are 1-based");
        match self.terms.get(k - 1) {
            Some(v) => v.clone(),
            None => self
                .form
                .eval(&Rational::integer((self.start + k - 1) as i64))
                .expect("no pole in range"),
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        match self.form.preimage(v) {
            Some(n) => n.is_integer() && n >= Rational::integer(self.start as i64),
            None => false,
        }
    }
}

/// A finite set plus finitely many closed-form monotone chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityDomain {
    finite: BTreeSet<Rational>,
    chains: Vec<MonotoneChain>,
}

impl UtilityDomain {
    pub fn new(finite: impl IntoIterator<Item = Rational>, chains: Vec<MonotoneChain>) -> Result<Self> {
        let finite: BTreeSet<Rational> = finite.into_iter().collect();
        if finite.is_empty() && chains.is_empty() {
            return Err(Error::InvalidDomain("domain is empty".into()));
        }
        for v in &finite {
            if let Some(ch) = chains.iter().find(|ch| ch.contains(v)) {
                return Err(Error::InvalidDomain(format!(
                    "finite value {v} also lies on chain {:?}",
                    ch.source
                )));
            }
        }
        Ok(UtilityDomain { finite, chains })
    }

    pub fn finite_set(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        UtilityDomain::new(values, vec![])
    }

    /// `{0, 1, ..., n-1}`.
    pub fn integers_below(n: i64) -> Self {
        UtilityDomain::finite_set((0..n).map(Rational::integer)).expect("non-empty")
    }

    pub fn finite_part(&self) -> &BTreeSet<Rational> {
        &self.finite
    }

    pub fn chains(&self) -> &[MonotoneChain] {
        &self.chains
    }

    pub fn is_finite(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.finite.contains(v) || self.chains.iter().any(|ch| ch.contains(v))
    }

    /// Finite part plus the first `per_chain` terms of every chain, sorted.
    pub fn sample_values(&self, per_chain: usize) -> Vec<Rational> {
        let mut out: BTreeSet<Rational> = self.finite.clone();
        for ch in &self.chains {
            out.extend((1..=per_chain).map(|k| ch.term(k)));
        }
        out.into_iter().collect()
    }

    pub fn inf(&self) -> Extended {
        let mut best = self.attained_low().map(Extended::Finite).unwrap_or(Extended::PosInf);
        for ch in self.chains.iter().filter(|c| c.direction == ChainDirection::Decreasing) {
            best = best.min(ch.limit.clone());
        }
        best
    }

    pub fn sup(&self) -> Extended {
        let mut best = self.attained_high().map(Extended::Finite).unwrap_or(Extended::NegInf);
        for ch in self.chains.iter().filter(|c| c.direction == ChainDirection::Increasing) {
            best = best.max(ch.limit.clone());
        }
        best
    }

    /// First element, if the domain has one.
    pub fn min(&self) -> Option<Rational> {
        let low = self.attained_low()?;
        (Extended::Finite(low.clone()) <= self.inf()).then_some(low)
    }

    /// Last element, if the domain has one.
    pub fn max(&self) -> Option<Rational> {
        let high = self.attained_high()?;
        (Extended::Finite(high.clone()) >= self.sup()).then_some(high)
    }

    // Smallest value that is certainly attained: finite elements and the
    // first terms of increasing chains. Decreasing chains only approach
    // their limit from above.
    fn attained_low(&self) -> Option<Rational> {
        let firsts = self
            .chains
            .iter()
            .filter(|c| c.direction == ChainDirection::Increasing)
            .map(|c| c.first().clone());
        self.finite.iter().cloned().chain(firsts).min()
    }

    fn attained_high(&self) -> Option<Rational> {
        let firsts = self
            .chains
            .iter()
            .filter(|c| c.direction == ChainDirection::Decreasing)
            .map(|c| c.first().clone());
        self.finite.iter().cloned().chain(firsts).max()
    }
}

/// Result of the well-ordering test, with a descending chain when it fails.
#[derive(Debug, Clone)]
pub struct WellOrderCheck<'a> {
    pub well_ordered: bool,
    pub witness: Option<&'a MonotoneChain>,
}

/// A domain is well-ordered iff it has no decreasing chain.
pub fn is_well_ordered(y: &UtilityDomain) -> WellOrderCheck<'_> {
    let witness = y.chains.iter().find(|c| c.direction == ChainDirection::Decreasing);
    WellOrderCheck { well_ordered: witness.is_none(), witness }
}

#[derive(Debug, Clone)]
pub struct SigmaCheck<'a> {
    pub contains_sigma: bool,
    /// (decreasing chain, increasing chain) whose tails form a copy of the integers.
    pub witness: Option<(&'a MonotoneChain, &'a MonotoneChain)>,
}

pub fn contains_sigma_subset(y: &UtilityDomain) -> SigmaCheck<'_> {
    let (dec, inc): (Vec<_>, Vec<_>) =
        y.chains.iter().partition(|c| c.direction == ChainDirection::Decreasing);
    for d in &dec {
        for i in &inc {
            if d.limit < i.limit {
                return SigmaCheck { contains_sigma: true, witness: Some((d, i)) };
            }
        }
    }
    SigmaCheck { contains_sigma: false, witness: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum DomainClass {
    /// No infinite strictly decreasing sequence.
    WellOrdered,
    /// The whole domain has the order type of the negative integers.
    OmegaStar,
    /// Contains a copy of the integers.
    SigmaSubset,
    /// Contains a descending sequence but no copy of the integers, and is not
    /// itself of type `ω*`.
    OmegaStarNoSigma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: DomainClass,
    pub well_ordered: bool,
    pub contains_sigma: bool,
    pub min: Option<Rational>,
    pub max: Option<Rational>,
    pub inf: Extended,
    pub sup: Extended,
    pub descending_witness: Option<String>,
    pub sigma_witness: Option<(String, String)>,
}

pub fn classify(y: &UtilityDomain) -> Classification {
    let wo = is_well_ordered(y);
    let sigma = contains_sigma_subset(y);
    let class = if sigma.contains_sigma {
        DomainClass::SigmaSubset
    } else if wo.well_ordered {
        DomainClass::WellOrdered
    } else if is_omega_star(y) {
        DomainClass::OmegaStar
    } else {
        DomainClass::OmegaStarNoSigma
    };
    Classification {
        class,
        well_ordered: wo.well_ordered,
        contains_sigma: sigma.contains_sigma,
        min: y.min(),
        max: y.max(),
        inf: y.inf(),
        sup: y.sup(),
        descending_witness: wo.witness.map(|c| c.source.clone()),
        sigma_witness: sigma.witness.map(|(d, i)| (d.source.clone(), i.source.clone())),
    }
}

// Type ω*: infinite, and every element has finitely many elements above it.
// With only decreasing chains sharing one limit and every finite element above
// that limit, each cut from above meets finitely many terms of each chain.
fn is_omega_star(y: &UtilityDomain) -> bool {
    let mut limits = y.chains.iter().map(|c| {
        (c.direction == ChainDirection::Decreasing).then_some(&c.limit)
    });
    let Some(Some(first)) = limits.next() else {
        return false;
    };
    if !limits.all(|l| l == Some(first)) {
        return false;
    }
    y.finite.iter().all(|v| Extended::Finite(v.clone()) > *first)
}

/// Strictly increasing map `t -> (a·t + b) / (c·t + d)` applied to a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncreasingMap {
    form: ChainForm,
}

impl IncreasingMap {
    pub fn parse(src: &str) -> Result<Self> {
        IncreasingMap::new(ChainForm::parse(src)?)
    }

    pub fn new(form: ChainForm) -> Result<Self> {
        if !form.determinant().is_positive() {
            return Err(Error::NotMonotone(format!("{form} is not strictly increasing")));
        }
        Ok(IncreasingMap { form })
    }

    pub fn apply(&self, v: &Rational) -> Option<Rational> {
        self.form.eval(v)
    }
}

/// Image of `y` under `f`. The map's pole must lie outside the closed hull of `y`.
pub fn map_domain(y: &UtilityDomain, f: &IncreasingMap) -> Result<UtilityDomain> {
    if let Some(pole) = f.form.pole() {
        let p = Extended::Finite(pole.clone());
        let below = y.sup() < p;
        let above = y.inf() > p;
        if !(below || above) {
            return Err(Error::InvalidDomain(format!(
                "map {} has a pole at {pole}, within the domain's hull",
                f.form
            )));
        }
    }
    let finite = y
        .finite
        .iter()
        .map(|v| f.apply(v).expect("pole outside hull"))
        .collect::<Vec<_>>();
    let chains = y
        .chains
        .iter()
        .map(|c| {
            let form = c.form.then(&f.form)?;
            let src = form.to_string();
            MonotoneChain::from_form(form, src, c.start)
        })
        .collect::<Result<Vec<_>>>()?;
    UtilityDomain::new(finite, chains)
}
