//! Pairing functions and equity witnesses.
//!
//! A pairing function is a partial involution on the positive integers
//! without fixed points. It certifies a generalized-equity comparison when
//! every pair `{i, α(i)}` is a nested spread: one stream's two values lie
//! strictly inside the other's, e.g. `y_i < x_i < x_α(i) < y_α(i)`, in which
//! case `x` is the more equal stream and is preferred.

mod brute;
mod matching;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

pub use brute::{brute_force_witness, BRUTE_FORCE_MAX};
pub use search::find_witness;

use crate::axioms::AxiomTag;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::streams::{comparable, Stream};

/// Which stream a witness says is strictly preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Direction {
    /// `y ≺ x`: every pair of `x` is nested inside the matching pair of `y`.
    XOverY,
    /// `x ≺ y`.
    YOverX,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::XOverY => Direction::YOverX,
            Direction::YOverX => Direction::XOverY,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::XOverY => f.write_str("y < x"),
            Direction::YOverX => f.write_str("x < y"),
        }
    }
}

/// What `α(n)` is known to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    Unpaired,
    Paired(usize),
    /// In the domain, with a partner beyond every horizon the pairing describes.
    Open,
}

/// A partial involution on `{1, 2, ...}` given by a table on `[1, window]`.
///
/// Periodic pairings extend the table by `α(n) = α(n - p) + p` for
/// `n > window`. Table entries may point past the window; the extension has
/// to agree with them. Finite pairings are unpaired beyond the window except
/// for `open` indices, which are known to be paired with something too far
/// out to name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingFunction {
    table: Vec<Option<usize>>,
    period: Option<usize>,
    open: BTreeSet<usize>,
}

impl PairingFunction {
    pub fn empty() -> Self {
        PairingFunction { table: vec![], period: None, open: BTreeSet::new() }
    }

    pub fn finite(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let window = pairs.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
        PairingFunction::build(&pairs, window, None)
    }

    pub fn periodic(
        pairs: impl IntoIterator<Item = (usize, usize)>,
        window: usize,
        period: usize,
    ) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        PairingFunction::build(&pairs, window, Some(period))
    }

    /// Marks indices as paired with partners beyond any finite horizon.
    pub fn with_open(mut self, open: impl IntoIterator<Item = usize>) -> Result<Self> {
        if self.period.is_some() {
            return Err(Error::InvalidPairing("open indices need a finite pairing".into()));
        }
        for n in open {
            if n == 0 || self.partner(n) != Partner::Unpaired {
                return Err(Error::InvalidPairing(format!("open index {n} is already paired")));
            }
            self.open.insert(n);
        }
        Ok(self)
    }

    fn build(pairs: &[(usize, usize)], window: usize, period: Option<usize>) -> Result<Self> {
        let mut table = vec![None; window];
        for &(i, j) in pairs {
            if i == 0 || j == 0 {
                return Err(Error::InvalidPairing("indices are 1-based".into()));
            }
            if i == j {
                return Err(Error::InvalidPairing(format!("{i} is paired with itself")));
            }
            for (a, b) in [(i, j), (j, i)] {
                if a <= window {
                    if table[a - 1].is_some() {
                        return Err(Error::InvalidPairing(format!("{a} appears in two pairs")));
                    }
                    table[a - 1] = Some(b);
                }
            }
            if i > window && j > window {
                return Err(Error::InvalidPairing(format!(
                    "pair ({i}, {j}) lies entirely beyond window {window}"
                )));
            }
        }
        let alpha = PairingFunction { table, period, open: BTreeSet::new() };
        if let Some(p) = period {
            if p == 0 || p > window {
                return Err(Error::InvalidPairing(format!(
                    "period {p} must lie in [1, window = {window}]"
                )));
            }
            for &(i, j) in pairs {
                for (a, b) in [(i, j), (j, i)] {
                    if a > window && alpha.partner(a) != Partner::Paired(b) {
                        return Err(Error::InvalidPairing(format!(
                            "pair ({i}, {j}) disagrees with the periodic extension"
                        )));
                    }
                }
            }
            let horizon = window + alpha.max_displacement() + p;
            for n in 1..=horizon {
                if let Partner::Paired(m) = alpha.partner(n) {
                    if m == n {
                        return Err(Error::InvalidPairing(format!("{n} is a fixed point")));
                    }
                    if alpha.partner(m) != Partner::Paired(n) {
                        return Err(Error::InvalidPairing(format!(
                            "α({n}) = {m} but α({m}) is not {n}"
                        )));
                    }
                }
            }
        } else if pairs.iter().any(|&(i, j)| i.max(j) > window) {
            return Err(Error::InvalidPairing("finite pairs must lie inside the window".into()));
        }
        Ok(alpha)
    }

    pub fn partner(&self, n: usize) -> Partner {
        if n == 0 {
            return Partner::Unpaired;
        }
        if self.open.contains(&n) {
            return Partner::Open;
        }
        let w = self.table.len();
        if n <= w {
            return self.table[n - 1].map_or(Partner::Unpaired, Partner::Paired);
        }
        match self.period {
            Some(p) => {
                let shift = (n - w).div_ceil(p) * p;
                match self.table[n - shift - 1] {
                    Some(m) => Partner::Paired(m + shift),
                    None => Partner::Unpaired,
                }
            }
            None => Partner::Unpaired,
        }
    }

    pub fn in_domain(&self, n: usize) -> bool {
        self.partner(n) != Partner::Unpaired
    }

    pub fn window(&self) -> usize {
        self.table.len()
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    pub fn open(&self) -> &BTreeSet<usize> {
        &self.open
    }

    /// `max |α(n) - n|` over the table.
    pub fn max_displacement(&self) -> usize {
        self.table
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|m| m.abs_diff(i + 1)))
            .max()
            .unwrap_or(0)
    }

    /// Whether `dom(α)` is infinite. Open indices count as finitely many.
    pub fn has_infinite_domain(&self) -> bool {
        match self.period {
            Some(p) => {
                let w = self.table.len();
                self.table[w - p..].iter().any(Option::is_some)
            }
            None => false,
        }
    }

    /// Whether `dom(α)` is every positive integer.
    pub fn is_total(&self) -> bool {
        self.period.is_some() && self.table.iter().all(Option::is_some)
    }

    /// Pairs `(i, j)` with `i < j <= limit`.
    pub fn pairs_up_to(&self, limit: usize) -> Vec<(usize, usize)> {
        (1..=limit)
            .filter_map(|i| match self.partner(i) {
                Partner::Paired(j) if i < j && j <= limit => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// Pairs meeting the table, each listed once as `(min, max)`.
    pub fn defining_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (i, m) in self.table.iter().enumerate() {
            if let Some(m) = *m {
                out.insert(((i + 1).min(m), (i + 1).max(m)));
            }
        }
        out.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum WitnessStatus {
    /// Checked exhaustively: the streams and the pairing repeat with a common period.
    VerifiedPeriodic,
    /// Every coordinate up to the given depth is consistent with the witness.
    VerifiedToDepth(usize),
    /// The search found nothing within the given depth.
    NoWitnessToDepth(usize),
    Invalid(String),
}

impl WitnessStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, WitnessStatus::VerifiedPeriodic | WitnessStatus::VerifiedToDepth(_))
    }
}

impl fmt::Display for WitnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessStatus::VerifiedPeriodic => f.write_str("verified (periodic)"),
            WitnessStatus::VerifiedToDepth(t) => write!(f, "verified to depth {t}"),
            WitnessStatus::NoWitnessToDepth(t) => write!(f, "no witness to depth {t}"),
            WitnessStatus::Invalid(why) => write!(f, "invalid: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub axiom: AxiomTag,
    pub direction: Option<Direction>,
    pub pairing: Option<PairingFunction>,
    pub status: WitnessStatus,
}

impl WitnessReport {
    pub fn is_verified(&self) -> bool {
        self.status.is_verified()
    }

    pub(crate) fn invalid(axiom: AxiomTag, pairing: Option<PairingFunction>, why: String) -> Self {
        WitnessReport { axiom, direction: None, pairing, status: WitnessStatus::Invalid(why) }
    }
}

/// Orientation of a single pair, if it is a nested spread.
///
/// `exact` additionally demands a Pigou-Dalton transfer: the two moves have
/// the same size.
pub(crate) fn pair_orientation(
    xi: &Rational,
    yi: &Rational,
    xj: &Rational,
    yj: &Rational,
    exact: bool,
) -> Option<Direction> {
    // `inner` nested strictly inside `outer` on the pair (i, j).
    let nested = |ii: &Rational, oi: &Rational, ij: &Rational, oj: &Rational| {
        let up = oi < ii && ii < ij && ij < oj && (!exact || ii - oi == oj - ij);
        let down = oj < ij && ij < ii && ii < oi && (!exact || ij - oj == oi - ii);
        up || down
    };
    if nested(xi, yi, xj, yj) {
        Some(Direction::XOverY)
    } else if nested(yi, xi, yj, xj) {
        Some(Direction::YOverX)
    } else {
        None
    }
}

/// Checks a proposed witness against the axiom's definition.
///
/// Eventually periodic inputs are checked over a range after which streams
/// and pairing repeat together, so success is exhaustive. Truncated inputs
/// are checked up to their depth: complete pairs must be nested spreads,
/// pairs reaching past the depth must at least disagree at their visible end,
/// and unpaired coordinates must agree. An infinite domain cannot be
/// observed on a truncation, so `IE` is checked like `GE` there.
pub fn validate(
    alpha: &PairingFunction,
    x: &Stream,
    y: &Stream,
    axiom: AxiomTag,
) -> Result<WitnessReport> {
    if !axiom.has_pairing_witness() {
        return Err(Error::BadParameter(format!("{axiom} has no pairing witness")));
    }
    let pair = comparable(x, y)?;
    let fail = |why: String| Ok(WitnessReport::invalid(axiom, Some(alpha.clone()), why));
    let (range, status, depth) = if pair.is_periodic() {
        if !alpha.open.is_empty() {
            return fail("open indices cannot be checked against periodic streams".into());
        }
        let joint = alpha.period.unwrap_or(1).lcm(&pair.period_len());
        let range = alpha.window().max(pair.pre_len() + alpha.max_displacement()) + joint;
        (range, WitnessStatus::VerifiedPeriodic, None)
    } else {
        let t = pair.exhaustive_len();
        (t, WitnessStatus::VerifiedToDepth(t), Some(t))
    };
    let exact = matches!(axiom, AxiomTag::GPD | AxiomTag::PD);
    let (x, y) = (&pair.x, &pair.y);
    let mut direction: Option<Direction> = None;
    let mut complete = 0usize;
    let mut dangling = 0usize;
    for n in 1..=range {
        let (xn, yn) = (x.coordinate(n)?, y.coordinate(n)?);
        match alpha.partner(n) {
            Partner::Unpaired => {
                if axiom == AxiomTag::WE {
                    return fail(format!("coordinate {n} is outside the pairing's domain"));
                }
                if xn != yn {
                    return fail(format!("coordinate {n} differs ({xn} vs {yn}) but is unpaired"));
                }
            }
            Partner::Open => {
                dangling += 1;
                if xn == yn {
                    return fail(format!("coordinate {n} is paired but both streams equal {xn}"));
                }
            }
            Partner::Paired(m) if depth.is_some_and(|t| m > t) => {
                dangling += 1;
                if xn == yn {
                    return fail(format!("coordinate {n} is paired but both streams equal {xn}"));
                }
            }
            Partner::Paired(m) if n < m => {
                let (xm, ym) = (x.coordinate(m)?, y.coordinate(m)?);
                let Some(dir) = pair_orientation(xn, yn, xm, ym, exact) else {
                    let kind = if exact { "an exact transfer" } else { "a nested spread" };
                    return fail(format!(
                        "pair ({n}, {m}) is not {kind}: x = ({xn}, {xm}), y = ({yn}, {ym})"
                    ));
                };
                match direction {
                    None => direction = Some(dir),
                    Some(d) if d != dir => {
                        return fail(format!("pair ({n}, {m}) points the other way ({dir})"));
                    }
                    _ => {}
                }
                complete += 1;
            }
            Partner::Paired(_) => {}
        }
    }
    if complete == 0 {
        return fail("no complete pair within range".into());
    }
    match axiom {
        AxiomTag::PD | AxiomTag::SE => {
            if complete != 1 || dangling != 0 || alpha.has_infinite_domain() {
                return fail(format!("{axiom} needs exactly one pair of differing coordinates"));
            }
        }
        AxiomTag::IE if depth.is_none() && !alpha.has_infinite_domain() => {
            return fail("IE needs an infinite domain".into());
        }
        _ => {}
    }
    Ok(WitnessReport { axiom, direction, pairing: Some(alpha.clone()), status })
}
