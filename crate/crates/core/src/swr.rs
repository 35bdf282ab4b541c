//! Filter-leximin comparison over the co-finite filter.
//!
//! `x ≤ y` when the sorted prefixes satisfy `x̄[n] ≤_lex ȳ[n]` for all but
//! finitely many `n`. The relation is not total; pairs whose prefix
//! comparisons keep changing sign are incomparable.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::streams::{comparable, ComparablePair, Stream};

pub const DEFAULT_DEPTH: usize = 400;
pub const DEFAULT_WINDOW: usize = 100;

/// How `x` relates to `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    StrictlyLess,
    Equivalent,
    StrictlyGreater,
    Incomparable,
    Undetermined,
}

impl Relation {
    pub fn reversed(self) -> Relation {
        match self {
            Relation::StrictlyLess => Relation::StrictlyGreater,
            Relation::StrictlyGreater => Relation::StrictlyLess,
            r => r,
        }
    }

    pub fn is_definite(self) -> bool {
        self != Relation::Undetermined
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonVerdict {
    pub relation: Relation,
    /// Least `n0` such that every `s_n` with `n >= n0` agrees weakly with
    /// the relation.
    pub stabilization: Option<usize>,
    /// Least period of the sign pattern of an incomparable pair.
    pub oscillation_period: Option<usize>,
    /// The sign sequence was proved periodic from `stabilization` on, so the
    /// relation holds for the infinite streams.
    pub certified: bool,
    /// One repetition of the eventual sign pattern (`<`, `=`, `>` for
    /// `x̄[n]` against `ȳ[n]`), or the window's tail when not certified.
    pub pattern: String,
    /// Number of prefix comparisons computed.
    pub depth: usize,
    pub window: usize,
}

/// `x̄[n]`: the first `n` coordinates in non-decreasing order.
pub fn sorted_prefix(x: &Stream, n: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::BadParameter("prefix length must be positive".into()));
    }
    let mut v = x.prefix(n)?;
    v.sort();
    Ok(v)
}

/// Lexicographic comparison of sorted prefixes of equal length.
pub fn lex_compare(a: &[Rational], b: &[Rational]) -> Ordering {
    a.cmp(b)
}

fn symbol(o: Ordering) -> char {
    match o {
        Ordering::Less => '<',
        Ordering::Equal => '=',
        Ordering::Greater => '>',
    }
}

// Running sign of `x̄[n]` against `ȳ[n]`: the first value `v` at which the
// counts of coordinates `<= v` differ decides, more of them in `x` meaning
// `x̄[n]` is lexicographically smaller.
struct Tracker {
    ranks: BTreeMap<Rational, usize>,
    balance: Vec<i64>,
    cumulative: Vec<i64>,
}

impl Tracker {
    fn new<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let ranks: BTreeMap<Rational, usize> =
            values.into_iter().cloned().collect::<std::collections::BTreeSet<_>>().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = ranks.len();
        Tracker { ranks, balance: vec![0; n], cumulative: vec![0; n] }
    }

    fn push(&mut self, xv: &Rational, yv: &Rational) -> Ordering {
        self.balance[self.ranks[xv]] += 1;
        self.balance[self.ranks[yv]] -= 1;
        let mut acc = 0;
        let mut sign = Ordering::Equal;
        for (b, c) in self.balance.iter().zip(self.cumulative.iter_mut()) {
            acc += b;
            *c = acc;
            if sign == Ordering::Equal && acc != 0 {
                sign = if acc > 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        sign
    }
}

/// Compares `x` with `y` under the co-finite filter.
///
/// Eventually periodic pairs are decided exactly. With preperiod `P` and
/// period `q` after alignment, the cumulative count difference at value `v`
/// grows by a fixed drift `δ_v` per period. Once every drifting difference
/// has the sign of its drift for `q` consecutive `n` past `P`, it keeps that
/// sign, the non-drifting ones just repeat, and the sign sequence is periodic
/// from there. The computation runs past `depth` when needed.
///
/// Truncations are judged on the window `[window, depth]`: all `=` is
/// equivalence, one-sided signs with a strict sign in the second half of the
/// window are strict preference, a repeating pattern with both signs is
/// incomparability, and anything else is undetermined.
pub fn filter_compare(x: &Stream, y: &Stream, depth: usize, window: usize) -> Result<ComparisonVerdict> {
    if window == 0 || window >= depth {
        return Err(Error::BadParameter(format!(
            "window {window} must be positive and below depth {depth}"
        )));
    }
    let pair = comparable(x, y)?;
    if pair.is_periodic() {
        periodic_verdict(&pair, depth, window)
    } else {
        if pair.exhaustive_len() < depth {
            return Err(Error::OutOfDepth { index: depth, depth: pair.exhaustive_len() });
        }
        window_verdict(&pair, depth, window)
    }
}

fn periodic_verdict(pair: &ComparablePair, depth: usize, window: usize) -> Result<ComparisonVerdict> {
    let (pre, q) = (pair.pre_len(), pair.period_len());
    let mut tracker = Tracker::new(pair.x.value_set().into_iter().chain(pair.y.value_set()));
    let mut drift = vec![0i64; tracker.ranks.len()];
    for (xv, yv) in pair.x.period().iter().zip(pair.y.period()) {
        drift[tracker.ranks[xv]] += 1;
        drift[tracker.ranks[yv]] -= 1;
    }
    let mut acc = 0;
    for d in drift.iter_mut() {
        acc += *d;
        *d = acc;
    }
    // Each drifting difference needs at most |D| / |δ| + 1 periods to turn,
    // with |D| <= pre + q.
    let limit = pre + (pre + q + 3) * q + q;
    let mut signs = Vec::new();
    let mut run = 0;
    let mut start = None;
    let mut n = 0;
    while n < depth || start.is_none() {
        n += 1;
        if n > limit.max(depth) {
            return Err(Error::BadParameter("sign sequence did not settle".into()));
        }
        signs.push(tracker.push(pair.x.coordinate(n)?, pair.y.coordinate(n)?));
        if start.is_some() || n <= pre {
            continue;
        }
        let settled = drift
            .iter()
            .zip(&tracker.cumulative)
            .all(|(&d, &c)| d == 0 || c.signum() == d.signum());
        run = if settled { run + 1 } else { 0 };
        if run == q {
            start = Some(n + 1 - q);
        }
    }
    let start = start.unwrap_or(1);
    let block = &signs[start - 1..start - 1 + q];
    let pattern: String = block.iter().map(|&o| symbol(o)).collect();
    let has = |o: Ordering| block.contains(&o);
    let relation = match (has(Ordering::Less), has(Ordering::Greater)) {
        (true, true) => Relation::Incomparable,
        (true, false) => Relation::StrictlyLess,
        (false, true) => Relation::StrictlyGreater,
        (false, false) => Relation::Equivalent,
    };
    Ok(ComparisonVerdict {
        relation,
        stabilization: stabilization(&signs, relation),
        oscillation_period: (relation == Relation::Incomparable).then(|| least_period(block)),
        certified: true,
        pattern,
        depth: signs.len(),
        window,
    })
}

fn window_verdict(pair: &ComparablePair, depth: usize, window: usize) -> Result<ComparisonVerdict> {
    let xs = pair.x.prefix(depth)?;
    let ys = pair.y.prefix(depth)?;
    let mut tracker = Tracker::new(xs.iter().chain(&ys));
    let signs: Vec<Ordering> = xs.iter().zip(&ys).map(|(a, b)| tracker.push(a, b)).collect();
    let seen = &signs[window - 1..];
    let tail = &seen[seen.len() / 2..];
    let any = |s: &[Ordering], o: Ordering| s.contains(&o);
    let mut oscillation_period = None;
    let relation = match (any(seen, Ordering::Less), any(seen, Ordering::Greater)) {
        (false, false) => Relation::Equivalent,
        (true, false) if any(tail, Ordering::Less) => Relation::StrictlyLess,
        (false, true) if any(tail, Ordering::Greater) => Relation::StrictlyGreater,
        (true, true) => {
            let p = least_period(tail);
            let block = &tail[..p];
            if 2 * p <= tail.len() && block.contains(&Ordering::Less) && block.contains(&Ordering::Greater) {
                oscillation_period = Some(p);
                Relation::Incomparable
            } else {
                Relation::Undetermined
            }
        }
        _ => Relation::Undetermined,
    };
    let shown = oscillation_period.unwrap_or(tail.len().min(24));
    let pattern: String = signs[signs.len() - shown..].iter().map(|&o| symbol(o)).collect();
    Ok(ComparisonVerdict {
        relation,
        stabilization: stabilization(&signs, relation),
        oscillation_period,
        certified: false,
        pattern,
        depth,
        window,
    })
}

fn least_period(s: &[Ordering]) -> usize {
    (1..=s.len()).find(|&p| (p..s.len()).all(|i| s[i] == s[i - p])).unwrap_or(s.len())
}

fn stabilization(signs: &[Ordering], relation: Relation) -> Option<usize> {
    let bad = match relation {
        Relation::StrictlyLess => |o: &Ordering| *o == Ordering::Greater,
        Relation::StrictlyGreater => |o: &Ordering| *o == Ordering::Less,
        Relation::Equivalent => |o: &Ordering| *o != Ordering::Equal,
        _ => return None,
    };
    Some(signs.iter().rposition(bad).map_or(1, |i| i + 2))
}

/// A social welfare relation with a name, for audits and the CLI.
pub trait WelfareRelation {
    fn name(&self) -> String;
    fn compare(&self, x: &Stream, y: &Stream) -> Result<ComparisonVerdict>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leximin {
    pub depth: usize,
    pub window: usize,
}

impl Default for Leximin {
    fn default() -> Self {
        Leximin { depth: DEFAULT_DEPTH, window: DEFAULT_WINDOW }
    }
}

impl WelfareRelation for Leximin {
    fn name(&self) -> String {
        "leximin".into()
    }

    fn compare(&self, x: &Stream, y: &Stream) -> Result<ComparisonVerdict> {
        filter_compare(x, y, self.depth, self.window)
    }
}
