//! Finite presentations of infinite utility streams.
//!
//! A [`Stream`] is either eventually periodic (a preperiod followed by an
//! endlessly repeated period) or an explicit truncation to a fixed depth.
//! Coordinates are 1-based generation numbers. A truncation never
//! extrapolates: asking for a coordinate beyond its depth is an error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum StreamKind {
    EventuallyPeriodic,
    Truncated,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Periodic { pre: Vec<Rational>, period: Vec<Rational> },
    Truncated { values: Vec<Rational> },
}

/// An infinite utility stream `x = <x_1, x_2, ...>`.
///
/// Equality is structural: two eventually periodic streams with the same
/// coordinates but different presentations compare unequal. Use
/// [`Stream::same_coordinates`] for semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Stream {
    repr: Repr,
    provenance: Option<String>,
}

impl Stream {
    pub fn periodic(pre: Vec<Rational>, period: Vec<Rational>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidStream("period must be non-empty".into()));
        }
        Ok(Stream { repr: Repr::Periodic { pre, period }, provenance: None })
    }

    pub fn constant(value: Rational) -> Self {
        Stream { repr: Repr::Periodic { pre: vec![], period: vec![value] }, provenance: None }
    }

    pub fn truncated(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidStream("truncation depth must be positive".into()));
        }
        Ok(Stream { repr: Repr::Truncated { values }, provenance: None })
    }

    /// Materializes the first `depth` coordinates of `rule(t)`.
    pub fn from_rule(depth: usize, rule: impl FnMut(usize) -> Rational) -> Result<Self> {
        Stream::truncated((1..=depth).map(rule).collect())
    }

    pub fn with_provenance(mut self, tag: impl Into<String>) -> Self {
        self.provenance = Some(tag.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn kind(&self) -> StreamKind {
        match self.repr {
            Repr::Periodic { .. } => StreamKind::EventuallyPeriodic,
            Repr::Truncated { .. } => StreamKind::Truncated,
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.repr, Repr::Periodic { .. })
    }

    /// Preperiod of an eventually periodic stream; the full value list of a truncation.
    pub fn pre(&self) -> &[Rational] {
        match &self.repr {
            Repr::Periodic { pre, .. } => pre,
            Repr::Truncated { values } => values,
        }
    }

    /// Period of an eventually periodic stream; empty for truncations.
    pub fn period(&self) -> &[Rational] {
        match &self.repr {
            Repr::Periodic { period, .. } => period,
            Repr::Truncated { .. } => &[],
        }
    }

    /// Truncation depth, `None` for eventually periodic streams.
    pub fn depth(&self) -> Option<usize> {
        match &self.repr {
            Repr::Periodic { .. } => None,
            Repr::Truncated { values } => Some(values.len()),
        }
    }

    /// Coordinates that determine the whole stream: preperiod plus one
    /// period, or every coordinate of a truncation.
    pub fn defining_len(&self) -> usize {
        match &self.repr {
            Repr::Periodic { pre, period } => pre.len() + period.len(),
            Repr::Truncated { values } => values.len(),
        }
    }

    pub fn coordinate(&self, t: usize) -> Result<&Rational> {
        if t == 0 {
            return Err(Error::BadParameter("coordinates are 1-based".into()));
        }
        match &self.repr {
            Repr::Periodic { pre, period } => {
                if t <= pre.len() {
                    Ok(&pre[t - 1])
                } else {
                    Ok(&period[(t - pre.len() - 1) % period.len()])
                }
            }
            Repr::Truncated { values } => values
                .get(t - 1)
                .ok_or(Error::OutOfDepth { index: t, depth: values.len() }),
        }
    }

    /// `x[n] = <x_1, ..., x_n>`.
    pub fn prefix(&self, n: usize) -> Result<Vec<Rational>> {
        (1..=n).map(|t| self.coordinate(t).cloned()).collect()
    }

    /// Explicit truncation to `depth` coordinates.
    pub fn truncate(&self, depth: usize) -> Result<Stream> {
        let mut s = Stream::truncated(self.prefix(depth)?)?;
        s.provenance = self.provenance.clone();
        Ok(s)
    }

    /// Every value the stream takes (finite for both representations).
    pub fn value_set(&self) -> BTreeSet<&Rational> {
        match &self.repr {
            Repr::Periodic { pre, period } => pre.iter().chain(period).collect(),
            Repr::Truncated { values } => values.iter().collect(),
        }
    }

    /// Values taken infinitely often (the period), or `None` for truncations.
    pub fn recurring_values(&self) -> Option<BTreeSet<&Rational>> {
        match &self.repr {
            Repr::Periodic { period, .. } => Some(period.iter().collect()),
            Repr::Truncated { .. } => None,
        }
    }

    /// Indices `t` with `pred(x_t)`, exact for eventually periodic streams,
    /// restricted to the depth for truncations.
    pub fn positions_where(&self, mut pred: impl FnMut(&Rational) -> bool) -> PeriodicIndexSet {
        match &self.repr {
            Repr::Periodic { pre, period } => {
                let explicit = (1..=pre.len()).filter(|&t| pred(&pre[t - 1])).collect();
                let p = period.len();
                let residues = (pre.len() + 1..=pre.len() + p)
                    .filter(|&t| pred(&period[t - pre.len() - 1]))
                    .map(|t| t % p)
                    .collect();
                PeriodicIndexSet { explicit, offset: pre.len(), period: p, residues }
            }
            Repr::Truncated { values } => PeriodicIndexSet::finite(
                (1..=values.len()).filter(|&t| pred(&values[t - 1])),
            ),
        }
    }

    /// Semantic equality: same coordinates everywhere (or to the common depth
    /// for two truncations of equal depth).
    pub fn same_coordinates(&self, other: &Stream) -> bool {
        match comparable(self, other) {
            Ok(pair) => pair.x.pre() == pair.y.pre() && pair.x.period() == pair.y.period(),
            Err(_) => false,
        }
    }

    fn map_values(&self, mut f: impl FnMut(&Rational) -> Result<Rational>) -> Result<Stream> {
        let repr = match &self.repr {
            Repr::Periodic { pre, period } => Repr::Periodic {
                pre: pre.iter().map(&mut f).collect::<Result<_>>()?,
                period: period.iter().map(&mut f).collect::<Result<_>>()?,
            },
            Repr::Truncated { values } => {
                Repr::Truncated { values: values.iter().map(&mut f).collect::<Result<_>>()? }
            }
        };
        Ok(Stream { repr, provenance: self.provenance.clone() })
    }
}

impl fmt::Debug for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
        match &self.repr {
            Repr::Periodic { pre, period } => write!(f, "EP[{}]({})", join(pre), join(period))?,
            Repr::Truncated { values } if values.len() <= 16 => {
                write!(f, "Trunc<{}>", join(values))?
            }
            Repr::Truncated { values } => {
                write!(f, "Trunc<{}, ...; depth {}>", join(&values[..16]), values.len())?
            }
        }
        if let Some(p) = &self.provenance {
            write!(f, " @{p}")?;
        }
        Ok(())
    }
}

/// Index set of the form `explicit ∪ {t > offset : t mod period ∈ residues}`.
///
/// Explicit members lie in `[1, offset]`; residues are actual remainders
/// `t mod period`, so "all t" with period 2 is residues `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicIndexSet {
    explicit: BTreeSet<usize>,
    offset: usize,
    period: usize,
    residues: BTreeSet<usize>,
}

impl PeriodicIndexSet {
    pub fn new(
        explicit: impl IntoIterator<Item = usize>,
        offset: usize,
        period: usize,
        residues: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::BadParameter("index-set period must be positive".into()));
        }
        let explicit: BTreeSet<usize> = explicit.into_iter().collect();
        if let Some(&t) = explicit.iter().find(|&&t| t == 0 || t > offset) {
            return Err(Error::BadParameter(format!(
                "explicit index {t} must lie in [1, {offset}]"
            )));
        }
        let residues: BTreeSet<usize> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::BadParameter(format!("residue {r} is not below period {period}")));
        }
        Ok(PeriodicIndexSet { explicit, offset, period, residues })
    }

    pub fn finite(indices: impl IntoIterator<Item = usize>) -> Self {
        let explicit: BTreeSet<usize> = indices.into_iter().filter(|&t| t > 0).collect();
        let offset = explicit.iter().next_back().copied().unwrap_or(0);
        PeriodicIndexSet { explicit, offset, period: 1, residues: BTreeSet::new() }
    }

    pub fn empty() -> Self {
        PeriodicIndexSet::finite(std::iter::empty())
    }

    pub fn explicit(&self) -> &BTreeSet<usize> {
        &self.explicit
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residues(&self) -> &BTreeSet<usize> {
        &self.residues
    }

    pub fn contains(&self, t: usize) -> bool {
        if t <= self.offset {
            self.explicit.contains(&t)
        } else {
            self.residues.contains(&(t % self.period))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.explicit.is_empty() && self.residues.is_empty()
    }

    /// True when every `t >= 1` is a member.
    pub fn is_everything(&self) -> bool {
        self.explicit.len() == self.offset && self.residues.len() == self.period
    }

    pub fn iter_up_to(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=n).filter(move |&t| self.contains(t))
    }

    /// First member of each residue class beyond the offset.
    pub(crate) fn periodic_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let start = self.offset + 1;
        self.residues.iter().map(move |&r| {
            let shift = (r + self.period - start % self.period) % self.period;
            start + shift
        })
    }
}

/// Two streams brought to a common frame: both eventually periodic with
/// equal preperiod and period lengths, or both truncated to the same depth.
#[derive(Clone, Debug)]
pub struct ComparablePair {
    pub x: Stream,
    pub y: Stream,
}

impl ComparablePair {
    /// Coordinates `1..=len` determine both streams completely.
    pub fn exhaustive_len(&self) -> usize {
        self.x.defining_len()
    }

    pub fn is_periodic(&self) -> bool {
        self.x.is_periodic()
    }

    pub fn pre_len(&self) -> usize {
        if self.x.is_periodic() {
            self.x.pre().len()
        } else {
            self.x.defining_len()
        }
    }

    pub fn period_len(&self) -> usize {
        self.x.period().len()
    }
}

/// Aligns two eventually periodic streams, checks equal depth for two
/// truncations, and truncates a periodic stream to the depth of a truncated
/// partner.
pub fn comparable(x: &Stream, y: &Stream) -> Result<ComparablePair> {
    match (x.depth(), y.depth()) {
        (None, None) => {
            let (x, y) = align(x, y)?;
            Ok(ComparablePair { x, y })
        }
        (Some(a), Some(b)) if a != b => Err(Error::DepthMismatch { left: a, right: b }),
        (Some(_), Some(_)) => Ok(ComparablePair { x: x.clone(), y: y.clone() }),
        (Some(d), None) => Ok(ComparablePair { x: x.clone(), y: y.truncate(d)? }),
        (None, Some(d)) => Ok(ComparablePair { x: x.truncate(d)?, y: y.clone() }),
    }
}

pub fn coordinate(x: &Stream, t: usize) -> Result<Rational> {
    x.coordinate(t).cloned()
}

/// Reshapes two eventually periodic streams to a common preperiod length
/// `max(|pre_x|, |pre_y|)` and period length `lcm(|per_x|, |per_y|)`.
pub fn align(x: &Stream, y: &Stream) -> Result<(Stream, Stream)> {
    if !x.is_periodic() || !y.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    let pre = x.pre().len().max(y.pre().len());
    let period = x.period().len().lcm(&y.period().len());
    let reshape = |s: &Stream| -> Result<Stream> {
        let values = s.prefix(pre + period)?;
        let (p, q) = values.split_at(pre);
        let mut out = Stream::periodic(p.to_vec(), q.to_vec())?;
        out.provenance = s.provenance.clone();
        Ok(out)
    };
    Ok((reshape(x)?, reshape(y)?))
}

/// `D = {t : x_t != y_t}`.
pub fn difference_set(x: &Stream, y: &Stream) -> Result<PeriodicIndexSet> {
    let pair = comparable(x, y)?;
    Ok(pair_difference(&pair))
}

pub(crate) fn pair_difference(pair: &ComparablePair) -> PeriodicIndexSet {
    let (x, y) = (&pair.x, &pair.y);
    if pair.is_periodic() {
        let pre = x.pre().len();
        let p = x.period().len();
        let explicit = (1..=pre).filter(|&t| x.pre()[t - 1] != y.pre()[t - 1]);
        let residues = (pre + 1..=pre + p)
            .filter(|&t| x.period()[t - pre - 1] != y.period()[t - pre - 1])
            .map(|t| t % p);
        PeriodicIndexSet::new(explicit, pre, p, residues).expect("aligned frame")
    } else {
        PeriodicIndexSet::finite((1..=x.defining_len()).filter(|&t| x.pre()[t - 1] != y.pre()[t - 1]))
    }
}

/// True iff `y` is obtained from `x` by a finite permutation of coordinates:
/// finitely many disagreements, and the disagreeing coordinates carry the
/// same multiset of values.
pub fn is_finite_permutation(x: &Stream, y: &Stream) -> Result<bool> {
    let pair = comparable(x, y)?;
    let d = pair_difference(&pair);
    if !d.is_finite() {
        return Ok(false);
    }
    let mut balance: BTreeMap<&Rational, i64> = BTreeMap::new();
    for t in d.explicit() {
        *balance.entry(pair.x.coordinate(*t)?).or_default() += 1;
        *balance.entry(pair.y.coordinate(*t)?).or_default() -= 1;
    }
    Ok(balance.values().all(|&c| c == 0))
}

/// `x >= y` coordinate-wise.
pub fn dominates(x: &Stream, y: &Stream) -> Result<bool> {
    let pair = comparable(x, y)?;
    for t in 1..=pair.exhaustive_len() {
        if pair.x.coordinate(t)? < pair.y.coordinate(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A strictly monotone map given as a finite table over a value set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    table: BTreeMap<Rational, Rational>,
    direction: Monotonicity,
}

impl MonotoneMap {
    pub fn new(table: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let table: BTreeMap<Rational, Rational> = table.into_iter().collect();
        let images: Vec<&Rational> = table.values().collect();
        let increasing = images.windows(2).all(|w| w[0] < w[1]);
        let decreasing = images.windows(2).all(|w| w[0] > w[1]);
        let direction = match (increasing, decreasing) {
            (true, _) => Monotonicity::Increasing,
            (false, true) => Monotonicity::Decreasing,
            (false, false) => {
                let bad = table
                    .iter()
                    .zip(table.iter().skip(1))
                    .find(|((_, a), (_, b))| a == b)
                    .map(|((k1, _), (k2, _))| format!("{k1} and {k2} share an image"))
                    .unwrap_or_else(|| "images change direction".into());
                return Err(Error::NotMonotone(bad));
            }
        };
        Ok(MonotoneMap { table, direction })
    }

    /// Tabulates `f` over `values`.
    pub fn from_fn<'a>(
        values: impl IntoIterator<Item = &'a Rational>,
        f: impl Fn(&Rational) -> Rational,
    ) -> Result<Self> {
        MonotoneMap::new(values.into_iter().map(|v| (v.clone(), f(v))))
    }

    pub fn direction(&self) -> Monotonicity {
        self.direction
    }

    pub fn apply(&self, v: &Rational) -> Result<Rational> {
        self.table.get(v).cloned().ok_or_else(|| Error::MissingValue(v.clone()))
    }
}

/// Coordinate-wise image `f ∘ x`, keeping the stream's shape.
pub fn map_stream(f: &MonotoneMap, x: &Stream) -> Result<Stream> {
    x.map_values(|v| f.apply(v))
}
