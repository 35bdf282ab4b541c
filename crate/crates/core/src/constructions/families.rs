//! Stream families indexed by a rational `r`, one per impossibility theorem.
//!
//! Each family comes with a construction for a pair `r < s` whose claims form
//! a chain from `x(r)` back above `x(s)`, verified at a finite depth.

use std::collections::BTreeSet;

use super::verify::{Check, Claim, NamedExample};
use super::{check_unit, partition, IndexPartition, RationalEnumeration};
use crate::axioms::AxiomTag;
use crate::error::{Error, Result};
use crate::pairing::{Direction, PairingFunction};
use crate::rational::Rational;
use crate::streams::Stream;

// Largest block index scanned when working out how much depth is needed.
const PLAN_LIMIT: usize = 1 << 20;

fn check_values(values: &[Rational], count: usize) -> Result<()> {
    if values.len() != count {
        return Err(Error::BadParameter(format!(
            "expected {count} values, got {}",
            values.len()
        )));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameter("values must be strictly increasing".into()));
    }
    Ok(())
}

fn check_pair(r: &Rational, s: &Rational) -> Result<()> {
    check_unit(r)?;
    check_unit(s)?;
    if r >= s {
        return Err(Error::BadParameter(format!("need r < s, got r = {r}, s = {s}")));
    }
    Ok(())
}

fn witness(statement: &str, pairing: &str, x: &str, y: &str) -> Claim {
    Claim {
        statement: statement.to_string(),
        check: Check::Witness {
            axiom: AxiomTag::IE,
            pairing: pairing.into(),
            x: x.into(),
            y: y.into(),
            expect: Direction::YOverX,
        },
    }
}

/// The greedy indices `n_1 < n_2 < ...` up to `limit` with
/// `r < q_{n_1}` and `q_{n_k}` strictly decreasing.
pub fn thm1_sequence(r: &Rational, limit: usize) -> Result<Vec<usize>> {
    check_unit(r)?;
    let mut e = RationalEnumeration::new();
    Ok(greedy(r, e.prefix(limit)))
}

fn greedy(r: &Rational, terms: &[Rational]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut last: Option<&Rational> = None;
    for (i, qn) in terms.iter().enumerate() {
        if qn > r && last.is_none_or(|c| qn < c) {
            out.push(i + 1);
            last = Some(qn);
        }
    }
    out
}

/// `x(r)` and `y(r)` on `[1, depth]` from values `a < b < c < d`.
///
/// Coordinates come in blocks `(2n - 1, 2n)`: `(b, c)` for `n ∈ L(r)` and
/// `(a, d)` otherwise. `y(r)` also has `(b, c)` on the blocks `n_k`.
pub fn thm1_family(r: &Rational, depth: usize, values: &[Rational]) -> Result<(Stream, Stream)> {
    check_unit(r)?;
    check_values(values, 4)?;
    if depth < 2 || depth % 2 == 1 {
        return Err(Error::BadParameter(format!("depth must be even and positive, got {depth}")));
    }
    let blocks = depth / 2;
    let mut e = RationalEnumeration::new();
    let terms = e.prefix(blocks);
    let seq: BTreeSet<usize> = greedy(r, terms).into_iter().collect();
    let pick = |n: usize, t: usize, lifted: bool| {
        let inner = terms[n - 1] < *r || lifted;
        let i = match (inner, t % 2 == 1) {
            (true, true) => 1,
            (true, false) => 2,
            (false, true) => 0,
            (false, false) => 3,
        };
        values[i].clone()
    };
    let x = Stream::from_rule(depth, |t| pick(t.div_ceil(2), t, false))?
        .with_provenance(format!("thm1:x({r})"));
    let y = Stream::from_rule(depth, |t| {
        let n = t.div_ceil(2);
        pick(n, t, seq.contains(&n))
    })?
    .with_provenance(format!("thm1:y({r})"));
    Ok((x, y))
}

/// `y′`: `y(r)` with its `(b, c)` blocks at `n_k`, `q_{n_k} >= s`, exchanged
/// for the earliest `(a, d)` blocks of `U(r) ∩ L(s)` beyond `n_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm1Swap {
    pub y_prime: Stream,
    /// `K`.
    pub k: usize,
    /// Block indices `n_1, ..., n_K`.
    pub swapped: Vec<usize>,
    /// Block indices their contents moved to, in the same order.
    pub targets: Vec<usize>,
    /// The other blocks of `U(r) ∩ L(s)` within depth.
    pub remaining: Vec<usize>,
}

struct Plan {
    seq: Vec<usize>,
    k: usize,
    targets: Vec<usize>,
    remaining: Vec<usize>,
    // Blocks that must fit for the chain to have a complete last link.
    needed_blocks: usize,
}

fn thm1_plan(r: &Rational, s: &Rational, blocks: usize) -> Option<Plan> {
    let mut e = RationalEnumeration::new();
    let terms = e.prefix(blocks);
    let seq = greedy(r, terms);
    let k = seq.iter().take_while(|&&n| terms[n - 1] >= *s).count();
    let settled = *seq.get(k)?;
    let after = if k == 0 { 0 } else { seq[k - 1] };
    let in_seq: BTreeSet<usize> = seq.iter().copied().collect();
    let crossing = |v: &usize| !in_seq.contains(v) && terms[v - 1] >= *r && terms[v - 1] < *s;
    let targets: Vec<usize> = (after + 1..=blocks).filter(crossing).take(k).collect();
    let remaining: Vec<usize> = (1..=blocks).filter(|v| crossing(v) && !targets.contains(v)).collect();
    if targets.len() < k || remaining.is_empty() {
        return None;
    }
    let needed_blocks = settled.max(*targets.last().unwrap_or(&0)).max(remaining[0]);
    Some(Plan { seq, k, targets, remaining, needed_blocks })
}

fn thm1_needed(r: &Rational, s: &Rational) -> usize {
    let mut blocks = 64;
    while blocks <= PLAN_LIMIT {
        if let Some(plan) = thm1_plan(r, s, blocks) {
            return 2 * plan.needed_blocks;
        }
        blocks *= 2;
    }
    usize::MAX
}

pub fn thm1_swap(y_r: &Stream, r: &Rational, s: &Rational, depth: usize) -> Result<Thm1Swap> {
    check_pair(r, s)?;
    if y_r.depth() != Some(depth) {
        return Err(Error::DepthMismatch { left: y_r.depth().unwrap_or(0), right: depth });
    }
    let plan = thm1_plan(r, s, depth / 2)
        .ok_or_else(|| Error::DepthTooSmall { needed: thm1_needed(r, s), depth })?;
    let mut values = y_r.prefix(depth)?;
    for (&from, &to) in plan.seq[..plan.k].iter().zip(&plan.targets) {
        values.swap(2 * from - 2, 2 * to - 2);
        values.swap(2 * from - 1, 2 * to - 1);
    }
    let y_prime = Stream::truncated(values)?.with_provenance(format!("thm1:y'({r},{s})"));
    Ok(Thm1Swap {
        y_prime,
        k: plan.k,
        swapped: plan.seq[..plan.k].to_vec(),
        targets: plan.targets,
        remaining: plan.remaining,
    })
}

fn block_pairs(blocks: &[usize]) -> Vec<(usize, usize)> {
    blocks.iter().map(|&n| (2 * n - 1, 2 * n)).collect()
}

/// `x(r) ≺ y(r) ∼ y′ ≺ x(s)` with four values.
pub fn thm1_construction(
    r: &Rational,
    s: &Rational,
    depth: usize,
    values: &[Rational],
) -> Result<NamedExample> {
    check_pair(r, s)?;
    let (x_r, y_r) = thm1_family(r, depth, values)?;
    let (x_s, _) = thm1_family(s, depth, values)?;
    let swap = thm1_swap(&y_r, r, s, depth)?;
    let seq = thm1_sequence(r, depth / 2)?;
    let alpha = PairingFunction::finite(block_pairs(&seq))?;
    let beta = PairingFunction::finite(block_pairs(&swap.remaining))?;
    let claims = vec![
        witness("x(r) < y(r) by IE on the blocks n_k", "alpha", "x(r)", "y(r)"),
        Claim {
            statement: format!("y(r) ~ y' by AN, {} blocks exchanged", swap.k),
            check: Check::Permutation { x: "y(r)".into(), y: "y'".into() },
        },
        witness("y' < x(s) by IE on the remaining blocks of U(r) ∩ L(s)", "beta", "y'", "x(s)"),
    ];
    let notes = vec![
        format!("n_k within depth: {} blocks, K = {}", seq.len(), swap.k),
        format!("swapped blocks {:?} with {:?}", swap.swapped, swap.targets),
    ];
    Ok(NamedExample {
        name: format!("thm1(r={r}, s={s})"),
        streams: vec![
            ("x(r)".into(), x_r),
            ("y(r)".into(), y_r),
            ("y'".into(), swap.y_prime),
            ("x(s)".into(), x_s),
        ],
        pairings: vec![("alpha".into(), alpha), ("beta".into(), beta)],
        claims,
        notes,
    })
}

/// Where each coordinate sits among `𝐈`, `𝐔(r)` and `𝐋(r)`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Region {
    Rest,
    Upper,
    Lower,
}

fn region(p: &IndexPartition, t: usize) -> Region {
    if p.factorial_upper.contains(&t) {
        Region::Upper
    } else if p.factorial_lower.contains(&t) {
        Region::Lower
    } else {
        Region::Rest
    }
}

/// `x(r)` and `y(r)` from values `a < ... < f`: on `𝐈`, `c`/`f` at odd/even
/// coordinates (`d`/`e` in `y(r)`); `a` on `𝐔(r)` and `b` on `𝐋(r)`.
pub fn thm2_family(r: &Rational, depth: usize, values: &[Rational]) -> Result<(Stream, Stream)> {
    check_values(values, 6)?;
    let p = partition(r, depth)?;
    let v = |i: usize| values[i].clone();
    let make = |odd: usize, even: usize| {
        Stream::from_rule(depth, |t| match region(&p, t) {
            Region::Rest if t % 2 == 1 => v(odd),
            Region::Rest => v(even),
            Region::Upper => v(0),
            Region::Lower => v(1),
        })
    };
    let x = make(2, 5)?.with_provenance(format!("thm2:x({r})"));
    let y = make(3, 4)?.with_provenance(format!("thm2:y({r})"));
    Ok((x, y))
}

/// `x(r)` and `y(r)` from values `a < ... < h`: as in the six-value family
/// on `𝐈`, with `a`/`h` on `𝐔(r)` and `b`/`g` on `𝐋(r)` at odd/even coordinates.
pub fn thm3_family(r: &Rational, depth: usize, values: &[Rational]) -> Result<(Stream, Stream)> {
    check_values(values, 8)?;
    let p = partition(r, depth)?;
    let v = |i: usize| values[i].clone();
    let make = |odd: usize, even: usize| {
        Stream::from_rule(depth, |t| match (region(&p, t), t % 2 == 1) {
            (Region::Rest, true) => v(odd),
            (Region::Rest, false) => v(even),
            (Region::Upper, true) => v(0),
            (Region::Upper, false) => v(7),
            (Region::Lower, true) => v(1),
            (Region::Lower, false) => v(6),
        })
    };
    let x = make(2, 5)?.with_provenance(format!("thm3:x({r})"));
    let y = make(3, 4)?.with_provenance(format!("thm3:y({r})"));
    Ok((x, y))
}

// `(t, t + 1)` for odd `t ∈ 𝐈`; the last may reach past the depth.
fn rest_pairs(p: &IndexPartition) -> Vec<(usize, usize)> {
    p.rest.iter().filter(|&&t| t % 2 == 1).map(|&t| (t, t + 1)).collect()
}

/// `𝐋(s) ∩ 𝐔(r)` within the depth, or `DepthTooSmall` when it is empty.
fn crossing(r: &Rational, s: &Rational, depth: usize) -> Result<(IndexPartition, Vec<usize>)> {
    check_pair(r, s)?;
    let pr = partition(r, depth)?;
    let ps = partition(s, depth)?;
    let cross: Vec<usize> = ps.factorial_lower.intersection(&pr.factorial_upper).copied().collect();
    if cross.len() < 2 {
        // The least l with q_l in [r, s) fixes the first crossing block.
        let mut e = RationalEnumeration::new();
        let needed = (1..=20)
            .find(|&l| {
                let ql = e.term(l);
                ql >= *r && ql < *s
            })
            .map_or(usize::MAX, |l| (1..=l).product::<usize>() * 2 + 2);
        return Err(Error::DepthTooSmall { needed, depth });
    }
    Ok((pr, cross))
}

// Pairs the `i`-th element of `from` with the `i`-th of `to`; the rest of
// `from` is left open.
fn in_order(from: &[usize], to: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let pairs = from.iter().zip(to).map(|(&i, &j)| (i.min(j), i.max(j))).collect();
    let open = from.iter().skip(to.len()).copied().collect();
    (pairs, open)
}

/// `x(r) ≺ y(r) ≺ z ≤ x(s)` with six values, `z` being `x(s)` lowered to `e`
/// on `𝐈 ∩ Even`.
pub fn thm2_construction(
    r: &Rational,
    s: &Rational,
    depth: usize,
    values: &[Rational],
) -> Result<NamedExample> {
    let (pr, cross) = crossing(r, s, depth)?;
    let (x_r, y_r) = thm2_family(r, depth, values)?;
    let (x_s, _) = thm2_family(s, depth, values)?;
    let mut z = x_s.prefix(depth)?;
    for &t in pr.rest.iter().filter(|&&t| t % 2 == 0) {
        z[t - 1] = values[4].clone();
    }
    let z = Stream::truncated(z)?.with_provenance(format!("thm2:z({r},{s})"));
    let odd: Vec<usize> = pr.rest.iter().copied().filter(|t| t % 2 == 1).collect();
    if odd.len() < cross.len() {
        return Err(Error::DepthTooSmall { needed: 2 * depth, depth });
    }
    let (pairs, open) = in_order(&odd, &cross);
    let alpha = PairingFunction::finite(rest_pairs(&pr))?;
    let beta = PairingFunction::finite(pairs)?.with_open(open)?;
    let claims = vec![
        witness("x(r) < y(r) by IE within 𝐈", "alpha", "x(r)", "y(r)"),
        witness("y(r) < z by IE between 𝐈 ∩ Odd and 𝐋(s) ∩ 𝐔(r)", "beta", "y(r)", "z"),
        Claim {
            statement: "z <= x(s) by M".into(),
            check: Check::Dominates { upper: "x(s)".into(), lower: "z".into() },
        },
    ];
    Ok(NamedExample {
        name: format!("thm2(r={r}, s={s})"),
        streams: vec![
            ("x(r)".into(), x_r),
            ("y(r)".into(), y_r),
            ("z".into(), z),
            ("x(s)".into(), x_s),
        ],
        pairings: vec![("alpha".into(), alpha), ("beta".into(), beta)],
        claims,
        notes: vec![format!("𝐋(s) ∩ 𝐔(r) within depth: {cross:?}")],
    })
}

/// `x(r) ≺ y(r) ≺ x(s)` with eight values.
pub fn thm3_construction(
    r: &Rational,
    s: &Rational,
    depth: usize,
    values: &[Rational],
) -> Result<NamedExample> {
    let (pr, cross) = crossing(r, s, depth)?;
    let (x_r, y_r) = thm3_family(r, depth, values)?;
    let (x_s, _) = thm3_family(s, depth, values)?;
    let split = |v: &[usize], parity: usize| -> Vec<usize> {
        v.iter().copied().filter(|t| t % 2 == parity).collect()
    };
    let rest: Vec<usize> = pr.rest.iter().copied().collect();
    let (odd, even) = (split(&rest, 1), split(&rest, 0));
    let (cross_odd, cross_even) = (split(&cross, 1), split(&cross, 0));
    if odd.len() < cross_odd.len() || even.len() < cross_even.len() {
        return Err(Error::DepthTooSmall { needed: 2 * depth, depth });
    }
    let (mut pairs, mut open) = in_order(&odd, &cross_odd);
    let (beta_pairs, beta_open) = in_order(&even, &cross_even);
    pairs.extend(beta_pairs);
    open.extend(beta_open);
    let alpha = PairingFunction::finite(rest_pairs(&pr))?;
    let merged = PairingFunction::finite(pairs)?.with_open(open)?;
    let claims = vec![
        witness("x(r) < y(r) by IE within 𝐈", "alpha", "x(r)", "y(r)"),
        witness("y(r) < x(s) by IE on the odd and even sides together", "alpha+beta", "y(r)", "x(s)"),
    ];
    Ok(NamedExample {
        name: format!("thm3(r={r}, s={s})"),
        streams: vec![("x(r)".into(), x_r), ("y(r)".into(), y_r), ("x(s)".into(), x_s)],
        pairings: vec![("alpha".into(), alpha), ("alpha+beta".into(), merged)],
        claims,
        notes: vec![format!("𝐋(s) ∩ 𝐔(r) within depth: {cross:?}")],
    })
}
