//! The named example streams and the theorem families, with the witness
//! chains that are claimed about them.

mod families;
mod named;
mod verify;

use std::collections::BTreeSet;

use num_integer::Integer;

pub use families::{
    thm1_construction, thm1_family, thm1_sequence, thm1_swap, thm2_construction, thm2_family,
    thm3_construction, thm3_family, Thm1Swap,
};
pub use named::{example_streams, EXAMPLE_NAMES};
pub use verify::{verify, Check, Claim, NamedExample, Step, Transcript};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `q_1, q_2, ...`: the rationals in `(0, 1)` by increasing denominator,
/// then increasing numerator, in lowest terms.
#[derive(Debug, Clone, Default)]
pub struct RationalEnumeration {
    terms: Vec<Rational>,
    denom: i64,
}

impl RationalEnumeration {
    pub fn new() -> Self {
        RationalEnumeration { terms: Vec::new(), denom: 1 }
    }

    fn grow_to(&mut self, k: usize) {
        while self.terms.len() < k {
            self.denom += 1;
            let d = self.denom;
            self.terms.extend((1..d).filter(|n| n.gcd(&d) == 1).map(|n| Rational::new(n, d)));
        }
    }

    /// `q_k`, 1-based.
    pub fn term(&mut self, k: usize) -> Rational {
        assert!(k >= 1, "the enumeration is 1-based");
        self.grow_to(k);
        self.terms[k - 1].clone()
    }

    /// `q_1, ..., q_k`.
    pub fn prefix(&mut self, k: usize) -> &[Rational] {
        self.grow_to(k);
        &self.terms[..k]
    }

    /// The `k` with `q_k = r`.
    pub fn index_of(&mut self, r: &Rational) -> Result<usize> {
        check_unit(r)?;
        let d = i64::try_from(r.denom()).map_err(|_| Error::BadParameter(format!("{r} is too fine")))?;
        // All terms with denominator up to `d` come first.
        let mut before = 0usize;
        for e in 2..d {
            before += (1..e).filter(|n| n.gcd(&e) == 1).count();
        }
        self.grow_to(before + d as usize);
        let offset = self.terms[before..].iter().position(|t| t == r).expect("listed under its denominator");
        Ok(before + offset + 1)
    }
}

pub fn enumerate_rationals(k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::BadParameter("the enumeration is 1-based".into()));
    }
    Ok(RationalEnumeration::new().term(k))
}

pub(crate) fn check_unit(r: &Rational) -> Result<()> {
    if r.is_positive() && *r < 1 {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{r} is not in (0, 1)")))
    }
}

/// Index sets built from `r` within `[1, depth]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPartition {
    pub r: Rational,
    pub depth: usize,
    /// `L(r) = {n : q_n < r}`.
    pub lower: BTreeSet<usize>,
    /// `U(r)`, the complement of `L(r)`.
    pub upper: BTreeSet<usize>,
    /// `{2(l!) + 1, 2(l!) + 2 : l ∈ L(r)}`.
    pub factorial_lower: BTreeSet<usize>,
    /// `{2(u!) + 1, 2(u!) + 2 : u ∈ U(r)}`.
    pub factorial_upper: BTreeSet<usize>,
    /// Everything else; the same for every `r`.
    pub rest: BTreeSet<usize>,
}

/// `2(l!) + 1` for every `l` with `2(l!) + 2 <= depth`.
pub(crate) fn factorial_blocks(depth: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut fact: usize = 1;
    for l in 1.. {
        fact = match fact.checked_mul(l) {
            Some(f) => f,
            None => break,
        };
        match fact.checked_mul(2).and_then(|f| f.checked_add(1)) {
            Some(start) if start < depth => out.push((l, start)),
            _ => break,
        }
    }
    out
}

pub fn partition(r: &Rational, depth: usize) -> Result<IndexPartition> {
    check_unit(r)?;
    if depth == 0 {
        return Err(Error::BadParameter("depth must be positive".into()));
    }
    let mut lower = BTreeSet::new();
    let mut upper = BTreeSet::new();
    for (i, qn) in RationalEnumeration::new().prefix(depth).iter().enumerate() {
        if qn < r {
            lower.insert(i + 1);
        } else {
            upper.insert(i + 1);
        }
    }
    let mut factorial_lower = BTreeSet::new();
    let mut factorial_upper = BTreeSet::new();
    for (l, start) in factorial_blocks(depth + 1) {
        let side = if lower.contains(&l) { &mut factorial_lower } else { &mut factorial_upper };
        side.extend([start, start + 1].into_iter().filter(|&t| t <= depth));
    }
    let rest = (1..=depth)
        .filter(|t| !factorial_lower.contains(t) && !factorial_upper.contains(t))
        .collect();
    Ok(IndexPartition { r: r.clone(), depth, lower, upper, factorial_lower, factorial_upper, rest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn enumeration_order() {
        let mut e = RationalEnumeration::new();
        assert_eq!(e.prefix(5), &[q(1, 2), q(1, 3), q(2, 3), q(1, 4), q(3, 4)]);
        assert_eq!(e.term(7), q(2, 5));
        assert_eq!(e.index_of(&q(3, 4)).unwrap(), 5);
        assert_eq!(e.index_of(&q(5, 7)).unwrap(), 16);
        assert_eq!(e.term(16), q(5, 7));
        assert!(e.index_of(&q(1, 1)).is_err());
    }

    #[test]
    fn enumeration_is_injective() {
        let mut e = RationalEnumeration::new();
        let terms = e.prefix(2000);
        let distinct: BTreeSet<&Rational> = terms.iter().collect();
        assert_eq!(distinct.len(), 2000);
        assert!(terms.iter().all(|t| t.is_positive() && *t < 1));
    }

    #[test]
    fn partitions() {
        let p = partition(&q(1, 2), 60).unwrap();
        assert_eq!(p.lower.iter().take(4).copied().collect::<Vec<_>>(), vec![2, 4, 6, 7]);
        assert_eq!(p.lower.len() + p.upper.len(), 60);
        assert!(p.lower.is_disjoint(&p.upper));
        // 𝐋 ∪ 𝐔 = {3, 4, 5, 6, 13, 14, 49, 50}
        let lu: BTreeSet<usize> = p.factorial_lower.union(&p.factorial_upper).copied().collect();
        assert_eq!(lu.into_iter().collect::<Vec<_>>(), vec![3, 4, 5, 6, 13, 14, 49, 50]);
        // q_1 = 1/2 is not below 1/2, q_2 = 1/3 is.
        assert!(p.factorial_upper.contains(&3) && p.factorial_lower.contains(&5));
        assert_eq!(p.rest.len() + 8, 60);
        let other = partition(&q(1, 5), 60).unwrap();
        assert_eq!(other.rest, p.rest);
        assert!(partition(&q(3, 2), 10).is_err());
    }

    #[test]
    fn factorials() {
        let starts: Vec<usize> = factorial_blocks(100_000).into_iter().map(|(_, s)| s).collect();
        assert_eq!(starts, vec![3, 5, 13, 49, 241, 1441, 10081, 80641]);
    }
}
