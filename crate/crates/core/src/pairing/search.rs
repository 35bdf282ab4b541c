//! Witness search.
//!
//! Every nested spread joins a coordinate where the preferred stream is
//! higher with one where it is lower, so witnesses are perfect matchings in
//! a bipartite graph between those two sides.

use std::collections::BTreeMap;

use super::matching::maximum_matching;
use super::{validate, Direction, PairingFunction, WitnessReport, WitnessStatus};
use crate::axioms::AxiomTag;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::streams::{comparable, pair_difference, ComparablePair, Stream};

// (extra preperiod blocks, period multiple) tried for periodic witnesses.
const RESHAPES: [(usize, usize); 5] = [(0, 1), (1, 1), (0, 2), (2, 1), (1, 2)];

/// Searches for a pairing witnessing `axiom` between `x` and `y`, trying
/// `y ≺ x` before `x ≺ y`.
///
/// Aligned eventually periodic streams first get a periodic search: the
/// preperiod and one period block are matched separately, with a few longer
/// reshapings of both, and success is verified exhaustively. Otherwise the
/// first `depth` coordinates are matched as a finite problem. Pairs crossing
/// a block boundary or the depth are never proposed, so a negative answer
/// only means nothing was found within those limits.
pub fn find_witness(x: &Stream, y: &Stream, axiom: AxiomTag, depth: usize) -> Result<WitnessReport> {
    if !axiom.has_pairing_witness() {
        return Err(Error::BadParameter(format!("{axiom} has no pairing witness")));
    }
    if depth == 0 {
        return Err(Error::BadParameter("search depth must be positive".into()));
    }
    let pair = comparable(x, y)?;
    let missing = WitnessReport {
        axiom,
        direction: None,
        pairing: None,
        status: WitnessStatus::NoWitnessToDepth(depth),
    };
    if pair.is_periodic() {
        // A truncation cannot show these shapes to be wrong, the full
        // difference set can.
        let d = pair_difference(&pair);
        let impossible = match axiom {
            AxiomTag::IE => d.is_finite(),
            AxiomTag::WE => !d.is_everything(),
            AxiomTag::PD | AxiomTag::SE => !d.is_finite() || d.explicit().len() != 2,
            _ => false,
        };
        if impossible {
            return Ok(missing);
        }
        if let Some(report) = periodic_search(&pair, axiom)? {
            return Ok(report);
        }
    } else if pair.exhaustive_len() < depth {
        return Err(Error::OutOfDepth { index: depth, depth: pair.exhaustive_len() });
    }
    let xs = pair.x.prefix(depth)?;
    let ys = pair.y.prefix(depth)?;
    if let Some((_, pairs)) = finite_search(&xs, &ys, axiom)? {
        let alpha = PairingFunction::finite(pairs)?;
        let report = validate(&alpha, &pair.x.truncate(depth)?, &pair.y.truncate(depth)?, axiom)?;
        debug_assert!(report.is_verified(), "{}", report.status);
        if report.is_verified() {
            return Ok(report);
        }
    }
    Ok(missing)
}

fn periodic_search(pair: &ComparablePair, axiom: AxiomTag) -> Result<Option<WitnessReport>> {
    let (p0, q) = (pair.pre_len(), pair.period_len());
    let xs = pair.x.prefix(p0 + 3 * q)?;
    let ys = pair.y.prefix(p0 + 3 * q)?;
    let exact = axiom.requires_exact_transfer();
    for (extra, mult) in RESHAPES {
        let pre = p0 + extra * q;
        let per = mult * q;
        let window = pre + per;
        let differing = (0..window).filter(|&i| xs[i] != ys[i]).count();
        let tail_differs = (pre..window).any(|i| xs[i] != ys[i]);
        let shape_ok = match axiom {
            AxiomTag::WE => differing == window,
            AxiomTag::IE => tail_differs,
            AxiomTag::PD | AxiomTag::SE => differing == 2 && !tail_differs,
            _ => differing > 0,
        };
        if !shape_ok {
            continue;
        }
        for dir in [Direction::XOverY, Direction::YOverX] {
            let Some(head) = match_block(&xs[..pre], &ys[..pre], 1, dir, exact) else {
                continue;
            };
            let Some(tail) = match_block(&xs[pre..window], &ys[pre..window], pre + 1, dir, exact)
            else {
                continue;
            };
            let alpha = PairingFunction::periodic(head.into_iter().chain(tail), window, per)?;
            let report = validate(&alpha, &pair.x, &pair.y, axiom)?;
            debug_assert!(report.is_verified(), "{}", report.status);
            if report.is_verified() {
                return Ok(Some(report));
            }
        }
    }
    Ok(None)
}

/// Perfect matching of all differing coordinates of two equal-length lists,
/// in either direction, subject to the axiom's coverage rule.
pub(crate) fn finite_search(
    xs: &[Rational],
    ys: &[Rational],
    axiom: AxiomTag,
) -> Result<Option<(Direction, Vec<(usize, usize)>)>> {
    if xs.len() != ys.len() {
        return Err(Error::DepthMismatch { left: xs.len(), right: ys.len() });
    }
    let differing = xs.iter().zip(ys).filter(|(a, b)| a != b).count();
    let shape_ok = match axiom {
        AxiomTag::WE => differing == xs.len(),
        AxiomTag::PD | AxiomTag::SE => differing == 2,
        _ => true,
    };
    if differing == 0 || !shape_ok {
        return Ok(None);
    }
    let exact = axiom.requires_exact_transfer();
    for dir in [Direction::XOverY, Direction::YOverX] {
        if let Some(pairs) = match_block(xs, ys, 1, dir, exact) {
            return Ok(Some((dir, pairs)));
        }
    }
    Ok(None)
}

/// Pairs (1-based from `base`) covering every differing coordinate of the
/// block with nested spreads in direction `dir`, or `None`.
fn match_block(
    xs: &[Rational],
    ys: &[Rational],
    base: usize,
    dir: Direction,
    exact: bool,
) -> Option<Vec<(usize, usize)>> {
    // `inner` is the stream claimed to be more equal.
    let (inner, outer) = match dir {
        Direction::XOverY => (xs, ys),
        Direction::YOverX => (ys, xs),
    };
    let ranks: BTreeMap<&Rational, usize> = {
        let mut vals: Vec<&Rational> = inner.iter().chain(outer).collect();
        vals.sort();
        vals.dedup();
        vals.into_iter().enumerate().map(|(i, v)| (v, i)).collect()
    };
    let inner_r: Vec<usize> = inner.iter().map(|v| ranks[v]).collect();
    let outer_r: Vec<usize> = outer.iter().map(|v| ranks[v]).collect();
    let raised: Vec<usize> = (0..inner.len()).filter(|&t| inner_r[t] > outer_r[t]).collect();
    let lowered: Vec<usize> = (0..inner.len()).filter(|&t| inner_r[t] < outer_r[t]).collect();
    if raised.len() != lowered.len() {
        return None;
    }
    if raised.is_empty() {
        return Some(vec![]);
    }
    let adj: Vec<Vec<usize>> = raised
        .iter()
        .map(|&i| {
            (0..lowered.len())
                .filter(|&k| {
                    let j = lowered[k];
                    inner_r[i] < inner_r[j]
                        && (!exact || &inner[i] - &outer[i] == &outer[j] - &inner[j])
                })
                .collect()
        })
        .collect();
    let matched = maximum_matching(lowered.len(), &adj);
    let mut pairs = Vec::with_capacity(raised.len());
    for (li, m) in matched.into_iter().enumerate() {
        let k = m?;
        let (i, j) = (raised[li] + base, lowered[k] + base);
        pairs.push((i.min(j), i.max(j)));
    }
    pairs.sort_unstable();
    Some(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::Partner;
    use crate::rational::q;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| Rational::integer(n)).collect()
    }

    fn ep(pre: &[i64], per: &[i64]) -> Stream {
        Stream::periodic(ints(pre), ints(per)).unwrap()
    }

    #[test]
    fn single_pair() {
        let r = find_witness(&ep(&[0, 3], &[2]), &ep(&[1, 2], &[2]), AxiomTag::GE, 20).unwrap();
        assert_eq!(r.status, WitnessStatus::VerifiedPeriodic);
        assert_eq!(r.direction, Some(Direction::YOverX));
        assert_eq!(r.pairing.unwrap().partner(1), Partner::Paired(2));
    }

    #[test]
    fn same_direction_moves_have_no_witness() {
        for axiom in AxiomTag::PAIRING {
            let r = find_witness(&ep(&[0, 3], &[2]), &ep(&[1, 4], &[2]), axiom, 20).unwrap();
            assert_eq!(r.status, WitnessStatus::NoWitnessToDepth(20), "{axiom}");
        }
    }

    #[test]
    fn periodic_witness_for_repeating_blocks() {
        let x = ep(&[], &[1, 2, 4]);
        let y = ep(&[], &[0, 3, 4]);
        let r = find_witness(&x, &y, AxiomTag::GE, 50).unwrap();
        assert_eq!(r.status, WitnessStatus::VerifiedPeriodic);
        assert_eq!(r.direction, Some(Direction::XOverY));
        let alpha = r.pairing.unwrap();
        assert_eq!(alpha.period(), Some(3));
        assert_eq!(alpha.partner(301), Partner::Paired(302));
        assert!(!alpha.in_domain(300));
    }

    #[test]
    fn reshaping_lets_the_preperiod_borrow_a_period() {
        // The preperiod's two coordinates only fit with the first period's.
        let x = ep(&[3, 1], &[0, 5]);
        let y = ep(&[2, 4], &[-1, 6]);
        let r = find_witness(&x, &y, AxiomTag::IE, 30).unwrap();
        assert_eq!(r.status, WitnessStatus::VerifiedPeriodic, "{}", r.status);
        let alpha = r.pairing.unwrap();
        assert_eq!(alpha.partner(1), Partner::Paired(4));
        assert_eq!(alpha.partner(7), Partner::Paired(8));
    }

    #[test]
    fn crossing_pairings_fall_back_to_depth() {
        // A witness exists (3k+1 with 3k+3) but every pair straddles a block.
        let x = ep(&[2], &[1, 3, 2]);
        let y = ep(&[1], &[1, 4, 1]);
        let r = find_witness(&x, &y, AxiomTag::GE, 30).unwrap();
        assert_eq!(r.status, WitnessStatus::VerifiedToDepth(30));
        let r = find_witness(&x, &y, AxiomTag::GE, 31).unwrap();
        assert_eq!(r.status, WitnessStatus::NoWitnessToDepth(31));
    }

    #[test]
    fn truncated_fallback() {
        let x = Stream::truncated(ints(&[0, 5, 2, 2, 1, 4])).unwrap();
        let y = Stream::truncated(ints(&[1, 4, 2, 2, 2, 3])).unwrap();
        let r = find_witness(&x, &y, AxiomTag::GE, 6).unwrap();
        assert_eq!(r.status, WitnessStatus::VerifiedToDepth(6));
        assert_eq!(r.direction, Some(Direction::YOverX));
        assert!(matches!(
            find_witness(&x, &y, AxiomTag::GE, 7),
            Err(Error::OutOfDepth { index: 7, depth: 6 })
        ));
        let r = find_witness(&x, &y, AxiomTag::WE, 6).unwrap();
        assert_eq!(r.status, WitnessStatus::NoWitnessToDepth(6));
    }

    #[test]
    fn exact_transfers() {
        let x = Stream::truncated(vec![q(1, 2), q(5, 2)]).unwrap();
        let y = Stream::truncated(vec![q(1, 1), q(2, 1)]).unwrap();
        assert!(find_witness(&x, &y, AxiomTag::GPD, 2).unwrap().is_verified());
        assert!(find_witness(&x, &y, AxiomTag::PD, 2).unwrap().is_verified());
        let y = Stream::truncated(vec![q(1, 1), q(9, 4)]).unwrap();
        assert!(find_witness(&x, &y, AxiomTag::SE, 2).unwrap().is_verified());
        assert!(!find_witness(&x, &y, AxiomTag::GPD, 2).unwrap().is_verified());
    }
}
