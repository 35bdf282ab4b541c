//! Exhaustive witness enumeration for short finite profiles.

use super::{Direction, PairingFunction};
use crate::axioms::AxiomTag;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const BRUTE_FORCE_MAX: usize = 10;

/// Tries every pairing of the differing coordinates of two finite profiles
/// and returns the first that witnesses `axiom`, with its direction.
///
/// Coordinates where the profiles agree stay unpaired; a witness must pair
/// all others, so this is a complete decision procedure for finite profiles.
pub fn brute_force_witness(
    xs: &[Rational],
    ys: &[Rational],
    axiom: AxiomTag,
) -> Result<Option<(Direction, PairingFunction)>> {
    if !axiom.has_pairing_witness() {
        return Err(Error::BadParameter(format!("{axiom} has no pairing witness")));
    }
    if xs.len() != ys.len() {
        return Err(Error::DepthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.len() > BRUTE_FORCE_MAX {
        return Err(Error::SizeLimit { n: xs.len(), max: BRUTE_FORCE_MAX });
    }
    let diff: Vec<usize> = (0..xs.len()).filter(|&i| xs[i] != ys[i]).collect();
    let coverage = match axiom {
        AxiomTag::WE => diff.len() == xs.len(),
        AxiomTag::PD | AxiomTag::SE => diff.len() == 2,
        _ => true,
    };
    if diff.is_empty() || diff.len() % 2 == 1 || !coverage {
        return Ok(None);
    }
    let exact = matches!(axiom, AxiomTag::GPD | AxiomTag::PD);
    for dir in [Direction::XOverY, Direction::YOverX] {
        let (better, worse) = match dir {
            Direction::XOverY => (xs, ys),
            Direction::YOverX => (ys, xs),
        };
        let ok = |i: usize, j: usize| {
            let (b, w) = (better, worse);
            let fits = |i: usize, j: usize| {
                w[i] < b[i]
                    && b[i] < b[j]
                    && b[j] < w[j]
                    && (!exact || &b[i] - &w[i] == &w[j] - &b[j])
            };
            fits(i, j) || fits(j, i)
        };
        let mut used = vec![false; diff.len()];
        let mut pairs = Vec::new();
        if search(&diff, &mut used, &mut pairs, &ok) {
            let alpha = PairingFunction::finite(pairs.iter().map(|&(i, j)| (i + 1, j + 1)))?;
            return Ok(Some((dir, alpha)));
        }
    }
    Ok(None)
}

fn search(
    diff: &[usize],
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    ok: &impl Fn(usize, usize) -> bool,
) -> bool {
    let Some(first) = used.iter().position(|u| !u) else {
        return true;
    };
    used[first] = true;
    for k in first + 1..diff.len() {
        if used[k] || !ok(diff[first], diff[k]) {
            continue;
        }
        used[k] = true;
        pairs.push((diff[first], diff[k]));
        if search(diff, used, pairs, ok) {
            return true;
        }
        pairs.pop();
        used[k] = false;
    }
    used[first] = false;
    false
}
