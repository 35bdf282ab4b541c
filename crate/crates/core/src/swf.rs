//! Exactly evaluated social welfare functions.

use crate::domains::{Extended, UtilityDomain};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::streams::{PeriodicIndexSet, Stream};

/// `Σ_{n ∈ S} base^{-n}`, exactly.
pub fn periodic_base_sum(s: &PeriodicIndexSet, base: u32) -> Rational {
    let finite: Rational = s.explicit().iter().map(|&n| Rational::inverse_power(base, n)).sum();
    if s.residues().is_empty() {
        return finite;
    }
    let ratio = Rational::one() - Rational::inverse_power(base, s.period());
    let heads: Rational = s.periodic_starts().map(|n| Rational::inverse_power(base, n)).sum();
    finite + heads / ratio
}

fn sorted_distinct<const N: usize>(values: [Rational; N]) -> Result<[Rational; N]> {
    if values.windows(2).all(|w| w[0] < w[1]) {
        Ok(values)
    } else {
        Err(Error::InvalidDomain(format!("expected {N} strictly increasing values")))
    }
}

/// `a < b < c < d < e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveValueDomain([Rational; 5]);

impl FiveValueDomain {
    pub fn new(values: [Rational; 5]) -> Result<Self> {
        sorted_distinct(values).map(FiveValueDomain)
    }

    pub fn from_domain(y: &UtilityDomain) -> Result<Self> {
        let values = finite_values(y)?;
        let arr: [Rational; 5] = values
            .try_into()
            .map_err(|v: Vec<Rational>| Error::InvalidDomain(format!("need 5 values, got {}", v.len())))?;
        FiveValueDomain::new(arr)
    }

    pub fn values(&self) -> &[Rational; 5] {
        &self.0
    }
}

/// `a < b < c < d < e < f < g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SevenValueDomain([Rational; 7]);

impl SevenValueDomain {
    pub fn new(values: [Rational; 7]) -> Result<Self> {
        sorted_distinct(values).map(SevenValueDomain)
    }

    pub fn from_domain(y: &UtilityDomain) -> Result<Self> {
        let values = finite_values(y)?;
        let arr: [Rational; 7] = values
            .try_into()
            .map_err(|v: Vec<Rational>| Error::InvalidDomain(format!("need 7 values, got {}", v.len())))?;
        SevenValueDomain::new(arr)
    }

    pub fn values(&self) -> &[Rational; 7] {
        &self.0
    }
}

fn finite_values(y: &UtilityDomain) -> Result<Vec<Rational>> {
    if !y.is_finite() {
        return Err(Error::InvalidDomain("expected a finite domain".into()));
    }
    Ok(y.finite_part().iter().cloned().collect())
}

fn check_values(x: &Stream, allowed: impl Fn(&Rational) -> bool) -> Result<()> {
    if !x.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    for t in 1..=x.defining_len() {
        let v = x.coordinate(t)?;
        if !allowed(v) {
            return Err(Error::DomainViolation { index: t, value: v.clone() });
        }
    }
    Ok(())
}

fn penalty(x: &Stream, heavy: &[&Rational], light: &[&Rational]) -> Option<Rational> {
    let n = x.positions_where(|v| heavy.contains(&v));
    let m = x.positions_where(|v| light.contains(&v));
    if n.is_empty() && m.is_empty() {
        return None;
    }
    Some(-periodic_base_sum(&n, 2) - periodic_base_sum(&m, 3))
}

/// `−Σ_{x_n = a} 2^{-n} − Σ_{x_n = b} 3^{-n}` if some coordinate is `a` or
/// `b`, otherwise `Σ x_n 2^{-n}`.
///
/// Satisfies GE and M when `c >= 0`; with `c < 0` the second branch can fall
/// below the first.
pub fn w_prop1(x: &Stream, y: &FiveValueDomain) -> Result<Rational> {
    let v = y.values();
    check_values(x, |u| v.contains(u))?;
    if let Some(p) = penalty(x, &[&v[0]], &[&v[1]]) {
        return Ok(p);
    }
    Ok(v.iter().map(|u| u * &periodic_base_sum(&x.positions_where(|w| w == u), 2)).sum())
}

/// `−Σ_{x_n ∈ {a, g}} 2^{-n} − Σ_{x_n ∈ {b, f}} 3^{-n}`, or 0 when no
/// coordinate is in `{a, b, f, g}`.
pub fn w_prop2(x: &Stream, y: &SevenValueDomain) -> Result<Rational> {
    let v = y.values();
    check_values(x, |u| v.contains(u))?;
    Ok(penalty(x, &[&v[0], &v[6]], &[&v[1], &v[5]]).unwrap_or_else(Rational::zero))
}

/// Smallest coordinate.
pub fn w_min(x: &Stream) -> Result<Rational> {
    if !x.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    Rational::min_of(x.value_set()).ok_or_else(|| Error::InvalidStream("empty stream".into()))
}

/// `ρ · min_n |x_n − inf Y| + (1 − ρ) · min_n |sup Y − x_n|`.
pub fn w_rho_inf(x: &Stream, rho: &Rational, y: &UtilityDomain) -> Result<Rational> {
    if !(rho.is_positive() && *rho < 1) {
        return Err(Error::BadRho(rho.clone()));
    }
    let (Extended::Finite(lo), Extended::Finite(hi)) = (y.inf(), y.sup()) else {
        return Err(Error::UnboundedDomain);
    };
    check_values(x, |u| y.contains(u))?;
    let values = x.value_set();
    let near_low = values.iter().map(|v| (*v - &lo).abs()).min();
    let near_high = values.iter().map(|v| (&hi - *v).abs()).min();
    let (Some(l), Some(h)) = (near_low, near_high) else {
        return Err(Error::InvalidStream("empty stream".into()));
    };
    Ok(rho * &l + &(Rational::one() - rho) * &h)
}

/// A social welfare function with a name, for audits and the CLI.
pub trait WelfareFunction {
    fn name(&self) -> String;
    fn evaluate(&self, x: &Stream) -> Result<Rational>;
}

#[derive(Debug, Clone)]
pub struct Prop1Swf(pub FiveValueDomain);

#[derive(Debug, Clone)]
pub struct Prop2Swf(pub SevenValueDomain);

#[derive(Debug, Clone, Copy, Default)]
pub struct MinSwf;

#[derive(Debug, Clone)]
pub struct RhoInfSwf {
    pub rho: Rational,
    pub domain: UtilityDomain,
}

impl WelfareFunction for Prop1Swf {
    fn name(&self) -> String {
        "prop1".into()
    }
    fn evaluate(&self, x: &Stream) -> Result<Rational> {
        w_prop1(x, &self.0)
    }
}

impl WelfareFunction for Prop2Swf {
    fn name(&self) -> String {
        "prop2".into()
    }
    fn evaluate(&self, x: &Stream) -> Result<Rational> {
        w_prop2(x, &self.0)
    }
}

impl WelfareFunction for MinSwf {
    fn name(&self) -> String {
        "min".into()
    }
    fn evaluate(&self, x: &Stream) -> Result<Rational> {
        w_min(x)
    }
}

impl WelfareFunction for RhoInfSwf {
    fn name(&self) -> String {
        format!("rhoinf(rho={})", self.rho)
    }
    fn evaluate(&self, x: &Stream) -> Result<Rational> {
        w_rho_inf(x, &self.rho, &self.domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{audit_swf, AxiomTag, GeneratorConfig};
    use crate::rational::q;

    fn ints<const N: usize>(v: [i64; N]) -> [Rational; N] {
        v.map(Rational::integer)
    }

    fn five() -> FiveValueDomain {
        FiveValueDomain::new(ints([0, 1, 2, 3, 4])).unwrap()
    }

    fn seven() -> SevenValueDomain {
        SevenValueDomain::new(ints([0, 1, 2, 3, 4, 5, 6])).unwrap()
    }

    fn ep(pre: &[i64], per: &[i64]) -> Stream {
        let f = |v: &[i64]| v.iter().map(|&n| Rational::integer(n)).collect();
        Stream::periodic(f(pre), f(per)).unwrap()
    }

    // Partial sums to 64 terms; the geometric tail is below base^-64.
    fn partial(s: &PeriodicIndexSet, base: u32) -> Rational {
        s.iter_up_to(64).map(|n| Rational::inverse_power(base, n)).sum()
    }

    #[test]
    fn base_sums() {
        let all = PeriodicIndexSet::new([], 0, 1, [0]).unwrap();
        assert_eq!(periodic_base_sum(&all, 2), q(1, 1));
        let odd = PeriodicIndexSet::new([], 0, 2, [1]).unwrap();
        assert_eq!(periodic_base_sum(&odd, 3), q(3, 8));
        assert_eq!(periodic_base_sum(&PeriodicIndexSet::finite([1]), 2), q(1, 2));
        let odd_tail = &periodic_base_sum(&odd, 3) - &partial(&odd, 3);
        assert!(odd_tail.is_positive() && odd_tail < Rational::inverse_power(3, 64));
        let mixed = PeriodicIndexSet::new([2, 3], 4, 5, [0, 3]).unwrap();
        let tail = &periodic_base_sum(&mixed, 2) - &partial(&mixed, 2);
        assert!(!tail.is_negative() && tail < Rational::inverse_power(2, 60));
    }

    #[test]
    fn prop1_values() {
        assert_eq!(w_prop1(&ep(&[], &[2]), &five()).unwrap(), q(2, 1));
        assert_eq!(w_prop1(&ep(&[0], &[2]), &five()).unwrap(), q(-1, 2));
        assert_eq!(w_prop1(&ep(&[], &[1, 0]), &five()).unwrap(), q(-17, 24));
        assert!(matches!(
            w_prop1(&ep(&[2, 7], &[2]), &five()),
            Err(Error::DomainViolation { index: 2, .. })
        ));
        let t = Stream::truncated(vec![q(2, 1)]).unwrap();
        assert_eq!(w_prop1(&t, &five()), Err(Error::NotPeriodic));
    }

    #[test]
    fn prop2_values() {
        assert_eq!(w_prop2(&ep(&[], &[2]), &seven()).unwrap(), q(0, 1));
        assert_eq!(w_prop2(&ep(&[0, 6], &[2]), &seven()).unwrap(), q(-3, 4));
        assert_eq!(w_prop2(&ep(&[], &[1, 5]), &seven()).unwrap(), q(-1, 2));
    }

    #[test]
    fn prop2_fails_monotonicity() {
        // Raising a c to a g is a coordinate-wise improvement that costs welfare.
        let x = ep(&[], &[2]);
        let y = ep(&[6], &[2]);
        assert!(w_prop2(&y, &seven()).unwrap() < w_prop2(&x, &seven()).unwrap());
    }

    #[test]
    fn min_and_rho() {
        assert_eq!(w_min(&ep(&[], &[2])).unwrap(), q(2, 1));
        assert_eq!(w_min(&ep(&[0], &[1])).unwrap(), q(0, 1));
        let x = Stream::periodic(vec![], vec![q(1, 2), q(1, 3)]).unwrap();
        assert_eq!(w_min(&x).unwrap(), q(1, 3));
        let unit = UtilityDomain::finite_set([q(0, 1), q(1, 3), q(1, 2), q(1, 1)]).unwrap();
        assert_eq!(w_rho_inf(&x, &q(1, 2), &unit).unwrap(), q(5, 12));
        let rho = q(1, 3);
        let low = Stream::constant(q(0, 1));
        assert_eq!(w_rho_inf(&low, &rho, &unit).unwrap(), q(2, 3));
        let high = Stream::constant(q(1, 1));
        assert_eq!(w_rho_inf(&high, &rho, &unit).unwrap(), q(1, 3));
        assert_eq!(w_rho_inf(&x, &q(1, 1), &unit), Err(Error::BadRho(q(1, 1))));
        let unbounded = UtilityDomain::new([], vec![MonotoneChain::parse("n").unwrap()]).unwrap();
        assert_eq!(w_rho_inf(&low, &rho, &unbounded), Err(Error::UnboundedDomain));
    }

    #[test]
    fn audits() {
        let config = GeneratorConfig::new(five().values().clone()).unwrap();
        let p1 = Prop1Swf(five());
        for axiom in [AxiomTag::GE, AxiomTag::M, AxiomTag::GPD, AxiomTag::SE, AxiomTag::PD] {
            assert!(audit_swf(&p1, axiom, &config, 300, 11).unwrap().passed(), "{axiom}");
        }
        assert!(!audit_swf(&p1, AxiomTag::AN, &config, 300, 11).unwrap().passed());
        for axiom in [AxiomTag::WE, AxiomTag::M, AxiomTag::AN] {
            assert!(audit_swf(&MinSwf, axiom, &config, 300, 12).unwrap().passed(), "{axiom}");
        }
        assert!(!audit_swf(&MinSwf, AxiomTag::GE, &config, 300, 12).unwrap().passed());
        let seven_config = GeneratorConfig::new(seven().values().clone()).unwrap();
        let p2 = Prop2Swf(seven());
        assert!(audit_swf(&p2, AxiomTag::GE, &seven_config, 300, 13).unwrap().passed());
        assert!(!audit_swf(&p2, AxiomTag::M, &seven_config, 300, 13).unwrap().passed());
    }

    #[test]
    fn audits_are_reproducible() {
        let config = GeneratorConfig::new(five().values().clone()).unwrap();
        let p1 = Prop1Swf(five());
        let a = audit_swf(&p1, AxiomTag::AN, &config, 200, 5).unwrap();
        let b = audit_swf(&p1, AxiomTag::AN, &config, 200, 5).unwrap();
        let trials = |r: &AuditReport| r.violations.iter().map(|v| v.trial).collect::<Vec<_>>();
        assert_eq!(trials(&a), trials(&b));
        assert!(trials(&a).windows(2).all(|w| w[0] < w[1]));
    }

    use crate::axioms::AuditReport;
    use crate::domains::MonotoneChain;
}
