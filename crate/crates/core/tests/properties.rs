use equistream::axioms::{generate_instance, premise_holds, AxiomTag, GeneratorConfig};
use equistream::constructions::{partition, thm1_family, RationalEnumeration};
use equistream::domains::{classify, contains_sigma_subset, is_well_ordered, map_domain, IncreasingMap};
use equistream::json::{pairing_to_value, parse_pairing, parse_stream, stream_to_value};
use equistream::pairing::{brute_force_witness, find_witness, validate, Direction, PairingFunction};
use equistream::streams::{
    align, difference_set, dominates, is_finite_permutation, map_stream, MonotoneMap, PeriodicIndexSet,
};
use equistream::swf::periodic_base_sum;
use equistream::swr::{filter_compare, Relation};
use equistream::{MonotoneChain, Rational, Stream, UtilityDomain};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int(n: i64) -> Rational {
    Rational::integer(n)
}

fn values(range: std::ops::Range<i64>, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(range.prop_map(int), len)
}

fn ep() -> impl Strategy<Value = Stream> {
    (values(-3..6, 0..4), values(-3..6, 1..4)).prop_map(|(pre, per)| Stream::periodic(pre, per).unwrap())
}

// A stream and a copy with two coordinates of its preperiod exchanged.
fn swapped() -> impl Strategy<Value = (Stream, Stream)> {
    (values(-3..6, 2..6), values(-3..6, 1..4), any::<prop::sample::Index>(), any::<prop::sample::Index>())
        .prop_map(|(pre, per, i, j)| {
            let x = Stream::periodic(pre.clone(), per.clone()).unwrap();
            let mut pre2 = pre;
            let (i, j) = (i.index(pre2.len()), j.index(pre2.len()));
            pre2.swap(i, j);
            (x, Stream::periodic(pre2, per).unwrap())
        })
}

fn raised(x: &Stream, bumps: &[i64]) -> Stream {
    let bump = |v: &[Rational], off: usize| -> Vec<Rational> {
        v.iter().enumerate().map(|(i, a)| a + &int(bumps[(i + off) % bumps.len()])).collect()
    };
    Stream::periodic(bump(x.pre(), 0), bump(x.period(), 0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn align_preserves_coordinates(x in ep(), y in ep()) {
        let (a, b) = align(&x, &y).unwrap();
        for t in 1..40 {
            prop_assert_eq!(a.coordinate(t).unwrap(), x.coordinate(t).unwrap());
            prop_assert_eq!(b.coordinate(t).unwrap(), y.coordinate(t).unwrap());
        }
    }

    #[test]
    fn difference_set_is_symmetric(x in ep(), y in ep()) {
        let d = difference_set(&x, &y).unwrap();
        let e = difference_set(&y, &x).unwrap();
        prop_assert!(difference_set(&x, &x).unwrap().is_empty());
        for t in 1..60 {
            prop_assert_eq!(d.contains(t), e.contains(t));
            prop_assert_eq!(d.contains(t), x.coordinate(t).unwrap() != y.coordinate(t).unwrap());
        }
    }

    #[test]
    fn finite_permutation_is_an_equivalence((x, y) in swapped(), k in any::<prop::sample::Index>()) {
        prop_assert!(is_finite_permutation(&x, &x).unwrap());
        prop_assert!(is_finite_permutation(&x, &y).unwrap());
        prop_assert!(is_finite_permutation(&y, &x).unwrap());
        // y -> z exchanges y's first coordinate with another preperiod one.
        let mut pre = y.pre().to_vec();
        let k = k.index(pre.len());
        pre.swap(0, k);
        let z = Stream::periodic(pre, y.period().to_vec()).unwrap();
        prop_assert!(is_finite_permutation(&x, &z).unwrap());
    }

    #[test]
    fn dominance_is_a_partial_order(x in ep(), b1 in prop::collection::vec(0i64..3, 1..5), b2 in prop::collection::vec(0i64..3, 1..5)) {
        let y = raised(&x, &b1);
        let z = raised(&y, &b2);
        prop_assert!(dominates(&x, &x).unwrap());
        prop_assert!(dominates(&y, &x).unwrap() && dominates(&z, &y).unwrap());
        prop_assert!(dominates(&z, &x).unwrap());
        if dominates(&x, &y).unwrap() {
            prop_assert!(x.same_coordinates(&y));
        }
    }

    #[test]
    fn monotone_maps_preserve_or_reverse_dominance(x in ep(), bumps in prop::collection::vec(0i64..3, 1..5), scale in 1i64..4) {
        let y = raised(&x, &bumps);
        let all: Vec<Rational> = x.value_set().into_iter().chain(y.value_set()).cloned().collect();
        let up = MonotoneMap::from_fn(&all, |v| &(v * &int(scale)) + &int(7)).unwrap();
        let down = MonotoneMap::from_fn(&all, |v| -(v * &int(scale))).unwrap();
        prop_assert!(dominates(&map_stream(&up, &y).unwrap(), &map_stream(&up, &x).unwrap()).unwrap());
        prop_assert!(dominates(&map_stream(&down, &x).unwrap(), &map_stream(&down, &y).unwrap()).unwrap());
    }

    #[test]
    fn witnesses_are_sound_and_match_brute_force(xs in values(0..4, 1..9), ys_seed in values(0..4, 8..9)) {
        let ys: Vec<Rational> = ys_seed[..xs.len()].to_vec();
        let x = Stream::truncated(xs.clone()).unwrap();
        let y = Stream::truncated(ys.clone()).unwrap();
        for axiom in AxiomTag::PAIRING {
            let found = find_witness(&x, &y, axiom, xs.len()).unwrap();
            let brute = brute_force_witness(&xs, &ys, axiom).unwrap();
            prop_assert_eq!(found.is_verified(), brute.is_some(), "{}", axiom);
            if let Some(alpha) = &found.pairing {
                prop_assert!(validate(alpha, &x, &y, axiom).unwrap().is_verified());
            }
        }
    }

    #[test]
    fn an_independent_pair_preserves_witnesses(xs in values(0..4, 1..7), ys_seed in values(0..4, 6..7)) {
        let ys: Vec<Rational> = ys_seed[..xs.len()].to_vec();
        let Some((dir, _)) = brute_force_witness(&xs, &ys, AxiomTag::GE).unwrap() else {
            return Ok(());
        };
        // A nested spread on fresh values, oriented like the existing witness.
        let (outer, inner) = ([int(10), int(13)], [int(11), int(12)]);
        let (mut xs2, mut ys2) = (xs.clone(), ys.clone());
        let (to_x, to_y) = match dir {
            Direction::XOverY => (inner, outer),
            Direction::YOverX => (outer, inner),
        };
        xs2.extend(to_x);
        ys2.extend(to_y);
        let x = Stream::truncated(xs2).unwrap();
        let y = Stream::truncated(ys2).unwrap();
        let r = find_witness(&x, &y, AxiomTag::GE, xs.len() + 2).unwrap();
        prop_assert!(r.is_verified());
        prop_assert_eq!(r.direction, Some(dir));
    }

    #[test]
    fn two_point_premises_imply_their_generalizations(xs in values(0..5, 2..7), ys_seed in values(0..5, 6..7)) {
        let ys: Vec<Rational> = ys_seed[..xs.len()].to_vec();
        let x = Stream::truncated(xs.clone()).unwrap();
        let y = Stream::truncated(ys).unwrap();
        let t = xs.len();
        let pd = premise_holds(AxiomTag::PD, &x, &y, t).unwrap();
        let se = premise_holds(AxiomTag::SE, &x, &y, t).unwrap();
        if pd.is_verified() {
            prop_assert!(premise_holds(AxiomTag::GPD, &x, &y, t).unwrap().is_verified());
            prop_assert!(se.is_verified());
        }
        if se.is_verified() {
            prop_assert!(premise_holds(AxiomTag::GE, &x, &y, t).unwrap().is_verified());
        }
    }

    #[test]
    fn base_sums_match_partial_sums(
        explicit in prop::collection::btree_set(1usize..8, 0..4),
        period in 1usize..6,
        residues in prop::collection::btree_set(0usize..6, 0..4),
        base in 2u32..4,
    ) {
        let residues: Vec<usize> = residues.into_iter().filter(|&r| r < period).collect();
        let s = PeriodicIndexSet::new(explicit, 8, period, residues).unwrap();
        let exact = periodic_base_sum(&s, base);
        for t in [8usize, 20, 64] {
            let partial = (1..=t)
                .filter(|&n| s.contains(n))
                .fold(Rational::zero(), |acc, n| &acc + &Rational::inverse_power(base, n));
            let gap = &exact - &partial;
            prop_assert!(!gap.is_negative());
            prop_assert!(gap <= Rational::inverse_power(base, t) * int(base as i64));
        }
    }

    #[test]
    fn json_round_trips(x in ep(), pairs in prop::collection::btree_set((1usize..20, 1usize..20), 0..5)) {
        prop_assert_eq!(parse_stream(&stream_to_value(&x).to_string()).unwrap(), x);
        let mut used = std::collections::BTreeSet::new();
        let pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(i, j)| i != j && used.insert(i) && { if used.insert(j) { true } else { used.remove(&i); false } })
            .collect();
        let alpha = PairingFunction::finite(pairs).unwrap();
        prop_assert_eq!(parse_pairing(&pairing_to_value(&alpha).to_string()).unwrap(), alpha);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn leximin_respects_anonymity_and_monotonicity((x, y) in swapped(), bumps in prop::collection::vec(0i64..3, 1..5)) {
        prop_assert_eq!(filter_compare(&x, &y, 200, 50).unwrap().relation, Relation::Equivalent);
        let z = raised(&x, &bumps);
        let rel = filter_compare(&z, &x, 200, 50).unwrap().relation;
        prop_assert!(matches!(rel, Relation::Equivalent | Relation::StrictlyGreater), "{:?}", rel);
    }

    #[test]
    fn certified_verdicts_do_not_change_with_depth(x in ep(), y in ep()) {
        let short = filter_compare(&x, &y, 120, 40).unwrap();
        let long = filter_compare(&x, &y, 480, 40).unwrap();
        if short.certified {
            prop_assert_eq!(short.relation, long.relation);
        }
    }

    #[test]
    fn generated_ge_instances_satisfy_the_implied_premises(seed in any::<u64>()) {
        let config = GeneratorConfig::new((0..6).map(int)).unwrap().with_depth(60);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = generate_instance(AxiomTag::GE, &config, &mut rng).unwrap();
        let ge = find_witness(&inst.better, &inst.worse, AxiomTag::GE, 60).unwrap();
        prop_assert!(ge.is_verified());
        let d = difference_set(&inst.better, &inst.worse).unwrap();
        if !d.is_finite() {
            prop_assert!(find_witness(&inst.better, &inst.worse, AxiomTag::IE, 60).unwrap().is_verified());
        }
        if d.is_everything() {
            prop_assert!(find_witness(&inst.better, &inst.worse, AxiomTag::WE, 60).unwrap().is_verified());
        }
    }

    #[test]
    fn partitions_cover_the_depth(num in 1i64..50, den in 2i64..51, depth in 1usize..300) {
        prop_assume!(num < den);
        let r = Rational::new(num, den);
        let p = partition(&r, depth).unwrap();
        prop_assert!(p.lower.is_disjoint(&p.upper));
        prop_assert_eq!(p.lower.len() + p.upper.len(), depth);
        let mut e = RationalEnumeration::new();
        for &n in &p.lower {
            prop_assert!(e.term(n) < r);
        }
        let bold = p.factorial_lower.len() + p.factorial_upper.len() + p.rest.len();
        prop_assert_eq!(bold, depth);
        prop_assert!(p.factorial_lower.is_disjoint(&p.factorial_upper));
    }

    #[test]
    fn families_are_deterministic(num in 1i64..20, den in 2i64..21) {
        prop_assume!(num < den);
        let r = Rational::new(num, den);
        let v: Vec<Rational> = (0..4).map(int).collect();
        prop_assert_eq!(thm1_family(&r, 200, &v).unwrap(), thm1_family(&r, 200, &v).unwrap());
    }
}

const FORMS: [&str; 6] = ["n", "-n", "1/(n+1)", "-1/(n+1)", "5 - 1/n", "-5 + 1/n"];
const MAPS: [&str; 3] = ["3n - 2", "n/2 + 5", "7n"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn classification_is_invariant_under_increasing_maps(
        mask in 1u32..64,
        finite in prop::collection::btree_set(20i64..30, 0..3),
        which in 0usize..3,
    ) {
        let chains: Vec<MonotoneChain> = FORMS
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| MonotoneChain::parse(f).unwrap())
            .collect();
        let finite = finite.into_iter().map(|k| Rational::new(2 * k + 1, 2));
        let y = UtilityDomain::new(finite, chains).unwrap();
        let wo = is_well_ordered(&y).well_ordered;
        prop_assert!(!(wo && contains_sigma_subset(&y).contains_sigma));
        if let Some(w) = is_well_ordered(&y).witness {
            prop_assert!(w.terms().windows(2).all(|p| p[0] > p[1]));
        }
        let f = IncreasingMap::parse(MAPS[which]).unwrap();
        let image = map_domain(&y, &f).unwrap();
        prop_assert_eq!(classify(&image).class, classify(&y).class);
    }
}
