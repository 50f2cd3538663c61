mod common;

use common::{field, poly, random_invertible, random_linear_change, random_nonzero, random_poly, FIXTURES};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slc_core::classifier::{classify_mld, classify_slc, verify, MldValue};
use slc_core::normalize::Step;
use slc_core::{Error, Field, Monomial, TriPoly, Weight};

const PRIMES: [u64; 6] = [0, 2, 3, 5, 7, 11];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn poly_strategy(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0..=max_deg, 0..=max_deg, 0..=max_deg], -6i64..=6), 0..=max_terms)
}

fn build(k: &Field, terms: &[([u32; 3], i64)]) -> TriPoly {
    let mut f = TriPoly::zero(k);
    for (e, c) in terms {
        f.add_term(Monomial(*e), k.from_i64(*c));
    }
    f
}

fn weight_strategy() -> impl Strategy<Value = Weight> {
    [0u64..=6, 0u64..=6, 0u64..=6].prop_filter("nonzero weight", |w| w.iter().any(|&c| c > 0)).prop_map(Weight)
}

fn local_image(k: &Field, terms: &[([u32; 3], i64)]) -> TriPoly {
    let mut g = build(k, terms);
    g.add_term(Monomial([0, 0, 0]), k.neg(&g.constant_term()));
    g
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn ord_w_and_in_w_are_multiplicative(
        p in prop::sample::select(PRIMES.to_vec()),
        a in poly_strategy(5, 4),
        b in poly_strategy(5, 4),
        w in weight_strategy(),
    ) {
        let k = field(p);
        let (f, g) = (build(&k, &a), build(&k, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g);
        prop_assert_eq!(fg.ord_w(&w), Some(f.ord_w(&w).unwrap() + g.ord_w(&w).unwrap()));
        prop_assert_eq!(fg.in_w(&w), f.in_w(&w).mul(&g.in_w(&w)));
        prop_assert_eq!(f.in_w(&w).in_w(&w), f.in_w(&w));
        prop_assert!(f.in_w(&w).is_weighted_homogeneous(&w));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in prop::sample::select(PRIMES.to_vec()),
        a in poly_strategy(4, 3),
        b in poly_strategy(4, 3),
        images in [poly_strategy(3, 2), poly_strategy(3, 2), poly_strategy(3, 2)],
        c in -5i64..=5,
    ) {
        let k = field(p);
        let (f, g) = (build(&k, &a), build(&k, &b));
        let imgs: [TriPoly; 3] = core::array::from_fn(|i| local_image(&k, &images[i]));
        let phi = |h: &TriPoly| h.substitute(&imgs).unwrap();
        prop_assert_eq!(phi(&f.add(&g)), phi(&f).add(&phi(&g)));
        prop_assert_eq!(phi(&f.mul(&g)), phi(&f).mul(&phi(&g)));
        let c = TriPoly::constant(&k, k.from_i64(c));
        prop_assert_eq!(phi(&c), c);
    }

    #[test]
    fn random_verdicts_replay(seed in any::<u64>(), pi in 1usize..PRIMES.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = field(PRIMES[pi]);
        let fx = &FIXTURES[rng.gen_range(0..FIXTURES.len())];
        // perturbations of a fixture in a random frame reach every branch
        let base = if fx.char == PRIMES[pi] { poly(fx.char, fx.poly) } else { random_poly(&mut rng, &k, 3, 2, 3) };
        let tail = random_poly(&mut rng, &k, 3, 3, 6);
        let f = random_linear_change(&mut rng, &base.add(&tail));
        prop_assume!(!f.is_zero());
        let v = classify_mld(&f).unwrap();
        prop_assert!(verify(&v).is_empty(), "{}: {:?}", f, verify(&v));
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn verdicts_are_invariant_under_linear_changes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for fx in FIXTURES.iter().filter(|fx| fx.char != 0) {
            let f = poly(fx.char, fx.poly);
            let k = f.field().clone();
            let g = Step::Linear(random_invertible(&mut rng, &k)).apply(&f, None).unwrap();
            let g = g.scale(&random_nonzero(&mut rng, &k));
            let (a, b) = (classify_mld(&f).unwrap(), classify_mld(&g).unwrap());
            prop_assert_eq!(a.mld, b.mld, "{} vs {}", f, g);
            if f.in_maximal_ideal() {
                prop_assert_eq!(classify_slc(&f).unwrap().slc, classify_slc(&g).unwrap().slc);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn initial_forms_have_smaller_mld(seed in any::<u64>(), w in weight_strategy()) {
        prop_assume!(w.is_positive());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fx = &FIXTURES[rng.gen_range(0..FIXTURES.len())];
        let k = field(fx.char);
        let f = poly(fx.char, fx.poly).add(&random_poly(&mut rng, &k, 2, 2, 5));
        prop_assume!(f.in_maximal_ideal() && !f.is_zero());
        let g = f.in_w(&w);
        match (classify_mld(&f), classify_mld(&g)) {
            (Ok(a), Ok(b)) => prop_assert!(a.mld >= b.mld, "{} ({:?}) vs in_{} = {} ({:?})", f, a.mld, w, g, b.mld),
            (Err(Error::NeedsAlgebraicExtension { .. }), _) | (_, Err(Error::NeedsAlgebraicExtension { .. })) => {}
            (a, b) => prop_assert!(false, "{:?} {:?}", a.err(), b.err()),
        }
    }
}

/// Adds monomials above every weighted threshold read along the branch.
#[test]
fn high_weight_perturbations_keep_the_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fx in FIXTURES {
        let f = poly(fx.char, fx.poly);
        let k = f.field().clone();
        let v = classify_mld(&f).unwrap();
        if f.ord().unwrap() < 2 {
            continue;
        }
        let mut tested = 0;
        while tested < 20 {
            let d = rng.gen_range(2..=9u32);
            let a = rng.gen_range(0..=d);
            let b = rng.gen_range(0..=d - a);
            let m = Monomial([a, b, d - a - b]);
            let above = v.inspected.iter().all(|(w, t)| m.weighted_degree(w) > *t);
            if !above {
                continue;
            }
            tested += 1;
            let g = f.add(&TriPoly::term(&k, random_nonzero(&mut rng, &k), m));
            let u = classify_mld(&g).unwrap();
            assert_eq!(u.mld, v.mld, "{} + {m}", fx.poly);
            assert_eq!(u.witness.unwrap().weight(), v.witness.unwrap().weight(), "{} + {m}", fx.poly);
        }
    }
}

#[test]
fn mld_values_are_in_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let k = field(PRIMES[rng.gen_range(1..PRIMES.len())]);
        let f = random_poly(&mut rng, &k, 4, 0, 5);
        if f.is_zero() {
            continue;
        }
        let v = classify_mld(&f).unwrap();
        assert!(matches!(v.mld, MldValue::NegInfinity | MldValue::Finite(0..=3)));
    }
}
