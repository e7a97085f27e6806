use bridgestate::invariants::DEFAULT_ORACLE_MAX_K;
use bridgestate::verify::{
    apply_move, check_invariance, invariant_multiset, random_expansion, random_moves, verify_knot, Move,
    VerifyConfig,
};
use bridgestate::{
    full_report, gl_matrix, poly_equivalent, state_polynomial, state_polynomial_oracle, state_signature,
    state_signature_minors, Expansion, Fraction, StateMatrix, TwoBridgeKnot,
};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn recurrence_matches_cofactors_on_small_surfaces() {
    let mut checked = 0;
    for knot in TwoBridgeKnot::census(60) {
        for s in knot.surfaces() {
            if s.expansion.len() > DEFAULT_ORACLE_MAX_K {
                continue;
            }
            let v = StateMatrix::standard(&s.expansion);
            let oracle = state_polynomial_oracle(&v, DEFAULT_ORACLE_MAX_K).unwrap();
            assert_eq!(oracle, state_polynomial(&s.expansion).raw(), "{knot} {}", s.expansion);
            checked += 1;
        }
    }
    assert!(checked > 2500, "{checked}");
}

#[test]
fn recurrence_matches_cofactors_on_random_expansions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let e = random_expansion(&mut rng, 8, 12);
        let oracle = state_polynomial_oracle(&StateMatrix::standard(&e), 8).unwrap();
        assert_eq!(oracle, state_polynomial(&e).raw(), "{e}");
    }
}

#[test]
fn random_moves_preserve_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let e = random_expansion(&mut rng, 7, 9);
        let moves = random_moves(&mut rng, e.len(), 6);
        check_invariance(&e, &moves, 8).unwrap();
    }
}

#[test]
fn relabeling_is_a_simultaneous_permutation() {
    let e = Expansion::new(vec![3, -2, 4]).unwrap();
    let v = StateMatrix::standard(&e);
    let w = apply_move(&v, &Move::Relabel(vec![2, 0, 1])).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(w.entry(i, j), v.entry([2, 0, 1][i], [2, 0, 1][j]));
        }
    }
    assert!(!gl_matrix(&w).is_tridiagonal());
    assert_eq!(state_signature_minors(&w).unwrap(), state_signature(&e));
    assert!(apply_move(&v, &Move::Relabel(vec![0, 0, 1])).is_err());
    assert!(apply_move(&v, &Move::Relabel(vec![0, 1])).is_err());
}

#[test]
fn presentation_independence_up_to_99() {
    for knot in TwoBridgeKnot::census(99) {
        let other = knot.inverse_presentation();
        let a = invariant_multiset(&full_report(&knot).unwrap());
        let b = invariant_multiset(&full_report(&other).unwrap());
        assert_eq!(a, b, "{knot} vs {other}");
    }
}

#[test]
fn mirror_negates_signatures_and_slopes() {
    for knot in TwoBridgeKnot::census(99) {
        let (r, m) = (full_report(&knot).unwrap(), full_report(&knot.mirror()).unwrap());
        assert_eq!(r.knot_signature, -m.knot_signature);
        let mut flipped: Vec<_> =
            invariant_multiset(&m).into_iter().map(|(p, s, sl)| (p, -s, -sl)).collect();
        flipped.sort_by_cached_key(|x| (x.1, x.2, x.0.to_string()));
        assert_eq!(invariant_multiset(&r), flipped, "{knot}");
    }
}

#[test]
fn verify_passes_up_to_45() {
    let cfg = VerifyConfig::default();
    for knot in TwoBridgeKnot::census(45) {
        if let Err(f) = verify_knot(&knot, &cfg) {
            panic!("{f}");
        }
    }
}

#[test]
fn determinant_equals_alpha_on_long_surfaces() {
    // Twist knots and torus knots carry the longest expansions.
    for alpha in [201i64, 301, 401, 499] {
        let r = full_report(&TwoBridgeKnot::new(alpha, 1).unwrap()).unwrap();
        for s in &r.surfaces {
            assert_eq!(s.state_polynomial.abs_value_at_minus_one(), Fraction::from(alpha));
        }
        assert_eq!(r.genus_twice, alpha as usize - 1);
    }
}

fn arb_expansion() -> impl Strategy<Value = Expansion> {
    prop::collection::vec((2i64..15, any::<bool>()), 1..40)
        .prop_map(|v| Expansion::new(v.into_iter().map(|(n, s)| if s { n } else { -n }).collect()).unwrap())
}

proptest! {
    #[test]
    fn polynomial_identities_on_any_expansion(e in arb_expansion()) {
        let p = state_polynomial(&e);
        let k = e.len();
        let raw = p.raw();
        let canonical = p.canonical();
        prop_assert_eq!(canonical.reciprocal_substitute().canonical(), canonical.clone());
        prop_assert_eq!(raw.degree_span(), Some(k));
        let at_one = raw.eval(&Fraction::from(1)).unwrap();
        prop_assert_eq!(at_one, Fraction::from(if k % 2 == 0 { 1 } else { 0 }));
        let product: BigInt = e.terms().iter().map(|&n| BigInt::from(n)).product();
        let extreme = Fraction::dyadic(product.abs(), k as u64);
        prop_assert_eq!(canonical.leading_coefficient().unwrap().abs(), extreme.clone());
        prop_assert_eq!(canonical.lowest_coefficient().unwrap().abs(), extreme);
        prop_assert!(canonical.scale(&Fraction::from(2).pow(k as i32).unwrap()).is_integral());
        if e.all_even() {
            prop_assert!(canonical.is_integral());
        }
    }

    #[test]
    fn signature_identities_on_any_expansion(e in arb_expansion()) {
        let sigma = state_signature(&e);
        prop_assert_eq!(state_signature_minors(&StateMatrix::standard(&e)).unwrap(), sigma);
        prop_assert!(sigma.unsigned_abs() as usize <= e.len());
        prop_assert_eq!((sigma - e.len() as i64).rem_euclid(2), 0);
    }

    #[test]
    fn oracle_agrees_up_to_unit_after_moves(e in prop::collection::vec((2i64..9, any::<bool>()), 1..7), seed in any::<u64>()) {
        let e = Expansion::new(e.into_iter().map(|(n, s)| if s { n } else { -n }).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moves = random_moves(&mut rng, e.len(), 5);
        let mut v = StateMatrix::standard(&e);
        for m in &moves {
            v = apply_move(&v, m).unwrap();
        }
        let got = state_polynomial_oracle(&v, 8).unwrap();
        prop_assert!(poly_equivalent(&got, &state_polynomial(&e).canonical()));
    }
}
