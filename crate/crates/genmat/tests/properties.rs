//! Property-based checks of the algebraic laws the crate relies on:
//! ring axioms for polynomials and truncated series, compatibility of
//! truncation with products, the four-component multiplication law
//! (associativity, distributivity, antisymmetry, Jacobi), agreement with
//! the generic-matrix representation, and membership recovery.

use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;

use genmat::lie::{lie_membership, LieDecomp};
use genmat::mat2::Gen;
use genmat::poly::{Poly, VarSpec};
use genmat::rat::{rat, rat_int, Rat};
use genmat::series::TruncSeries;
use genmat::uniseries::UniSeries;
use genmat::walg::{from_word, w_bracket, w_mul, WElement};

const ORDER: u32 = 8;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    vec((vec(0u16..=2, 3), arb_rat()), 0..4).prop_map(|terms| {
        let vars = VarSpec::tuv();
        let mut p = Poly::zero(&vars);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    })
}

fn arb_series() -> impl Strategy<Value = TruncSeries> {
    arb_poly().prop_map(|p| TruncSeries::new(p, ORDER))
}

fn arb_unit_series() -> impl Strategy<Value = TruncSeries> {
    (arb_nonzero_rat(), arb_poly()).prop_map(|(c0, p)| {
        let mut p = p;
        p.add_term(vec![0, 0, 0], c0);
        // The added term could cancel an existing constant; force it back.
        if p.constant_term().is_zero() {
            p.add_term(vec![0, 0, 0], rat_int(1));
        }
        TruncSeries::new(p, ORDER)
    })
}

fn arb_welement() -> impl Strategy<Value = WElement> {
    (arb_poly(), arb_poly(), arb_poly(), arb_poly())
        .prop_map(|(p0, px, py, pz)| WElement::from_polys(p0, px, py, pz, ORDER))
}

fn arb_word() -> impl Strategy<Value = Vec<Gen>> {
    vec(prop_oneof![Just(Gen::X), Just(Gen::Y)], 1..=3)
}

fn arb_small_poly() -> impl Strategy<Value = Poly> {
    vec((vec(0u16..=1, 3), arb_rat()), 0..3).prop_map(|terms| {
        let vars = VarSpec::tuv();
        let mut p = Poly::zero(&vars);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    })
}

/// An element whose order is high enough that products of two of them
/// never truncate, so the generic-matrix embedding is exact.
fn arb_deep_welement() -> impl Strategy<Value = WElement> {
    (arb_small_poly(), arb_small_poly(), arb_small_poly(), arb_small_poly())
        .prop_map(|(p0, px, py, pz)| WElement::from_polys(p0, px, py, pz, 20))
}

fn arb_uni() -> impl Strategy<Value = UniSeries> {
    (arb_nonzero_rat(), vec(arb_rat(), 7)).prop_map(|(c1, rest)| {
        let mut coeffs = vec![rat_int(0), c1];
        coeffs.extend(rest);
        UniSeries::new(coeffs, ORDER)
    })
}

proptest! {
    #[test]
    fn poly_addition_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn poly_multiplication_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn poly_multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn poly_multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn poly_quotient_reduction_is_idempotent(a in arb_poly(), k in 1u32..4) {
        let once = a.reduce_mod_omega(k);
        prop_assert_eq!(once.reduce_mod_omega(k), once);
    }

    #[test]
    fn series_inverse_is_a_right_inverse(s in arb_unit_series()) {
        let inv = s.inverse().unwrap();
        let product = &inv * &s;
        let one = TruncSeries::one(s.vars(), ORDER);
        prop_assert!(product.eq_to_order(&one, ORDER));
    }

    #[test]
    fn series_division_round_trips(s in arb_series()) {
        prop_assume!(!s.is_zero());
        let vars = s.vars().clone();
        let t = Poly::var(&vars, 0);
        let u = Poly::var(&vars, 1);
        let v = Poly::var(&vars, 2);
        let disc = &(&v * &v) - &(&t * &u);
        for den in [disc, &t * &t] {
            let recovered = s.mul_poly(&den).exact_div(&den).unwrap();
            prop_assert_eq!(&recovered, &s);
        }
    }

    #[test]
    fn truncation_commutes_with_products(a in arb_series(), b in arb_series(), k in 0u32..=ORDER) {
        let direct = (&a * &b).truncated(k);
        let truncated_first = (&a.truncated(k) * &b.truncated(k)).truncated(k);
        prop_assert_eq!(direct.poly(), truncated_first.poly());
    }

    #[test]
    fn uniseries_reversion_composes_to_the_identity(s in arb_uni()) {
        let r = s.reverse();
        prop_assert_eq!(s.compose(&r), UniSeries::var(ORDER));
        prop_assert_eq!(r.compose(&s), UniSeries::var(ORDER));
    }

    #[test]
    fn bracket_is_antisymmetric(p in arb_welement(), q in arb_welement()) {
        let pq = w_bracket(&p, &q).unwrap();
        let qp = w_bracket(&q, &p).unwrap();
        prop_assert!((&pq + &qp).is_zero());
    }

    #[test]
    fn words_concatenate_multiplicatively(w1 in arb_word(), w2 in arb_word()) {
        let vars = VarSpec::tuv();
        let mut joined = w1.clone();
        joined.extend_from_slice(&w2);
        let product = w_mul(&from_word(&vars, &w1, ORDER), &from_word(&vars, &w2, ORDER)).unwrap();
        prop_assert_eq!(from_word(&vars, &joined, ORDER), product);
    }

    #[test]
    fn membership_recovers_the_decomposition(
        alpha in arb_rat(),
        beta in arb_rat(),
        a in arb_poly(),
        b in arb_poly(),
        c in arb_poly(),
    ) {
        let d = LieDecomp::from_polys(alpha, beta, a, b, c, ORDER);
        let m = lie_membership(&d.to_welement()).unwrap();
        prop_assert_eq!(m.alpha(), d.alpha());
        prop_assert_eq!(m.beta(), d.beta());
        prop_assert_eq!(m.a(), d.a());
        prop_assert_eq!(m.b(), d.b());
        prop_assert_eq!(m.c(), d.c());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_associates(p in arb_welement(), q in arb_welement(), r in arb_welement()) {
        let left = w_mul(&w_mul(&p, &q).unwrap(), &r).unwrap();
        let right = w_mul(&p, &w_mul(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(p in arb_welement(), q in arb_welement(), r in arb_welement()) {
        let left = w_mul(&p, &(&q + &r)).unwrap();
        let right = &w_mul(&p, &q).unwrap() + &w_mul(&p, &r).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn jacobi_identity_holds(p in arb_welement(), q in arb_welement(), r in arb_welement()) {
        let pq_r = w_bracket(&w_bracket(&p, &q).unwrap(), &r).unwrap();
        let qr_p = w_bracket(&w_bracket(&q, &r).unwrap(), &p).unwrap();
        let rp_q = w_bracket(&w_bracket(&r, &p).unwrap(), &q).unwrap();
        prop_assert!((&(&pq_r + &qr_p) + &rp_q).is_zero());
    }

    #[test]
    fn generic_matrices_represent_products(p in arb_deep_welement(), q in arb_deep_welement()) {
        let product = w_mul(&p, &q).unwrap();
        prop_assert_eq!(
            product.eval_generic(),
            &p.eval_generic() * &q.eval_generic()
        );
    }
}
