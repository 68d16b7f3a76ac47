//! Randomized invariants: ring laws, substitution, inversion, symmetries and
//! the translation, reflection and concatenation laws of both path models.

use proptest::prelude::*;

use qag_core::bressoud_paths::{c_poly_enumerated, enumerate_bressoud};
use qag_core::gordon_paths::{enumerate_gordon, g_poly_enumerated};
use qag_core::q_gadgets::{gaussian_binomial, q_multinomial, q_supernomial};
use qag_core::series_core::{series_invert, substitute_inverse_q, ExactInt, LaurentPoly, TruncatedSeries};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-6i64..6, prop::collection::vec(-20i64..20, 0..8))
        .prop_map(|(lo, cs)| LaurentPoly::from_coeffs(lo, cs.into_iter().map(ExactInt::from).collect()))
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (prop::bool::ANY, prop::collection::vec(-5i64..5, 0..10)).prop_map(|(neg, rest)| {
        let mut cs = vec![ExactInt::from(if neg { -1i64 } else { 1 })];
        cs.extend(rest.into_iter().map(ExactInt::from));
        TruncatedSeries::from_coeffs(12, cs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn inverse_substitution_is_an_involutive_homomorphism(a in laurent(), b in laurent()) {
        let inv = substitute_inverse_q;
        prop_assert_eq!(inv(&(&a * &b)), &inv(&a) * &inv(&b));
        prop_assert_eq!(inv(&(&a + &b)), &inv(&a) + &inv(&b));
        prop_assert_eq!(inv(&inv(&a)), a.clone());
        prop_assert_eq!(inv(&a).eval_at_one(), a.eval_at_one());
    }

    #[test]
    fn shift_matches_monomial_product(a in laurent(), k in -8i64..8) {
        prop_assert_eq!(a.shift(k), &a * &LaurentPoly::monomial(k, ExactInt::ONE));
    }

    #[test]
    fn series_inverse_is_two_sided(s in unit_series()) {
        let inv = series_invert(&s).unwrap();
        prop_assert_eq!(s.try_mul(&inv).unwrap(), TruncatedSeries::one(12));
        prop_assert_eq!(series_invert(&inv).unwrap(), s);
    }

    #[test]
    fn binomials_are_symmetric_and_palindromic(n in 0i64..14, k in 0i64..14) {
        let b = gaussian_binomial(n, k);
        prop_assert_eq!(&b, &gaussian_binomial(n, n - k));
        if k <= n {
            let degree = k * (n - k);
            prop_assert_eq!(b.shift(-degree), substitute_inverse_q(&b));
        } else {
            prop_assert!(b.is_zero());
        }
    }

    #[test]
    fn multinomial_reflection(nu in 1usize..4, l in 0i64..6, a in 0i64..16, p in 0i64..4) {
        let p = p.min(nu as i64);
        let top = nu as i64 * l;
        let lhs = q_multinomial(l, a, nu, p);
        let rhs = q_multinomial(l, top - a, nu, nu as i64 - p).shift((nu as i64 - p) * l - a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supernomial_with_single_slot_is_multinomial(nu in 1usize..4, l in 0i64..6, t in 0i64..16) {
        let mut lvec = vec![0; nu];
        lvec[nu - 1] = l;
        let two_a = 2 * t - nu as i64 * l;
        prop_assert_eq!(q_supernomial(&lvec, two_a), q_multinomial(l, t, nu, 0));
    }

    #[test]
    fn bressoud_translation_subtracts_peak_count(
        nu in 1usize..3, l in 0i64..8, s in 0i64..3, b in 0i64..3, m in 0i64..5,
    ) {
        let (s, b) = (s.min(nu as i64), b.min(nu as i64));
        for p in enumerate_bressoud(0, l, s, b, nu, 16).unwrap() {
            let moved = p.translate_left(m);
            let particles = p.content(nu).tail(1);
            prop_assert_eq!(moved.weight(), p.weight() - m * particles);
            prop_assert_eq!(moved.content(nu), p.content(nu));
        }
    }

    #[test]
    fn bressoud_concatenation_at_origin(nu in 1usize..3, m in 0i64..5, rest in 0i64..5, s in 0i64..3, b in 0i64..3) {
        let (s, b) = (s.min(nu as i64), b.min(nu as i64));
        let whole = c_poly_enumerated(-m, rest, s, b, nu, 16).unwrap();
        let joined: LaurentPoly = (0..=nu as i64)
            .map(|c| {
                let left = c_poly_enumerated(-m, 0, s, c, nu, 16).unwrap();
                &left * &c_poly_enumerated(0, rest, c, b, nu, 16).unwrap()
            })
            .sum();
        prop_assert_eq!(whole, joined);
    }

    #[test]
    fn bressoud_reflection(nu in 1usize..3, m in 0i64..7, s in 0i64..3) {
        let s = s.min(nu as i64);
        let left = c_poly_enumerated(-m, 0, 0, s, nu, 16).unwrap();
        let right = c_poly_enumerated(0, m, s, 0, nu, 16).unwrap();
        prop_assert_eq!(left, substitute_inverse_q(&right));
    }

    #[test]
    fn gordon_translation_and_reflection(nu in 1usize..4, l in 0i64..6, s in 0i64..4, b in 0i64..4, m in 0i64..5) {
        let (s, b) = (s.min(nu as i64), b.min(nu as i64));
        for p in enumerate_gordon(0, l, s, b, nu, 16).unwrap() {
            prop_assert_eq!(p.translate_left(m).weight(), p.weight() - m * p.interior_height());
            let r = p.reflect();
            prop_assert!(r.is_valid(nu));
            prop_assert_eq!(r.weight(), -p.weight());
        }
    }

    #[test]
    fn gordon_concatenation_at_origin(nu in 1usize..3, m in 0i64..5, rest in 0i64..5, s in 0i64..3, b in 0i64..3) {
        let (s, b) = (s.min(nu as i64), b.min(nu as i64));
        let whole = g_poly_enumerated(-m, rest, s, b, nu, 16).unwrap();
        let joined: LaurentPoly = (0..=nu as i64)
            .map(|c| {
                let left = g_poly_enumerated(-m, 0, s, c, nu, 16).unwrap();
                &left * &g_poly_enumerated(0, rest, c, b, nu, 16).unwrap()
            })
            .sum();
        prop_assert_eq!(whole, joined);
    }
}
