//! Values checked against independent oracles: q-Pascal, classical
//! multinomials, brute-force partition counts and sample paths.

use qag_core::bressoud_paths::{b_poly, c_poly_enumerated, enumerate_bressoud};
use qag_core::identity_engine::{
    ag_multisum, multisum_truncation_bound, restricted_product_series, supernomial_i, verify,
    EngineOptions, Identity, IdentityCase, Params, Status, HEAD_LEN,
};
use qag_core::q_gadgets::{central_limit, gaussian_binomial, inverse_euler, q_multinomial, CentralLimit};
use qag_core::series_core::{series_invert, ExactInt, LaurentPoly, TruncatedSeries};
use qag_core::Error;

fn ints(cs: &[i128]) -> Vec<ExactInt> {
    cs.iter().map(|&c| ExactInt::new(c)).collect()
}

/// `[n, k]` row by row from `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
fn pascal(n: usize) -> Vec<Vec<LaurentPoly>> {
    let mut rows = vec![vec![LaurentPoly::one()]];
    for top in 1..=n {
        let prev = &rows[top - 1];
        let row = (0..=top)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { LaurentPoly::zero() };
                let right = if k < top { prev[k].shift(k as i64) } else { LaurentPoly::zero() };
                &left + &right
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Partitions of `n` into parts from `allowed`, by explicit recursion.
fn count_partitions(n: i64, max_part: i64, allowed: &dyn Fn(i64) -> bool) -> i128 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n))
        .filter(|&p| allowed(p))
        .map(|p| count_partitions(n - p, p, allowed))
        .sum()
}

fn partition_series(q: i64, allowed: &dyn Fn(i64) -> bool) -> Vec<ExactInt> {
    (0..=q).map(|n| ExactInt::new(count_partitions(n, n, allowed))).collect()
}

#[test]
fn gaussian_binomial_agrees_with_pascal() {
    let rows = pascal(14);
    for (n, row) in rows.iter().enumerate() {
        for (k, expected) in row.iter().enumerate() {
            assert_eq!(&gaussian_binomial(n as i64, k as i64), expected, "[{n}, {k}]");
        }
    }
    assert_eq!(gaussian_binomial(4, 2).to_string(), "1 + q + 2q^2 + q^3 + q^4");
    assert!(gaussian_binomial(3, 5).is_zero());
    assert!(gaussian_binomial(-2, 0).is_zero());
}

/// Coefficients of `(1 + x + ... + x^nu)^L`.
fn classical_multinomials(nu: usize, l: usize) -> Vec<i128> {
    let mut row = vec![1i128];
    for _ in 0..l {
        let mut next = vec![0i128; row.len() + nu];
        for (i, &c) in row.iter().enumerate() {
            for slot in &mut next[i..=i + nu] {
                *slot += c;
            }
        }
        row = next;
    }
    row
}

#[test]
fn multinomials_reduce_to_classical_at_q_one() {
    for nu in 1..=4usize {
        for l in 0..=7usize {
            let classical = classical_multinomials(nu, l);
            for (a, &c) in classical.iter().enumerate() {
                for p in 0..=nu as i64 {
                    let v = q_multinomial(l as i64, a as i64, nu, p).eval_at_one();
                    assert_eq!(v.get(), c, "nu={nu} L={l} a={a} p={p}");
                }
            }
        }
    }
}

#[test]
fn fibonacci_from_inverse() {
    let s = TruncatedSeries::from_coeffs(20, ints(&[1, -1, -1]));
    let inv = series_invert(&s).unwrap();
    let mut fib = vec![1i128, 1];
    while fib.len() < 21 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    assert_eq!(inv.coeffs(), ints(&fib).as_slice());
    let not_unit = TruncatedSeries::from_coeffs(5, ints(&[2, 1]));
    assert!(matches!(series_invert(&not_unit), Err(Error::NonUnitConstant(2))));
}

#[test]
fn euler_inverse_counts_partitions() {
    let expected = partition_series(25, &|_| true);
    assert_eq!(inverse_euler(25).coeffs(), expected.as_slice());
}

#[test]
fn restricted_products_count_restricted_partitions() {
    assert_eq!(restricted_product_series(1, 2, 6).unwrap().coeffs(), ints(&[1, 1, 1, 1, 2, 2, 3]).as_slice());
    assert_eq!(restricted_product_series(1, 1, 4).unwrap().coeffs(), ints(&[1, 0, 1, 1, 1]).as_slice());
    for nu in 1..=3usize {
        assert_eq!(restricted_product_series(nu, 1, 0).unwrap().coeffs(), ints(&[1]).as_slice());
        let k = 2 * nu as i64 + 3;
        for s in 1..=2 * nu as i64 + 2 {
            let allowed = |p: i64| {
                let r = p.rem_euclid(k);
                r != 0 && r != s && r != k - s
            };
            let expected = partition_series(18, &allowed);
            assert_eq!(restricted_product_series(nu, s, 18).unwrap().coeffs(), expected.as_slice());
        }
    }
    assert!(restricted_product_series(1, 0, 4).is_err());
    assert!(restricted_product_series(1, 5, 4).is_err());
}

#[test]
fn andrews_gordon_against_partition_counts() {
    // parts = +-1 mod 5 and parts = +-2 mod 5
    let mod5 = |bad: [i64; 3]| move |p: i64| !bad.contains(&p.rem_euclid(5));
    let rr1 = partition_series(30, &mod5([0, 2, 3]));
    assert_eq!(ag_multisum(1, 1, 30).coeffs(), rr1.as_slice());
    let rr2 = partition_series(30, &mod5([0, 1, 4]));
    assert_eq!(ag_multisum(1, 0, 30).coeffs(), rr2.as_slice());
    let mod7 = |p: i64| ![0, 3, 4].contains(&p.rem_euclid(7));
    assert_eq!(ag_multisum(2, 2, 20).coeffs(), partition_series(20, &mod7).as_slice());
    assert_eq!(ag_multisum(3, 0, 0).coeffs(), ints(&[1]).as_slice());
}

#[test]
fn truncation_bound_examples() {
    assert_eq!(multisum_truncation_bound(1, 0, 9), 4);
    assert_eq!(multisum_truncation_bound(1, 3, 20), 9);
    assert!(multisum_truncation_bound(3, 0, 0) <= 2);
}

#[test]
fn b_polynomials_tend_to_products() {
    for nu in 1..=2usize {
        let nu_i = nu as i64;
        for s in 1..=2 * nu_i + 2 {
            let q = 20;
            let product = restricted_product_series(nu, s, q as usize).unwrap().to_laurent();
            // L + (nu + 1) + s must be even
            for l in [2 * q + 10, 2 * q + 11] {
                if (l + nu_i + 1 + s) % 2 != 0 {
                    continue;
                }
                let b = b_poly(nu, s, nu_i + 1, l).truncate_above(q);
                assert_eq!(b, product, "nu={nu} s={s} L={l}");
            }
        }
    }
}

#[test]
fn central_multinomial_limits() {
    let euler = inverse_euler(8).to_laurent();
    assert_eq!(central_limit(2, 0, 1, 8), CentralLimit::Stable(euler.clone()));
    assert_eq!(central_limit(3, 1, 0, 8), CentralLimit::Stable(euler.clone()));
    let with_a = (&euler + &euler.shift(2)).truncate_above(8);
    assert_eq!(central_limit(2, 1, 2, 8), CentralLimit::Stable(with_a));
    assert!(matches!(central_limit(2, 2, 1, 8), CentralLimit::NoLimit { .. }));
    assert!(matches!(central_limit(3, 2, 0, 8), CentralLimit::NoLimit { .. }));
}

#[test]
fn supernomial_family_reduces_to_b() {
    for nu in 1..=2usize {
        let nu_i = nu as i64;
        for l in 0..=6 {
            let mut lvec = vec![0; nu];
            lvec[0] = l;
            for s in 1..=2 * nu_i + 2 {
                for b in 0..=nu_i + 1 {
                    assert_eq!(supernomial_i(nu, s, b, &lvec), b_poly(nu, s, b, l), "nu={nu} L={l} s={s} b={b}");
                }
            }
        }
    }
    assert_eq!(supernomial_i(2, 3, 3, &[0, 0]), LaurentPoly::one());
}

#[test]
fn enumeration_respects_cap() {
    assert!(matches!(
        enumerate_bressoud(0, 30, 0, 0, 1, 16),
        Err(Error::EnumerationTooLarge { span: 30, cap: 16 })
    ));
    // three paths of length 2 from height 0 back to 0 when nu = 1: HH, NE SE
    assert_eq!(c_poly_enumerated(0, 2, 0, 0, 1, 16).unwrap(), LaurentPoly::from_terms([(0, 1i64), (1, 1)]));
}

fn case(identity: Identity, params: Params) -> IdentityCase {
    IdentityCase::new(identity, params)
}

fn p() -> Params {
    Params::default()
}

#[test]
fn documented_examples_pass() {
    let opts = EngineOptions::default();
    let cases = [
        case(Identity::FodaQuanoKirillov, Params { nu: Some(2), s: Some(1), l: Some(8), ..p() }),
        case(Identity::Variant1Finite, Params { nu: Some(1), m: Some(1), l: Some(3), ..p() }),
        case(Identity::Variant1Finite, Params { nu: Some(2), m: Some(2), l: Some(5), ..p() }),
        case(Identity::Variant1Finite, Params { nu: Some(2), m: Some(0), l: Some(6), ..p() }),
        case(Identity::Variant1Series, Params { nu: Some(1), m: Some(1), q: Some(30), ..p() }),
        case(Identity::Variant1Series, Params { nu: Some(2), m: Some(3), q: Some(25), ..p() }),
        case(Identity::Variant1Series, Params { nu: Some(2), m: Some(0), q: Some(25), ..p() }),
        case(Identity::Variant2Finite, Params { nu: Some(1), s: Some(1), b: Some(1), m: Some(1), l: Some(4), ..p() }),
        case(Identity::Variant2Finite, Params { nu: Some(2), s: Some(0), b: Some(0), m: Some(2), l: Some(5), ..p() }),
        case(Identity::Variant2Series, Params { nu: Some(1), s: Some(1), m: Some(1), q: Some(30), ..p() }),
        case(Identity::Variant2Series, Params { nu: Some(2), s: Some(1), m: Some(0), q: Some(25), ..p() }),
        case(Identity::SpecialM1, Params { nu: Some(2), s: Some(2), q: Some(25), ..p() }),
        case(Identity::AndrewsGordon, Params { nu: Some(1), s: Some(1), q: Some(40), ..p() }),
        case(Identity::Conjecture, Params { nu: Some(2), mvec: Some(vec![2, 1]), q: Some(20), ..p() }),
        case(Identity::WarnaarPolynomial, Params { nu: Some(2), s: Some(1), b: Some(2), l: Some(6), ..p() }),
        case(Identity::BressoudDictionary, Params { nu: Some(3), s: Some(2), b: Some(1), l: Some(9), ..p() }),
        case(Identity::GordonDictionary, Params { nu: Some(2), s: Some(0), b: Some(1), l: Some(5), ..p() }),
        case(Identity::GordonFermionic, Params { nu: Some(2), s: Some(2), b: Some(0), l: Some(5), ..p() }),
        case(Identity::ParticleBijection, Params { nu: Some(2), s: Some(1), b: Some(1), l: Some(5), ..p() }),
    ];
    for c in cases {
        let r = verify(&c, &opts).unwrap();
        assert_eq!(r.status, Status::Pass, "{} {}: {:?}", c.identity, c.params, r);
        assert!(r.first_mismatch_order.is_none());
        assert_eq!(r.lhs_head, r.rhs_head);
    }
}

#[test]
fn failing_report_locates_the_mismatch() {
    let c = case(Identity::Conjecture, Params { nu: Some(2), mvec: Some(vec![0, 1]), q: Some(20), ..p() });
    let r = verify(&c, &EngineOptions::default()).unwrap();
    assert_eq!(r.status, Status::Fail);
    let at = r.first_mismatch_order.expect("mismatch order present");
    assert_eq!(at, 1);
    let offset = (at - r.excerpt_start) as usize;
    assert!(offset < HEAD_LEN);
    assert_ne!(r.lhs_head[offset], r.rhs_head[offset]);
    assert_eq!(r.lhs_head[..offset], r.rhs_head[..offset]);
}

#[test]
fn invalid_parameters_are_rejected() {
    let opts = EngineOptions::default();
    let bad = [
        case(Identity::AndrewsGordon, Params { nu: Some(2), s: Some(3), q: Some(5), ..p() }),
        case(Identity::AndrewsGordon, Params { nu: Some(2), s: Some(1), ..p() }),
        case(Identity::FodaQuanoKirillov, Params { nu: Some(2), s: Some(0), l: Some(4), ..p() }),
        case(Identity::WarnaarPolynomial, Params { nu: Some(2), s: Some(0), b: Some(0), l: Some(1), ..p() }),
        case(Identity::Variant1Finite, Params { nu: Some(1), m: Some(4), l: Some(3), ..p() }),
        case(Identity::Conjecture, Params { nu: Some(3), mvec: Some(vec![1, 0]), q: Some(5), ..p() }),
        case(Identity::Variant1Series, Params { nu: Some(0), m: Some(1), q: Some(5), ..p() }),
    ];
    for c in bad {
        assert!(matches!(verify(&c, &opts), Err(Error::InvalidParameter(_))), "{} {}", c.identity, c.params);
    }
}

#[test]
fn parity_filter_can_be_disabled() {
    let opts = EngineOptions { parity_filter: false, ..EngineOptions::default() };
    let c = case(Identity::Variant1Series, Params { nu: Some(1), m: Some(2), q: Some(15), ..p() });
    let r = verify(&c, &opts).unwrap();
    assert!(r.note.as_deref().unwrap_or("").starts_with("parity filter disabled"));
}
