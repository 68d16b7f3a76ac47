//! Gaussian binomials, q-multinomials and q-supernomials.

use crate::series_core::{inverse_q_pochhammer, ExactInt, LaurentPoly, TruncatedSeries};

/// Gaussian binomial `[top, bottom]`: `(q)_top / ((q)_bottom (q)_(top-bottom))`
/// when `0 <= bottom <= top`, and zero otherwise (so `[m, 0] = 0` for `m < 0`).
pub fn gaussian_binomial(top: i64, bottom: i64) -> LaurentPoly {
    if bottom < 0 || bottom > top {
        return LaurentPoly::zero();
    }
    let k = bottom.min(top - bottom) as usize;
    let rest = (top as usize) - k;
    // room for the intermediate product before each exact division
    let mut c = vec![ExactInt::ZERO; k * rest + k + 1];
    c[0] = ExactInt::ONE;
    let mut deg = 0usize;
    for i in 1..=k {
        // multiply by (1 - q^(rest+i)), then divide exactly by (1 - q^i)
        let up = rest + i;
        for e in (up..=deg + up).rev() {
            let below = c[e - up];
            c[e] -= below;
        }
        deg += up;
        for e in i..=deg {
            let carry = c[e - i];
            c[e] += carry;
        }
        deg -= i;
    }
    c.truncate(deg + 1);
    LaurentPoly::from_coeffs(0, c)
}

/// Product `prod [top_i, bottom_i]`, short-circuiting on a zero factor.
pub fn binomial_product<I>(factors: I) -> LaurentPoly
where
    I: IntoIterator<Item = (i64, i64)>,
{
    let mut acc = LaurentPoly::one();
    for (top, bottom) in factors {
        if bottom < 0 || bottom > top {
            return LaurentPoly::zero();
        }
        if bottom == 0 || bottom == top {
            continue;
        }
        acc = &acc * &gaussian_binomial(top, bottom);
    }
    acc
}

/// Visits every chain `top >= j_nu >= ... >= j_1 >= 0` with `sum j = total`,
/// in lexicographic order of `(j_nu, ..., j_1)`. The slice passed to `f` is
/// indexed `j[0] = j_1, ..., j[nu-1] = j_nu`.
fn for_each_chain(nu: usize, top: i64, total: i64, f: &mut impl FnMut(&[i64])) {
    fn rec(level: usize, cap: i64, rem: i64, j: &mut [i64], f: &mut impl FnMut(&[i64])) {
        if level == 0 {
            j[0] = rem;
            f(j);
            return;
        }
        // j_{level+1} = x leaves rem - x for `level` entries, each at most x
        for x in 0..=cap.min(rem) {
            let left = rem - x;
            if left > x * level as i64 {
                continue;
            }
            j[level] = x;
            rec(level - 1, x, left, j, f);
        }
    }
    if total < 0 || top < 0 || total > top * nu as i64 {
        return;
    }
    let mut j = vec![0; nu];
    if nu == 1 {
        j[0] = total;
        f(&j);
        return;
    }
    rec(nu - 1, top, total, &mut j, f);
}

fn multinomial_exponent(l: i64, j: &[i64], p: i64) -> i64 {
    let nu = j.len();
    let cross: i64 = (1..nu).map(|k| j[k - 1] * (l - j[k])).sum();
    let shift: i64 = j[..p as usize].iter().sum();
    cross - shift
}

/// q-multinomial `[L, a]^(p)` of order `nu`, summed over
/// `j_1 + ... + j_nu = a` with weight
/// `q^(sum_{l>=2} j_{l-1}(L - j_l) - sum_{l<=p} j_l)`
/// times `[L, j_nu][j_nu, j_{nu-1}]...[j_2, j_1]`. `p = -1` gives zero.
///
/// Negative exponents occur for `p > 0`, hence the Laurent result.
pub fn q_multinomial(l: i64, a: i64, nu: usize, p: i64) -> LaurentPoly {
    q_multinomial_impl(l, a, nu, p, None)
}

/// Same as [`q_multinomial`] with every exponent above `q_max` dropped.
pub fn q_multinomial_upto(l: i64, a: i64, nu: usize, p: i64, q_max: i64) -> LaurentPoly {
    q_multinomial_impl(l, a, nu, p, Some(q_max))
}

fn q_multinomial_impl(l: i64, a: i64, nu: usize, p: i64, q_max: Option<i64>) -> LaurentPoly {
    assert!(nu >= 1, "nu must be positive");
    assert!((-1..=nu as i64).contains(&p), "superscript p={p} outside -1..={nu}");
    if p == -1 || l < 0 {
        return LaurentPoly::zero();
    }
    let mut terms = Vec::new();
    for_each_chain(nu, l, a, &mut |j| {
        let e = multinomial_exponent(l, j, p);
        if q_max.is_some_and(|m| e > m) {
            return;
        }
        let mut factors = vec![(l, j[nu - 1])];
        factors.extend((1..nu).rev().map(|k| (j[k], j[k - 1])));
        let mut term = binomial_product(factors).shift(e);
        if let Some(m) = q_max {
            term = term.truncate_above(m);
        }
        terms.push(term);
    });
    terms.into_iter().sum()
}

/// q-supernomial `[Lvec; a]` with `a = two_a / 2`.
///
/// The index set is `j_1 + ... + j_nu = a + (1/2) sum_i i L_i`; when that
/// target is not a non-negative integer the value is zero. Each chain
/// contributes `q^(sum_{l>=2} j_{l-1}(L_l + ... + L_nu - j_l))` times
/// `[L_nu, j_nu][L_{nu-1} + j_nu, j_{nu-1}]...[L_1 + j_2, j_1]`.
pub fn q_supernomial(lvec: &[i64], two_a: i64) -> LaurentPoly {
    let nu = lvec.len();
    assert!(nu >= 1, "Lvec must be non-empty");
    let Some(target) = supernomial_target(lvec, two_a) else {
        return LaurentPoly::zero();
    };
    // suffix[l] = L_{l+1} + ... + L_nu (0-based l)
    let mut suffix = vec![0i64; nu + 1];
    for l in (0..nu).rev() {
        suffix[l] = suffix[l + 1] + lvec[l];
    }
    let mut j = vec![0i64; nu];
    let mut acc = LaurentPoly::zero();
    supernomial_rec(lvec, &suffix, nu - 1, target, &mut j, &mut acc);
    acc
}

/// `a + (1/2) sum_i i L_i` when it is a non-negative integer.
pub fn supernomial_target(lvec: &[i64], two_a: i64) -> Option<i64> {
    let weighted: i64 = lvec.iter().enumerate().map(|(i, &l)| (i as i64 + 1) * l).sum();
    let twice = two_a + weighted;
    (twice >= 0 && twice % 2 == 0).then_some(twice / 2)
}

/// Largest achievable chain sum: `j_l <= L_l + j_{l+1}`.
pub fn supernomial_max_target(lvec: &[i64]) -> i64 {
    let mut cap = 0i64;
    let mut total = 0i64;
    for &l in lvec.iter().rev() {
        cap = (l + cap).max(0);
        total += cap;
    }
    total
}

fn supernomial_rec(
    lvec: &[i64],
    suffix: &[i64],
    level: usize,
    rem: i64,
    j: &mut [i64],
    acc: &mut LaurentPoly,
) {
    let above = if level + 1 < lvec.len() { j[level + 1] } else { 0 };
    let top = lvec[level] + above;
    if top < 0 {
        return;
    }
    if level == 0 {
        if rem > top {
            return;
        }
        j[0] = rem;
        let nu = lvec.len();
        let e: i64 = (1..nu).map(|l| j[l - 1] * (suffix[l] - j[l])).sum();
        let factors = (0..nu).rev().map(|l| {
            let above = if l + 1 < nu { j[l + 1] } else { 0 };
            (lvec[l] + above, j[l])
        });
        let term = binomial_product(factors.collect::<Vec<_>>());
        *acc += &term.shift(e);
        return;
    }
    for x in 0..=top.min(rem) {
        j[level] = x;
        supernomial_rec(lvec, suffix, level - 1, rem - x, j, acc);
    }
}

/// Stabilized low-order coefficients of `[L, nu L/2 - A]^(p)` as `L` grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralLimit {
    /// Coefficients through `q^order` agree at both test points.
    Stable(LaurentPoly),
    /// The two test points disagree at this exponent.
    NoLimit { first_difference: i64 },
}

/// Probes the large-`L` behaviour of the central q-multinomial.
///
/// Test points are the smallest admissible `L >= 2(A + order + 1)` and the next
/// admissible one (`L + 1`, or `L + 2` when `nu` is odd so that `nu L / 2`
/// stays integral). This is a heuristic, not a proof of convergence.
pub fn central_limit(nu: usize, p: i64, big_a: i64, order: i64) -> CentralLimit {
    let step = if nu % 2 == 0 { 1 } else { 2 };
    let mut l = 2 * (big_a.max(0) + order + 1);
    if nu % 2 == 1 && l % 2 == 1 {
        l += 1;
    }
    let at = |l: i64| q_multinomial_upto(l, nu as i64 * l / 2 - big_a, nu, p, order);
    let first = at(l);
    let second = at(l + step);
    match first.first_difference(&second) {
        None => CentralLimit::Stable(first),
        Some(e) => CentralLimit::NoLimit { first_difference: e },
    }
}

/// `1/(q)_infinity` through `order`.
pub fn inverse_euler(order: usize) -> TruncatedSeries {
    inverse_q_pochhammer(order, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &LaurentPoly) -> Vec<i128> {
        p.window(0, p.max_exp().unwrap_or(0)).iter().map(|c| c.get()).collect()
    }

    #[test]
    fn small_binomials() {
        assert_eq!(coeffs(&gaussian_binomial(2, 1)), vec![1, 1]);
        assert_eq!(coeffs(&gaussian_binomial(4, 2)), vec![1, 1, 2, 1, 1]);
        assert!(gaussian_binomial(3, -1).is_zero());
        assert!(gaussian_binomial(-1, 0).is_zero());
        assert_eq!(gaussian_binomial(0, 0), LaurentPoly::one());
    }

    #[test]
    fn multinomial_specials() {
        assert_eq!(q_multinomial(0, 0, 3, 2), LaurentPoly::one());
        assert!(q_multinomial(0, 1, 3, 0).is_zero());
        assert!(q_multinomial(3, 7, 2, 0).is_zero());
        assert!(q_multinomial(3, 2, 2, -1).is_zero());
        assert_eq!(q_multinomial(2, 2, 2, 0).eval_at_one(), ExactInt::new(3));
    }

    #[test]
    fn multinomial_with_shift_has_negative_support() {
        // nu = 1, p = 1 is q^(-a) [L, a]
        let p = q_multinomial(3, 2, 1, 1);
        assert_eq!(p, gaussian_binomial(3, 2).shift(-2));
    }

    #[test]
    fn supernomial_trivial() {
        assert_eq!(q_supernomial(&[0, 0, 0], 0), LaurentPoly::one());
        assert!(q_supernomial(&[1, 0], 0).is_zero()); // half-integral target
    }
}
