//! Exact Laurent polynomials and truncated power series in one variable `q`.
//!
//! Coefficients are [`ExactInt`], a checked `i128`. Every operator panics with
//! "coefficient overflow" instead of wrapping; the `try_*` methods surface the
//! same condition as [`Error::Overflow`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact integer coefficient. Arithmetic either is exact or aborts.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ExactInt(i128);

impl ExactInt {
    pub const ZERO: ExactInt = ExactInt(0);
    pub const ONE: ExactInt = ExactInt(1);

    pub const fn new(v: i128) -> Self {
        ExactInt(v)
    }

    pub const fn get(self) -> i128 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.0.checked_add(rhs.0).map(ExactInt).ok_or(Error::Overflow)
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        self.0.checked_sub(rhs.0).map(ExactInt).ok_or(Error::Overflow)
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        self.0.checked_mul(rhs.0).map(ExactInt).ok_or(Error::Overflow)
    }

    pub fn try_neg(self) -> Result<Self> {
        self.0.checked_neg().map(ExactInt).ok_or(Error::Overflow)
    }
}

#[track_caller]
fn overflow() -> ! {
    panic!("coefficient overflow")
}

impl Add for ExactInt {
    type Output = ExactInt;
    #[track_caller]
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).unwrap_or_else(|_| overflow())
    }
}

impl Sub for ExactInt {
    type Output = ExactInt;
    #[track_caller]
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).unwrap_or_else(|_| overflow())
    }
}

impl Mul for ExactInt {
    type Output = ExactInt;
    #[track_caller]
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).unwrap_or_else(|_| overflow())
    }
}

impl Neg for ExactInt {
    type Output = ExactInt;
    #[track_caller]
    fn neg(self) -> Self {
        self.try_neg().unwrap_or_else(|_| overflow())
    }
}

impl AddAssign for ExactInt {
    #[track_caller]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for ExactInt {
    #[track_caller]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl From<i128> for ExactInt {
    fn from(v: i128) -> Self {
        ExactInt(v)
    }
}

impl From<i64> for ExactInt {
    fn from(v: i64) -> Self {
        ExactInt(v.into())
    }
}

impl From<i32> for ExactInt {
    fn from(v: i32) -> Self {
        ExactInt(v.into())
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Laurent polynomial with exact coefficients.
///
/// Stored densely as `coeffs[k]` = coefficient of `q^(min_exp + k)`, trimmed so
/// that the first and last stored coefficients are nonzero. The zero
/// polynomial has no coefficients. Because the form is canonical, derived
/// equality is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<ExactInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, ExactInt::ONE)
    }

    pub fn constant(c: impl Into<ExactInt>) -> Self {
        LaurentPoly::monomial(0, c.into())
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: ExactInt) -> Self {
        LaurentPoly::from_coeffs(e, vec![c])
    }

    /// Builds `sum_k coeffs[k] q^(min_exp + k)` and canonicalizes.
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<ExactInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<ExactInt>,
    {
        let terms: Vec<(i64, ExactInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return LaurentPoly::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![ExactInt::ZERO; (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(first);
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.min_exp += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> ExactInt {
        let k = e - self.min_exp;
        if k < 0 || k >= self.coeffs.len() as i64 {
            ExactInt::ZERO
        } else {
            self.coeffs[k as usize]
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, ExactInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, &c)| (self.min_exp + k as i64, c))
    }

    /// Coefficients of `q^lo ..= q^hi`, zeros included.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<ExactInt> {
        (lo..=hi).map(|e| self.coeff(e)).collect()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: ExactInt) -> Self {
        LaurentPoly::from_coeffs(self.min_exp, self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Drops every term with exponent above `q_max`.
    pub fn truncate_above(&self, q_max: i64) -> Self {
        match self.max_exp() {
            Some(hi) if hi > q_max => {
                let keep = (q_max - self.min_exp + 1).max(0) as usize;
                LaurentPoly::from_coeffs(self.min_exp, self.coeffs[..keep].to_vec())
            }
            _ => self.clone(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> ExactInt {
        self.coeffs.iter().fold(ExactInt::ZERO, |acc, &c| acc + c)
    }

    /// Smallest exponent where `self` and `other` differ.
    pub fn first_difference(&self, other: &LaurentPoly) -> Option<i64> {
        let lo = self.min_exp().into_iter().chain(other.min_exp()).min()?;
        let hi = self.max_exp().into_iter().chain(other.max_exp()).max()?;
        (lo..=hi).find(|&e| self.coeff(e) != other.coeff(e))
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().max(other.max_exp()).unwrap_or(lo);
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            coeffs.push(self.coeff(e).try_add(other.coeff(e))?);
        }
        Ok(LaurentPoly::from_coeffs(lo, coeffs))
    }

    pub fn try_neg(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.try_neg()).collect::<Result<_>>()?;
        Ok(LaurentPoly { min_exp: self.min_exp, coeffs })
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<Self> {
        self.try_add(&other.try_neg()?)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut coeffs = vec![ExactInt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].try_add(a.try_mul(b)?)?;
            }
        }
        Ok(LaurentPoly::from_coeffs(self.min_exp + other.min_exp, coeffs))
    }

    /// Product with a truncated series, keeping exponents up to `q_max`.
    ///
    /// The series must be known through order `q_max - min_exp(self)`, so
    /// that every kept coefficient is exact.
    pub fn mul_series_upto(&self, s: &TruncatedSeries, q_max: i64) -> Result<LaurentPoly> {
        let Some(lo) = self.min_exp() else {
            return Ok(LaurentPoly::zero());
        };
        if q_max < lo {
            return Ok(LaurentPoly::zero());
        }
        let need = (q_max - lo) as usize;
        if need > s.order() {
            return Err(Error::OrderExceeded { requested: need, available: s.order() });
        }
        let mut coeffs = vec![ExactInt::ZERO; need + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > need {
                continue;
            }
            for (j, &b) in s.coeffs()[..=need - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].try_add(a.try_mul(b)?)?;
            }
        }
        Ok(LaurentPoly::from_coeffs(lo, coeffs))
    }
}

/// Exact convolution product.
pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

/// The substitution `q -> 1/q`, mapping each exponent `e` to `-e`.
pub fn substitute_inverse_q(p: &LaurentPoly) -> LaurentPoly {
    match p.max_exp() {
        None => LaurentPoly::zero(),
        Some(hi) => {
            let mut coeffs = p.coeffs.clone();
            coeffs.reverse();
            LaurentPoly { min_exp: -hi, coeffs }
        }
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            #[track_caller]
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).unwrap_or_else(|_| overflow())
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            #[track_caller]
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    #[track_caller]
    fn neg(self) -> LaurentPoly {
        self.try_neg().unwrap_or_else(|_| overflow())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    #[track_caller]
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    #[track_caller]
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

/// Renders terms in increasing exponent order, e.g. `q^-1 + 2 - 3q^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.get() < 0;
            let mag = c.get().unsigned_abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

/// Power series known exactly for exponents `0..=order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![ExactInt::ZERO; order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = ExactInt::ONE;
        s
    }

    /// Takes `coeffs[0..=order]`; missing entries are zero.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<ExactInt>) -> Self {
        coeffs.resize(order + 1, ExactInt::ZERO);
        TruncatedSeries { coeffs }
    }

    /// Converts a polynomial without negative powers, truncating at `order`.
    pub fn from_laurent(p: &LaurentPoly, order: usize) -> Result<Self> {
        if let Some(lo) = p.min_exp().filter(|&lo| lo < 0) {
            return Err(Error::NegativeSupport { min_exp: lo });
        }
        Ok(TruncatedSeries {
            coeffs: (0..=order as i64).map(|e| p.coeff(e)).collect(),
        })
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, self.coeffs.clone())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> ExactInt {
        self.coeffs[e]
    }

    /// Lowers the order; asking for a higher order is an error.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderExceeded { requested: order, available: self.order() });
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].try_add(other.coeffs[i]))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].try_sub(other.coeffs[i]))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let mut coeffs = vec![ExactInt::ZERO; order + 1];
        for (i, &a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs[..=order - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].try_add(a.try_mul(b)?)?;
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplies by `q^k`, dropping what falls past the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![ExactInt::ZERO; self.coeffs.len()];
        let len = coeffs.len();
        if k < len {
            coeffs[k..].copy_from_slice(&self.coeffs[..len - k]);
        }
        TruncatedSeries { coeffs }
    }

    /// In-place multiplication by `1/(1 - q^j)`, `j >= 1`.
    pub fn div_one_minus_q_pow(&mut self, j: usize) -> Result<()> {
        assert!(j >= 1, "exponent must be positive");
        for i in j..self.coeffs.len() {
            self.coeffs[i] = self.coeffs[i].try_add(self.coeffs[i - j])?;
        }
        Ok(())
    }

    /// In-place multiplication by `(1 - q^j)`, `j >= 1`.
    pub fn mul_one_minus_q_pow(&mut self, j: usize) -> Result<()> {
        assert!(j >= 1, "exponent must be positive");
        for i in (j..self.coeffs.len()).rev() {
            self.coeffs[i] = self.coeffs[i].try_sub(self.coeffs[i - j])?;
        }
        Ok(())
    }
}

/// Multiplicative inverse of a series whose constant term is `1` or `-1`.
pub fn series_invert(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let c0 = s.coeffs[0];
    if c0.get().abs() != 1 {
        return Err(Error::NonUnitConstant(c0.get()));
    }
    let n = s.coeffs.len();
    let mut r = vec![ExactInt::ZERO; n];
    r[0] = c0;
    for k in 1..n {
        let mut acc = ExactInt::ZERO;
        for i in 1..=k {
            acc = acc.try_add(s.coeffs[i].try_mul(r[k - i])?)?;
        }
        // c0 is its own inverse
        r[k] = acc.try_mul(c0)?.try_neg()?;
    }
    Ok(TruncatedSeries { coeffs: r })
}

/// Outcome of a truncated comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

/// Compares coefficients `0..=q_max`.
pub fn equal_to_order(a: &TruncatedSeries, b: &TruncatedSeries, q_max: usize) -> Result<Comparison> {
    let available = a.order().min(b.order());
    if q_max > available {
        return Err(Error::OrderExceeded { requested: q_max, available });
    }
    let first_mismatch = (0..=q_max).find(|&i| a.coeffs[i] != b.coeffs[i]);
    Ok(Comparison { equal: first_mismatch.is_none(), first_mismatch })
}

/// `1/(q)_n` through order `order`.
pub fn inverse_q_pochhammer(n: usize, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    for j in 1..=n.min(order) {
        // the factors with j > order are 1 modulo q^(order+1)
        s.div_one_minus_q_pow(j).unwrap_or_else(|_| overflow());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(min: i64, c: &[i128]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min, c.iter().map(|&x| ExactInt::new(x)).collect())
    }

    #[test]
    fn canonical_form_strips_zeros() {
        let a = p(-2, &[0, 0, 1, 0, 2, 0]);
        assert_eq!(a, p(0, &[1, 0, 2]));
        assert_eq!(a.min_exp(), Some(0));
        assert_eq!(a.max_exp(), Some(2));
        assert_eq!(p(3, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(0, &[1, 1]) * &p(0, &[1, -1]), p(0, &[1, 0, -1]));
    }

    #[test]
    fn laurent_product_with_negative_support() {
        assert_eq!(&p(-1, &[1, 1]) * &p(1, &[1, 1]), p(0, &[1, 2, 1]));
    }

    #[test]
    fn inverse_substitution() {
        assert_eq!(substitute_inverse_q(&p(0, &[1, 1])), p(-1, &[1, 1]));
        assert_eq!(substitute_inverse_q(&LaurentPoly::constant(5)), LaurentPoly::constant(5));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(0, &[1, 1, 2, 1, 1]).to_string(), "1 + q + 2q^2 + q^3 + q^4");
        assert_eq!(p(-2, &[-1, 0, 3, 0, -1]).to_string(), "-q^-2 + 3 - q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn geometric_inverse() {
        let s = TruncatedSeries::from_coeffs(3, vec![1.into(), (-1).into()]);
        let inv = series_invert(&s).unwrap();
        assert_eq!(inv.coeffs(), &[1, 1, 1, 1].map(ExactInt::new));
    }

    #[test]
    fn invert_rejects_non_unit() {
        let s = TruncatedSeries::from_coeffs(3, vec![2.into()]);
        assert!(matches!(series_invert(&s), Err(Error::NonUnitConstant(2))));
    }

    #[test]
    fn mismatch_order_reported() {
        let a = TruncatedSeries::from_coeffs(1, vec![1.into(), 1.into()]);
        let b = TruncatedSeries::from_coeffs(1, vec![1.into(), 2.into()]);
        let c = equal_to_order(&a, &b, 1).unwrap();
        assert_eq!(c, Comparison { equal: false, first_mismatch: Some(1) });
        assert!(equal_to_order(&a, &b, 2).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = ExactInt::new(i128::MAX);
        assert!(matches!(big.try_add(ExactInt::ONE), Err(Error::Overflow)));
        let r = std::panic::catch_unwind(|| big * ExactInt::new(2));
        assert!(r.is_err());
    }

    #[test]
    fn negative_support_refused() {
        assert!(TruncatedSeries::from_laurent(&p(-1, &[1]), 4).is_err());
    }
}
