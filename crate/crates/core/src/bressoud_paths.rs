//! Bressoud lattice paths: north-east, south-east and horizontal steps, with
//! horizontal steps allowed only on the x-axis. The weight of a path is the
//! sum of the x-coordinates of its peaks.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::content::{alpha, ParticleContent};
use crate::error::{Error, Result};
use crate::q_gadgets::{binomial_product, gaussian_binomial};
use crate::series_core::LaurentPoly;

/// Default bound on `L - M` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    NE,
    SE,
    H,
}

impl Step {
    fn dy(self) -> i64 {
        match self {
            Step::NE => 1,
            Step::SE => -1,
            Step::H => 0,
        }
    }
}

/// A peak vertex `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Peak {
    pub x: i64,
    pub y: i64,
}

/// A path given by its start vertex and step string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BressoudPath {
    pub start: (i64, i64),
    pub steps: Vec<Step>,
}

impl BressoudPath {
    /// Validates the step rules: `y >= 0`, SE only from `y > 0`, H only at
    /// `y = 0`.
    pub fn new(start: (i64, i64), steps: Vec<Step>) -> Result<Self> {
        if start.1 < 0 {
            return Err(Error::InvalidParameter("start below the x-axis".into()));
        }
        let mut y = start.1;
        for (k, &s) in steps.iter().enumerate() {
            match s {
                Step::SE if y == 0 => {
                    return Err(Error::InvalidParameter(format!("step {k}: SE from the x-axis")))
                }
                Step::H if y != 0 => {
                    return Err(Error::InvalidParameter(format!("step {k}: H off the x-axis")))
                }
                _ => {}
            }
            y += s.dy();
        }
        Ok(BressoudPath { start, steps })
    }

    /// Every vertex, start included.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut v = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = self.start;
        v.push((x, y));
        for s in &self.steps {
            x += 1;
            y += s.dy();
            v.push((x, y));
        }
        v
    }

    pub fn end(&self) -> (i64, i64) {
        let (x, y) = self.start;
        let dy: i64 = self.steps.iter().map(|s| s.dy()).sum();
        (x + self.steps.len() as i64, y + dy)
    }

    /// Indices (into [`Self::vertices`]) of vertices entered by NE and left by SE.
    fn peak_indices(&self) -> Vec<usize> {
        (1..self.steps.len())
            .filter(|&k| self.steps[k - 1] == Step::NE && self.steps[k] == Step::SE)
            .collect()
    }

    pub fn peaks(&self) -> Vec<Peak> {
        let v = self.vertices();
        self.peak_indices()
            .into_iter()
            .map(|k| Peak { x: v[k].0, y: v[k].1 })
            .collect()
    }

    pub fn weight(&self) -> i64 {
        self.peaks().iter().map(|p| p.x).sum()
    }

    pub fn max_peak_height(&self) -> i64 {
        self.peaks().iter().map(|p| p.y).max().unwrap_or(0)
    }

    /// Relative height of every peak, left to right.
    ///
    /// For a peak `(i, j)` this is the largest `h` for which vertices at
    /// height `j - h` exist on both sides such that no peak strictly between
    /// them is higher than `j`, and every peak of height `j` between them
    /// lies at `x >= i`. The nearest such vertices give the tightest window,
    /// so they are the ones tested.
    pub fn relative_heights(&self) -> Vec<i64> {
        let v = self.vertices();
        let peaks = self.peak_indices();
        peaks
            .iter()
            .map(|&k| {
                let (i, j) = v[k];
                (1..=j)
                    .rev()
                    .find(|&h| {
                        let level = j - h;
                        let Some(left) = (0..k).rev().find(|&m| v[m].1 == level) else {
                            return false;
                        };
                        let Some(right) = (k + 1..v.len()).find(|&m| v[m].1 == level) else {
                            return false;
                        };
                        peaks.iter().filter(|&&m| left < m && m < right).all(|&m| {
                            let (x, y) = v[m];
                            y < j || (y == j && x >= i)
                        })
                    })
                    .expect("a peak always has relative height at least 1")
            })
            .collect()
    }

    /// Peak counts by relative height, `n_1..n_nu`.
    pub fn content(&self, nu: usize) -> ParticleContent {
        let mut n = vec![0i64; nu];
        for h in self.relative_heights() {
            assert!(h >= 1 && h as usize <= nu, "relative height {h} exceeds nu={nu}");
            n[h as usize - 1] += 1;
        }
        ParticleContent::new(n)
    }

    /// The same path moved `m` units to the left.
    pub fn translate_left(&self, m: i64) -> BressoudPath {
        BressoudPath {
            start: (self.start.0 - m, self.start.1),
            steps: self.steps.clone(),
        }
    }
}

impl fmt::Display for BressoudPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) ", self.start.0, self.start.1)?;
        for s in &self.steps {
            f.write_str(match s {
                Step::NE => "u",
                Step::SE => "d",
                Step::H => "h",
            })?;
        }
        Ok(())
    }
}

fn check_window(m: i64, l: i64, cap: i64) -> Result<()> {
    if l < m {
        return Err(Error::InvalidParameter(format!("L={l} < M={m}")));
    }
    if l - m > cap {
        return Err(Error::EnumerationTooLarge { span: l - m, cap });
    }
    Ok(())
}

/// All paths from `(M, s)` to `(L, b)` with no peak higher than `nu`.
///
/// Capping every height at `nu` is equivalent: a vertex above `nu` forces a
/// peak above `nu` because the path ends at height `b <= nu`.
pub fn enumerate_bressoud(m: i64, l: i64, s: i64, b: i64, nu: usize, cap: i64) -> Result<Vec<BressoudPath>> {
    check_window(m, l, cap)?;
    let nu = nu as i64;
    if !(0..=nu).contains(&s) || !(0..=nu).contains(&b) {
        return Err(Error::InvalidParameter(format!("boundary heights must lie in 0..={nu}")));
    }
    fn rec(y: i64, left: i64, b: i64, nu: i64, steps: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if left == 0 {
            if y == b {
                out.push(steps.clone());
            }
            return;
        }
        for step in [Step::H, Step::NE, Step::SE] {
            let ny = y + step.dy();
            let legal = match step {
                Step::H => y == 0,
                Step::NE => ny <= nu,
                Step::SE => y > 0,
            };
            if legal && (ny - b).abs() < left {
                steps.push(step);
                rec(ny, left - 1, b, nu, steps, out);
                steps.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(s, l - m, b, nu, &mut Vec::new(), &mut raw);
    Ok(raw
        .into_iter()
        .map(|steps| BressoudPath { start: (m, s), steps })
        .collect())
}

/// Weighted count `sum q^w(p)` over a path set.
pub fn weighted_count<'a>(paths: impl IntoIterator<Item = &'a BressoudPath>) -> LaurentPoly {
    LaurentPoly::from_terms(paths.into_iter().map(|p| (p.weight(), 1i64)))
}

/// `C_{M,L}(s, b)` by exhaustive enumeration.
pub fn c_poly_enumerated(m: i64, l: i64, s: i64, b: i64, nu: usize, cap: i64) -> Result<LaurentPoly> {
    Ok(weighted_count(&enumerate_bressoud(m, l, s, b, nu, cap)?))
}

/// Enumerated paths grouped by particle content.
pub fn c_poly_by_content(
    m: i64,
    l: i64,
    s: i64,
    b: i64,
    nu: usize,
    cap: i64,
) -> Result<HashMap<ParticleContent, LaurentPoly>> {
    let mut by: HashMap<ParticleContent, Vec<(i64, i64)>> = HashMap::new();
    for p in enumerate_bressoud(m, l, s, b, nu, cap)? {
        by.entry(p.content(nu)).or_default().push((p.weight(), 1));
    }
    Ok(by.into_iter().map(|(k, t)| (k, LaurentPoly::from_terms(t))).collect())
}

/// `C_{0,L}(s, b)` from the boundary recursion in the end height:
/// `C_L(s, nu) = C_{L-1}(s, nu-1)` and, for `b < nu`,
/// `C_L(s, b) = C_{L-1}(s, b-1+[b=0]) + C_{L-1}(s, b+1) + (q^{L-1} - 1) C_{L-2}(s, b)`,
/// starting from `C_0(s, b) = [s = b]`.
pub fn c_poly_recurrence(nu: usize, l: i64, s: i64, b: i64) -> LaurentPoly {
    c_poly_table(nu, l, s).pop().map(|mut row| row.swap_remove(b as usize)).unwrap_or_default()
}

/// Rows `L' = 0..=L` of `C_{0,L'}(s, b)` for `b = 0..=nu`. Empty for `L < 0`.
pub fn c_poly_table(nu: usize, l: i64, s: i64) -> Vec<Vec<LaurentPoly>> {
    assert!(nu >= 1);
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    for len in 0..=l.max(-1) {
        let row = (0..=nu)
            .map(|b| {
                if len == 0 {
                    return if b as i64 == s { LaurentPoly::one() } else { LaurentPoly::zero() };
                }
                let prev = &rows[len as usize - 1];
                if b == nu {
                    return prev[nu - 1].clone();
                }
                let down = if b == 0 { 0 } else { b - 1 };
                let mut c = &prev[down] + &prev[b + 1];
                if len >= 2 {
                    let factor = LaurentPoly::from_terms([(len - 1, 1i64), (0, -1)]);
                    c += &(&factor * &rows[len as usize - 2][b]);
                }
                c
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Range of integers `j` with `lo <= base + step * j <= hi` (`step > 0`).
pub(crate) fn j_range(base: i64, step: i64, lo: i64, hi: i64) -> std::ops::RangeInclusive<i64> {
    (lo - base).div_euclid(step) + i64::from((lo - base).rem_euclid(step) != 0)..=(hi - base).div_euclid(step)
}

/// `B_{s,b}(L)`: the alternating sum
/// `sum_j q^{j((2j+1)K - 2s)} [L, (L+b-s)/2 + jK] - q^{(2j+1)(Kj+s)} [L, (L+b+s)/2 + jK]`
/// with `K = 2 nu + 3`. Zero when `L + b + s` is odd.
///
/// Only the finitely many `j` whose lower index lies in `0..=L` are visited.
pub fn b_poly(nu: usize, s: i64, b: i64, l: i64) -> LaurentPoly {
    let k = 2 * nu as i64 + 3;
    if l < 0 || (l + b + s).rem_euclid(2) != 0 {
        return LaurentPoly::zero();
    }
    let mut acc = LaurentPoly::zero();
    let base = (l + b - s) / 2;
    for j in j_range(base, k, 0, l) {
        acc += &gaussian_binomial(l, base + j * k).shift(j * ((2 * j + 1) * k - 2 * s));
    }
    let base = (l + b + s) / 2;
    for j in j_range(base, k, 0, l) {
        acc -= &gaussian_binomial(l, base + j * k).shift((2 * j + 1) * (k * j + s));
    }
    acc
}

/// Per-content generating function of paths from `(0, nu - s)` to `(L, 0)`:
/// `q^{N_1^2+...+N_nu^2 + N_{s+1}+...+N_nu} prod_i [n_i + L - 2 sum_{l<=i} N_l - alpha_{i,s}, n_i]`.
pub fn refined_bressoud_gf(nu: usize, l: i64, s: i64, n: &ParticleContent) -> LaurentPoly {
    assert_eq!(n.nu(), nu);
    let e = n.quadratic_form() + n.tail_sum_from(s as usize + 1);
    fermionic_product(n, |i, partial| l - 2 * partial - alpha(i, s)).shift(e)
}

/// `prod_i [n_i + offset(i, N_1 + ... + N_i), n_i]`.
pub(crate) fn fermionic_product(n: &ParticleContent, offset: impl Fn(i64, i64) -> i64) -> LaurentPoly {
    let mut partial = 0;
    let factors: Vec<(i64, i64)> = (1..=n.nu())
        .map(|i| {
            partial += n.tail(i);
            (n.n(i) + offset(i as i64, partial), n.n(i))
        })
        .collect();
    binomial_product(factors)
}

/// Sum of [`refined_bressoud_gf`] over all contents, which counts every path
/// from `(0, nu - s)` to `(L, 0)`.
pub fn bressoud_multisum(nu: usize, l: i64, s: i64) -> LaurentPoly {
    // the i = 1 binomial vanishes once 2 N_1 > L
    ParticleContent::all_up_to(nu, l.max(0) / 2)
        .iter()
        .map(|n| refined_bressoud_gf(nu, l, s, n))
        .sum()
}

/// The polynomial multisum
/// `sum_n q^{sum N_i^2 + N_s + ... + N_nu} prod_i [n_i + L - 2 sum_{l<=i} N_l - alpha_{i,s-1}, n_i]`
/// for `1 <= s <= nu + 1`.
pub fn fqk_multisum(nu: usize, s: i64, l: i64) -> LaurentPoly {
    ParticleContent::all_up_to(nu, l.max(0) / 2)
        .iter()
        .map(|n| {
            let e = n.quadratic_form() + n.tail_sum_from(s as usize);
            fermionic_product(n, |i, partial| l - 2 * partial - alpha(i, s - 1)).shift(e)
        })
        .sum()
}

/// The B-polynomial matching [`fqk_multisum`]:
/// `B_{s,nu+1}(L)` when `L` and `s + nu` differ in parity, else
/// `B_{2nu+3-s,nu+1}(L)`.
pub fn fqk_bosonic(nu: usize, s: i64, l: i64) -> LaurentPoly {
    let nu_i = nu as i64;
    if (l - s - nu_i).rem_euclid(2) == 1 {
        b_poly(nu, s, nu_i + 1, l)
    } else {
        b_poly(nu, 2 * nu_i + 3 - s, nu_i + 1, l)
    }
}

/// `C_{0,L}(s, b)` written through B-polynomials:
/// `B_{nu+1-s, nu+1-b}(L)` when `L = s + b (mod 2)`, else `B_{nu+2+s, nu+1-b}(L)`.
pub fn c_poly_via_b(nu: usize, l: i64, s: i64, b: i64) -> LaurentPoly {
    let nu_i = nu as i64;
    if (l - s - b).rem_euclid(2) == 0 {
        b_poly(nu, nu_i + 1 - s, nu_i + 1 - b, l)
    } else {
        b_poly(nu, nu_i + 2 + s, nu_i + 1 - b, l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_path() -> BressoudPath {
        use Step::*;
        let mut steps = vec![NE, SE, SE, NE, NE, SE, NE, SE, SE, NE, NE, SE];
        steps.extend([NE, NE, NE, SE, SE, SE, SE, H, H]);
        BressoudPath::new((-8, 1), steps).unwrap()
    }

    #[test]
    fn sample_path_data() {
        let p = sample_path();
        assert_eq!(p.end(), (13, 0));
        let xs: Vec<i64> = p.peaks().iter().map(|q| q.x).collect();
        assert_eq!(xs, vec![-7, -3, -1, 3, 7]);
        assert_eq!(p.weight(), -1);
        assert_eq!(p.relative_heights(), vec![1, 2, 1, 1, 4]);
    }

    #[test]
    fn rejects_illegal_steps() {
        assert!(BressoudPath::new((0, 0), vec![Step::SE]).is_err());
        assert!(BressoudPath::new((0, 1), vec![Step::H]).is_err());
    }

    #[test]
    fn tiny_enumeration() {
        let paths = enumerate_bressoud(0, 2, 0, 0, 1, 16).unwrap();
        assert_eq!(paths.len(), 2);
        assert_eq!(weighted_count(&paths), LaurentPoly::from_terms([(0, 1), (1, 1)]));
        assert_eq!(c_poly_recurrence(1, 2, 0, 0), LaurentPoly::from_terms([(0, 1), (1, 1)]));
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_bressoud(0, 20, 0, 0, 1, 16),
            Err(Error::EnumerationTooLarge { span: 20, cap: 16 })
        ));
    }

    #[test]
    fn j_range_is_exact() {
        assert_eq!(j_range(3, 5, 0, 10), 0..=1);
        assert_eq!(j_range(-7, 5, 0, 10), 2..=3);
        assert!(j_range(3, 5, 4, 7).is_empty());
    }
}
