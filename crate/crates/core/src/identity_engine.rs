//! Both sides of every identity, built by disjoint code paths and compared
//! exactly (polynomial identities) or through a truncation order (series).

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bressoud_paths::{
    c_poly_recurrence, c_poly_via_b, fermionic_product, fqk_bosonic, fqk_multisum, j_range,
    DEFAULT_ENUMERATION_CAP,
};
use crate::content::ParticleContent;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gordon_paths::{
    f_poly, f_poly_via_w, f_summand, g_poly_recurrence, g_poly_via_w, particle_bijection_check, w_poly,
    DEFAULT_STATE_CAP,
};
use crate::q_gadgets::{q_supernomial, supernomial_max_target};
use crate::series_core::{
    inverse_q_pochhammer, substitute_inverse_q, ExactInt, LaurentPoly, TruncatedSeries,
};

/// Number of coefficients kept in report excerpts.
pub const HEAD_LEN: usize = 12;

/// The identities the engine can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// Andrews-Gordon multisum equals its product.
    AndrewsGordon,
    /// Polynomial multisum equals a B-polynomial.
    FodaQuanoKirillov,
    /// F-polynomial equals a W-polynomial.
    WarnaarPolynomial,
    /// Series with `-M N_1` in the exponent.
    Variant1Series,
    /// Finite form of the first variant.
    Variant1Finite,
    /// Series with `-M (N_1 + ... + N_nu)` in the exponent.
    Variant2Series,
    /// Finite form of the second variant.
    Variant2Finite,
    /// The second variant at `M = 1`.
    SpecialM1,
    /// Supernomial conjecture for `-M_1 N_1 - ... - M_nu N_nu`.
    Conjecture,
    /// Path count `C` in terms of B-polynomials.
    BressoudDictionary,
    /// Path count `G` in terms of W-polynomials.
    GordonDictionary,
    /// Path count `G` equals an F-polynomial.
    GordonFermionic,
    /// Orbit counts equal the per-content product formula.
    ParticleBijection,
}

impl Identity {
    pub const ALL: [Identity; 13] = [
        Identity::AndrewsGordon,
        Identity::FodaQuanoKirillov,
        Identity::WarnaarPolynomial,
        Identity::Variant1Series,
        Identity::Variant1Finite,
        Identity::Variant2Series,
        Identity::Variant2Finite,
        Identity::SpecialM1,
        Identity::Conjecture,
        Identity::BressoudDictionary,
        Identity::GordonDictionary,
        Identity::GordonFermionic,
        Identity::ParticleBijection,
    ];

    /// Stable external name.
    pub fn name(self) -> &'static str {
        match self {
            Identity::AndrewsGordon => "AG-1.1",
            Identity::FodaQuanoKirillov => "FQK-1.23",
            Identity::WarnaarPolynomial => "Warnaar-2.22",
            Identity::Variant1Series => "Variant1-1.32",
            Identity::Variant1Finite => "Variant1-finite-1.31",
            Identity::Variant2Series => "Variant2-4.9",
            Identity::Variant2Finite => "Variant2-finite-4.6",
            Identity::SpecialM1 => "B2-4.10",
            Identity::Conjecture => "Conjecture-5.7",
            Identity::BressoudDictionary => "C-via-B",
            Identity::GordonDictionary => "G-via-W",
            Identity::GordonFermionic => "G-via-F",
            Identity::ParticleBijection => "Particle-orbits",
        }
    }

    /// Case-insensitive lookup by external name.
    pub fn from_name(name: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name().eq_ignore_ascii_case(name))
    }

    pub fn names() -> Vec<&'static str> {
        Identity::ALL.iter().map(|i| i.name()).collect()
    }

    /// Whether the identity is an equality of truncated series.
    pub fn is_series(self) -> bool {
        matches!(
            self,
            Identity::AndrewsGordon
                | Identity::Variant1Series
                | Identity::Variant2Series
                | Identity::SpecialM1
                | Identity::Conjecture
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameter record; unused fields stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<i64>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none", default)]
    pub l: Option<i64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
    #[serde(rename = "Mvec", skip_serializing_if = "Option::is_none", default)]
    pub mvec: Option<Vec<i64>>,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none", default)]
    pub q: Option<i64>,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(v) = self.nu {
            parts.push(format!("nu={v}"));
        }
        if let Some(v) = self.s {
            parts.push(format!("s={v}"));
        }
        if let Some(v) = self.b {
            parts.push(format!("b={v}"));
        }
        if let Some(v) = self.l {
            parts.push(format!("L={v}"));
        }
        if let Some(v) = self.m {
            parts.push(format!("M={v}"));
        }
        if let Some(v) = &self.mvec {
            let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            parts.push(format!("Mvec=({})", xs.join(",")));
        }
        if let Some(v) = self.q {
            parts.push(format!("Q={v}"));
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IdentityCase {
    pub identity: Identity,
    pub params: Params,
}

impl IdentityCase {
    pub fn new(identity: Identity, params: Params) -> Self {
        IdentityCase { identity, params }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
        })
    }
}

/// Outcome of one comparison.
///
/// `lhs_head` and `rhs_head` hold the coefficients of `q^excerpt_start`
/// onwards. On failure the excerpt contains `first_mismatch_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch_order: Option<i64>,
    pub excerpt_start: i64,
    pub lhs_head: Vec<ExactInt>,
    pub rhs_head: Vec<ExactInt>,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Sort key: case name, then parameters.
    pub fn sort_key(&self) -> (String, Params) {
        (self.case.clone(), self.params.clone())
    }
}

/// Engine configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub exec: Execution,
    /// Apply the parity restrictions on the bosonic sums as written. When
    /// off, all `1 <= s <= 2 nu + 2` are summed and the report notes whether
    /// the extra terms changed anything.
    pub parity_filter: bool,
    pub enumeration_cap: i64,
    pub state_cap: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            exec: Execution::default(),
            parity_filter: true,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// Both sides of a case. Series sides are exact for exponents `<= cut`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub cut: Option<i64>,
    pub note: Option<String>,
    /// Set when the comparison fails for reasons beyond the two polynomials.
    pub extra_failure: bool,
}

impl Sides {
    fn exact(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        Sides { lhs, rhs, cut: None, note: None, extra_failure: false }
    }

    fn series(lhs: LaurentPoly, rhs: LaurentPoly, q: i64) -> Self {
        Sides {
            lhs: lhs.truncate_above(q),
            rhs: rhs.truncate_above(q),
            cut: Some(q),
            note: None,
            extra_failure: false,
        }
    }
}

/// `N_max = Mmax + ceil(sqrt(Q + nu Mmax^2 / 4)) + 1`.
///
/// With every linear coefficient at least `-Mmax`, the exponent
/// `sum N_i^2 + sum c_i N_i` is at least `N_1^2 - Mmax N_1 - (nu-1) Mmax^2/4`,
/// which exceeds `Q` once `N_1 > N_max`.
pub fn multisum_truncation_bound(nu: usize, m_max: i64, q: i64) -> i64 {
    let m = m_max.max(0);
    let four_x = 4 * q.max(0) + nu as i64 * m * m;
    let mut k = 0i64;
    while 4 * k * k < four_x {
        k += 1;
    }
    m + k + 1
}

/// `sum_n q^{sum N_i^2 + sum c_i N_i} / prod (q)_{n_i}` over `N_1 <= n1_max`,
/// exponents above `q` dropped. `linear[i-1] = c_i`.
pub fn multisum_series_bounded(
    nu: usize,
    linear: &[i64],
    q: i64,
    n1_max: i64,
    exec: Execution,
) -> LaurentPoly {
    assert_eq!(linear.len(), nu);
    let exponent = |n: &ParticleContent| {
        n.quadratic_form() + (1..=nu).map(|i| linear[i - 1] * n.tail(i)).sum::<i64>()
    };
    let terms: Vec<(ParticleContent, i64)> = ParticleContent::all_up_to(nu, n1_max)
        .into_iter()
        .map(|n| {
            let e = exponent(&n);
            (n, e)
        })
        .filter(|&(_, e)| e <= q)
        .collect();
    let Some(lo) = terms.iter().map(|t| t.1).min() else {
        return LaurentPoly::zero();
    };
    let order = (q - lo) as usize;
    let inverses: Vec<TruncatedSeries> =
        (0..=n1_max as usize).map(|n| inverse_q_pochhammer(n, order)).collect();
    let chunks: Vec<&[(ParticleContent, i64)]> = terms.chunks(16).collect();
    let partials = exec.map(&chunks, |chunk| {
        let mut acc = vec![ExactInt::ZERO; order + 1];
        for (n, e) in chunk.iter() {
            let room = (q - e) as usize;
            let mut term = TruncatedSeries::one(room);
            for &c in n.counts() {
                if c > 0 {
                    let inv = inverses[c as usize].truncate(room).expect("order suffices");
                    term = term.try_mul(&inv).expect("coefficient overflow");
                }
            }
            let off = (e - lo) as usize;
            for (k, &c) in term.coeffs().iter().enumerate() {
                acc[off + k] += c;
            }
        }
        acc
    });
    let mut total = vec![ExactInt::ZERO; order + 1];
    for part in partials {
        for (t, c) in total.iter_mut().zip(part) {
            *t += c;
        }
    }
    LaurentPoly::from_coeffs(lo, total)
}

/// [`multisum_series_bounded`] at the analytic bound, confirmed by
/// recomputing with one more particle; the bound is raised until the two
/// agree. Returns the value and the bound that was used.
pub fn multisum_series(nu: usize, linear: &[i64], q: i64, exec: Execution) -> (LaurentPoly, i64) {
    let m_max = linear.iter().map(|&c| -c).max().unwrap_or(0).max(0);
    let mut bound = multisum_truncation_bound(nu, m_max, q);
    let mut value = multisum_series_bounded(nu, linear, q, bound, exec);
    loop {
        let wider = multisum_series_bounded(nu, linear, q, bound + 1, exec);
        if wider == value {
            return (value, bound);
        }
        bound += 1;
        value = wider;
    }
}

fn linear_ag(nu: usize, s: i64) -> Vec<i64> {
    (1..=nu as i64).map(|i| i64::from(i > s)).collect()
}

/// The Andrews-Gordon multisum
/// `sum_n q^{N_1^2+...+N_nu^2 + N_{s+1}+...+N_nu} / prod (q)_{n_i}`.
pub fn ag_multisum(nu: usize, s: i64, q: usize) -> TruncatedSeries {
    let (value, _) = multisum_series(nu, &linear_ag(nu, s), q as i64, Execution::default());
    TruncatedSeries::from_laurent(&value, q).expect("exponents are non-negative")
}

/// `prod_{j >= 1, j != 0, +-s (mod 2nu+3)} 1/(1 - q^j)` through `q^q`.
pub fn restricted_product_series(nu: usize, s: i64, q: usize) -> Result<TruncatedSeries> {
    let k = 2 * nu as i64 + 3;
    if !(1..=2 * nu as i64 + 2).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "residue s={s} outside 1..={} for nu={nu}",
            2 * nu + 2
        )));
    }
    let mut out = TruncatedSeries::one(q);
    for j in 1..=q as i64 {
        let r = j.rem_euclid(k);
        if r != 0 && r != s && r != k - s {
            out.div_one_minus_q_pow(j as usize)?;
        }
    }
    Ok(out)
}

/// `sum_i poly_i(q) * product(s_i)` through `q^q`; the product is expanded
/// far enough to absorb the negative powers of each polynomial.
fn bosonic_series(nu: usize, parts: &[(LaurentPoly, i64)], q: i64) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for (poly, s) in parts {
        let Some(lo) = poly.min_exp() else { continue };
        if lo > q {
            continue;
        }
        let product = restricted_product_series(nu, *s, (q - lo) as usize)?;
        acc += &poly.mul_series_upto(&product, q)?;
    }
    Ok(acc)
}

/// `I_{s,b}(Lvec)`: with `K = 2nu + 3`,
/// `sum_j q^{j((2j+1)K - 2s)} [Lvec; (b-s)/2 + Kj] - q^{(2j+1)(Kj+s)} [Lvec; (b+s)/2 + Kj]`.
pub fn supernomial_i(nu: usize, s: i64, b: i64, lvec: &[i64]) -> LaurentPoly {
    assert_eq!(lvec.len(), nu);
    let k = 2 * nu as i64 + 3;
    let weighted: i64 = lvec.iter().enumerate().map(|(i, &l)| (i as i64 + 1) * l).sum();
    let t_max = supernomial_max_target(lvec);
    let (lo, hi) = (-weighted, 2 * t_max - weighted);
    let mut acc = LaurentPoly::zero();
    for j in j_range(b - s, 2 * k, lo, hi) {
        acc += &q_supernomial(lvec, b - s + 2 * k * j).shift(j * ((2 * j + 1) * k - 2 * s));
    }
    for j in j_range(b + s, 2 * k, lo, hi) {
        acc -= &q_supernomial(lvec, b + s + 2 * k * j).shift((2 * j + 1) * (k * j + s));
    }
    acc
}

/// `(M_1 - M_2, ..., M_{nu-1} - M_nu, M_nu)`.
pub fn tilde_m(mvec: &[i64]) -> Vec<i64> {
    (0..mvec.len())
        .map(|i| mvec[i] - mvec.get(i + 1).copied().unwrap_or(0))
        .collect()
}

fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("missing parameter {name}")))
}

fn in_range(v: i64, lo: i64, hi: i64, name: &str) -> Result<i64> {
    if (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!("{name}={v} outside {lo}..={hi}")))
    }
}

/// Checks that every parameter the identity needs is present and inside
/// the range where the identity is claimed.
pub fn validate(case: &IdentityCase) -> Result<()> {
    let p = &case.params;
    let nu = require(p.nu, "nu")?;
    if nu == 0 {
        return Err(Error::InvalidParameter("nu must be at least 1".into()));
    }
    let nu_i = nu as i64;
    let q = || -> Result<i64> { in_range(require(p.q, "Q")?, 0, i64::from(u16::MAX), "Q") };
    let s_in = |lo: i64, hi: i64| -> Result<i64> { in_range(require(p.s, "s")?, lo, hi, "s") };
    let b_in = || -> Result<i64> { in_range(require(p.b, "b")?, 0, nu_i, "b") };
    let l_min = |lo: i64| -> Result<i64> { in_range(require(p.l, "L")?, lo, i64::from(u16::MAX), "L") };
    let m_le_l = || -> Result<()> {
        let l = require(p.l, "L")?;
        in_range(require(p.m, "M")?, 0, l, "M").map(|_| ())
    };
    match case.identity {
        Identity::AndrewsGordon | Identity::SpecialM1 => {
            s_in(0, nu_i)?;
            q()?;
        }
        Identity::FodaQuanoKirillov => {
            s_in(1, nu_i + 1)?;
            l_min(0)?;
        }
        Identity::WarnaarPolynomial | Identity::GordonFermionic => {
            s_in(0, nu_i)?;
            b_in()?;
            l_min(2)?;
        }
        Identity::BressoudDictionary | Identity::GordonDictionary => {
            s_in(0, nu_i)?;
            b_in()?;
            l_min(0)?;
        }
        Identity::ParticleBijection => {
            s_in(0, nu_i)?;
            b_in()?;
            l_min(2)?;
        }
        Identity::Variant1Series => {
            in_range(require(p.m, "M")?, 0, i64::from(u16::MAX), "M")?;
            q()?;
        }
        Identity::Variant2Series => {
            s_in(0, nu_i)?;
            in_range(require(p.m, "M")?, 0, i64::from(u16::MAX), "M")?;
            q()?;
        }
        Identity::Variant1Finite => {
            l_min(0)?;
            m_le_l()?;
        }
        Identity::Variant2Finite => {
            s_in(0, nu_i)?;
            b_in()?;
            l_min(2)?;
            m_le_l()?;
        }
        Identity::Conjecture => {
            let mv = p
                .mvec
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("missing parameter Mvec".into()))?;
            if mv.len() != nu {
                return Err(Error::InvalidParameter(format!(
                    "Mvec has {} entries, nu={nu}",
                    mv.len()
                )));
            }
            q()?;
        }
    }
    Ok(())
}

/// Builds both sides of a validated case.
pub fn compute_sides(case: &IdentityCase, opts: &EngineOptions) -> Result<Sides> {
    validate(case)?;
    let p = &case.params;
    let nu = p.nu.unwrap_or(1);
    let nu_i = nu as i64;
    let exec = opts.exec;
    let sides = match case.identity {
        Identity::AndrewsGordon => {
            let (s, q) = (p.s.unwrap_or(0), p.q.unwrap_or(0));
            let (lhs, _) = multisum_series(nu, &linear_ag(nu, s), q, exec);
            let rhs = restricted_product_series(nu, s + 1, q as usize)?.to_laurent();
            Sides::series(lhs, rhs, q)
        }
        Identity::SpecialM1 => {
            let (s, q) = (p.s.unwrap_or(0), p.q.unwrap_or(0));
            let linear: Vec<i64> = (1..=nu_i).map(|i| -i64::from(i <= s)).collect();
            let (lhs, _) = multisum_series(nu, &linear, q, exec);
            let parts: Vec<(LaurentPoly, i64)> =
                (nu_i - s + 1..=nu_i + 1).map(|sp| (LaurentPoly::one(), sp)).collect();
            Sides::series(lhs, bosonic_series(nu, &parts, q)?, q)
        }
        Identity::Variant1Series => {
            let (m, q) = (p.m.unwrap_or(0), p.q.unwrap_or(0));
            let mvec: Vec<i64> = (0..nu).map(|i| if i == 0 { m } else { 0 }).collect();
            conjecture_like(nu, &mvec, q, exec, |s| {
                let keep = (m - nu_i - s).rem_euclid(2) == 1;
                (keep, substitute_inverse_q(&crate::bressoud_paths::b_poly(nu, s, nu_i + 1, m)))
            }, opts.parity_filter)?
        }
        Identity::Variant2Series => {
            let (s, m, q) = (p.s.unwrap_or(0), p.m.unwrap_or(0), p.q.unwrap_or(0));
            let linear: Vec<i64> = (1..=nu_i).map(|i| i64::from(i > s) - m).collect();
            let (lhs, _) = multisum_series(nu, &linear, q, exec);
            let mut kept = Vec::new();
            let mut dropped = Vec::new();
            for sp in 1..=2 * nu_i + 2 {
                let poly = substitute_inverse_q(&w_poly(nu, sp, nu_i - s, m));
                if (s + sp - nu_i * m).rem_euclid(2) == 1 {
                    kept.push((poly, sp));
                } else {
                    dropped.push((poly, sp));
                }
            }
            filtered_sides(nu, lhs, kept, dropped, q, opts.parity_filter)?
        }
        Identity::Conjecture => {
            let mvec = p.mvec.clone().unwrap_or_default();
            let q = p.q.unwrap_or(0);
            let tm = tilde_m(&mvec);
            let sum_m: i64 = mvec.iter().sum();
            conjecture_like(nu, &mvec, q, exec, |s| {
                let keep = (s + nu_i + sum_m).rem_euclid(2) == 1;
                (keep, substitute_inverse_q(&supernomial_i(nu, s, nu_i + 1, &tm)))
            }, opts.parity_filter)?
        }
        Identity::FodaQuanoKirillov => {
            let (s, l) = (p.s.unwrap_or(1), p.l.unwrap_or(0));
            Sides::exact(fqk_multisum(nu, s, l), fqk_bosonic(nu, s, l))
        }
        Identity::WarnaarPolynomial => {
            let (s, b, l) = (p.s.unwrap_or(0), p.b.unwrap_or(0), p.l.unwrap_or(0));
            Sides::exact(f_poly(nu, s, b, l), f_poly_via_w(nu, s, b, l))
        }
        Identity::BressoudDictionary => {
            let (s, b, l) = (p.s.unwrap_or(0), p.b.unwrap_or(0), p.l.unwrap_or(0));
            Sides::exact(c_poly_recurrence(nu, l, s, b), c_poly_via_b(nu, l, s, b))
        }
        Identity::GordonDictionary => {
            let (s, b, l) = (p.s.unwrap_or(0), p.b.unwrap_or(0), p.l.unwrap_or(0));
            Sides::exact(g_poly_recurrence(nu, l, nu_i - s, b), g_poly_via_w(nu, s, b, l))
        }
        Identity::GordonFermionic => {
            let (s, b, l) = (p.s.unwrap_or(0), p.b.unwrap_or(0), p.l.unwrap_or(0));
            Sides::exact(g_poly_recurrence(nu, l, s, b), f_poly(nu, nu_i - s, nu_i - b, l))
        }
        Identity::ParticleBijection => {
            let (s, b, l) = (p.s.unwrap_or(0), p.b.unwrap_or(0), p.l.unwrap_or(0));
            let check = particle_bijection_check(nu, s, b, l, opts.enumeration_cap, opts.state_cap)?;
            let mut sides = Sides::exact(check.formula_total.clone(), check.orbit_total.clone());
            sides.extra_failure = !check.passed();
            sides.note = Some(format!(
                "{} contents, {} sequences, {} formula mismatches, {} overlaps, {} uncovered, {} invariant violations",
                check.contents_checked,
                check.sequences,
                check.formula_mismatches.len(),
                check.overlaps,
                check.uncovered,
                check.invariant_violations
            ));
            sides
        }
        Identity::Variant1Finite => {
            let (m, l) = (p.m.unwrap_or(0), p.l.unwrap_or(0));
            let lhs = ParticleContent::all_up_to(nu, l / 2)
                .iter()
                .map(|n| {
                    let e = n.quadratic_form() - m * n.tail(1);
                    fermionic_product(n, |_, partial| l - 2 * partial).shift(e)
                })
                .sum();
            let rhs = (0..=nu_i)
                .map(|s| {
                    let left = substitute_inverse_q(&c_poly_recurrence(nu, m, s, 0));
                    &left * &c_poly_recurrence(nu, l - m, s, 0)
                })
                .sum();
            Sides::exact(lhs, rhs)
        }
        Identity::Variant2Finite => {
            let (s, b, m, l) = (p.s.unwrap_or(0), p.b.unwrap_or(0), p.m.unwrap_or(0), p.l.unwrap_or(0));
            Sides::exact(variant2_finite_lhs(nu, s, b, m, l), variant2_finite_rhs(nu, s, b, m, l))
        }
    };
    Ok(sides)
}

/// `sum_n q^{-M(N_1+...+N_nu)}` times the F summand.
pub fn variant2_finite_lhs(nu: usize, s: i64, b: i64, m: i64, l: i64) -> LaurentPoly {
    ParticleContent::all_up_to(nu, l.max(0) / 2)
        .iter()
        .map(|n| f_summand(nu, s, b, l, n).shift(-m * n.total_charge()))
        .sum()
}

/// `sum_{s'} G_{0,M}(s', nu-s, 1/q) G_{0,L-M}(s', nu-b, q)`.
pub fn variant2_finite_rhs(nu: usize, s: i64, b: i64, m: i64, l: i64) -> LaurentPoly {
    let nu_i = nu as i64;
    (0..=nu_i)
        .map(|sp| {
            let left = substitute_inverse_q(&g_poly_recurrence(nu, m, sp, nu_i - s));
            &left * &g_poly_recurrence(nu, l - m, sp, nu_i - b)
        })
        .sum()
}

/// Sides of `sum_n q^{sum N^2 - sum M_i N_i}/prod (q)_{n_i} = sum_s P_s(1/q) prod(s)`
/// where `poly(s)` yields the parity verdict and `P_s(1/q)`.
fn conjecture_like(
    nu: usize,
    mvec: &[i64],
    q: i64,
    exec: Execution,
    poly: impl Fn(i64) -> (bool, LaurentPoly),
    parity_filter: bool,
) -> Result<Sides> {
    let linear: Vec<i64> = mvec.iter().map(|&m| -m).collect();
    let (lhs, _) = multisum_series(nu, &linear, q, exec);
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for s in 1..=2 * nu as i64 + 2 {
        let (keep, p) = poly(s);
        if keep {
            kept.push((p, s));
        } else {
            dropped.push((p, s));
        }
    }
    filtered_sides(nu, lhs, kept, dropped, q, parity_filter)
}

fn filtered_sides(
    nu: usize,
    lhs: LaurentPoly,
    kept: Vec<(LaurentPoly, i64)>,
    dropped: Vec<(LaurentPoly, i64)>,
    q: i64,
    parity_filter: bool,
) -> Result<Sides> {
    let rhs = bosonic_series(nu, &kept, q)?;
    if parity_filter {
        return Ok(Sides::series(lhs, rhs, q));
    }
    let extra = bosonic_series(nu, &dropped, q)?;
    let note = if extra.is_zero() {
        "parity filter disabled: the excluded terms vanish identically".to_string()
    } else {
        format!(
            "parity filter disabled: the excluded terms change the sum from q^{}",
            extra.min_exp().unwrap_or(0)
        )
    };
    let mut sides = Sides::series(lhs, &rhs + &extra, q);
    sides.note = Some(note);
    Ok(sides)
}

/// Summarizes a pair of sides as a report (runtime left at zero).
pub fn report_from_sides(case: &IdentityCase, sides: &Sides) -> VerificationReport {
    let mismatch = sides.lhs.first_difference(&sides.rhs);
    let status = if mismatch.is_none() && !sides.extra_failure {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut lo = sides.lhs.min_exp().into_iter().chain(sides.rhs.min_exp()).min().unwrap_or(0);
    let mut hi = sides.lhs.max_exp().into_iter().chain(sides.rhs.max_exp()).max().unwrap_or(0);
    if let Some(q) = sides.cut {
        lo = lo.min(0);
        hi = q;
    }
    let start = match mismatch {
        Some(m) if m >= lo + HEAD_LEN as i64 => m - 4,
        _ => lo,
    };
    let end = (start + HEAD_LEN as i64 - 1).min(hi.max(start));
    VerificationReport {
        case: case.identity.name().to_string(),
        params: case.params.clone(),
        status,
        first_mismatch_order: mismatch,
        excerpt_start: start,
        lhs_head: sides.lhs.window(start, end),
        rhs_head: sides.rhs.window(start, end),
        runtime_ms: 0,
        note: sides.note.clone(),
    }
}

/// Verifies one case. Invalid parameters and exhausted caps are errors.
pub fn verify(case: &IdentityCase, opts: &EngineOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let sides = compute_sides(case, opts)?;
    let mut report = report_from_sides(case, &sides);
    report.runtime_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Verifies many cases and returns the reports sorted by case name, then
/// parameters, independent of completion order.
pub fn verify_all(cases: &[IdentityCase], opts: &EngineOptions) -> Result<Vec<VerificationReport>> {
    let inner = EngineOptions { exec: Execution::Sequential, ..*opts };
    let mut reports = opts
        .exec
        .map(cases, |c| verify(c, &inner))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| r.sort_key());
    Ok(reports)
}

/// Upper ends for a parameter sweep. Fixed values in `base` are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepBounds {
    pub l_max: Option<i64>,
    pub m_max: Option<i64>,
    pub mvec_box: Option<i64>,
}

/// Every case of `identity` obtained by ranging the parameters not fixed in
/// `base` over their valid values, up to the given bounds.
pub fn sweep_cases(identity: Identity, base: &Params, bounds: &SweepBounds) -> Result<Vec<IdentityCase>> {
    let nu = require(base.nu, "nu")?;
    let nu_i = nu as i64;
    let s_range = |lo: i64, hi: i64| -> Vec<i64> { base.s.map_or_else(|| (lo..=hi).collect(), |s| vec![s]) };
    let b_range = || -> Vec<i64> { base.b.map_or_else(|| (0..=nu_i).collect(), |b| vec![b]) };
    let l_max = || require(bounds.l_max.or(base.l), "L");
    let m_max = || require(bounds.m_max.or(base.m), "M");
    let mut out = Vec::new();
    let mut push = |p: Params| out.push(IdentityCase::new(identity, p));
    let with = |s: Option<i64>, b: Option<i64>, l: Option<i64>, m: Option<i64>| Params {
        nu: Some(nu),
        s,
        b,
        l,
        m,
        mvec: None,
        q: base.q,
    };
    match identity {
        Identity::AndrewsGordon | Identity::SpecialM1 => {
            for s in s_range(0, nu_i) {
                push(with(Some(s), None, None, None));
            }
        }
        Identity::FodaQuanoKirillov => {
            for s in s_range(1, nu_i + 1) {
                for l in 0..=l_max()? {
                    push(with(Some(s), None, Some(l), None));
                }
            }
        }
        Identity::WarnaarPolynomial | Identity::GordonFermionic | Identity::ParticleBijection => {
            for s in s_range(0, nu_i) {
                for b in b_range() {
                    for l in 2..=l_max()? {
                        push(with(Some(s), Some(b), Some(l), None));
                    }
                }
            }
        }
        Identity::BressoudDictionary | Identity::GordonDictionary => {
            for s in s_range(0, nu_i) {
                for b in b_range() {
                    for l in 0..=l_max()? {
                        push(with(Some(s), Some(b), Some(l), None));
                    }
                }
            }
        }
        Identity::Variant1Series => {
            for m in 0..=m_max()? {
                push(with(None, None, None, Some(m)));
            }
        }
        Identity::Variant2Series => {
            for s in s_range(0, nu_i) {
                for m in 0..=m_max()? {
                    push(with(Some(s), None, None, Some(m)));
                }
            }
        }
        Identity::Variant1Finite => {
            for l in 0..=l_max()? {
                for m in 0..=l {
                    push(with(None, None, Some(l), Some(m)));
                }
            }
        }
        Identity::Variant2Finite => {
            for s in s_range(0, nu_i) {
                for b in b_range() {
                    for l in 2..=l_max()? {
                        for m in 0..=l {
                            push(with(Some(s), Some(b), Some(l), Some(m)));
                        }
                    }
                }
            }
        }
        Identity::Conjecture => {
            let side = require(bounds.mvec_box, "Mvec box")?;
            let mut mvec = vec![0i64; nu];
            loop {
                push(Params { mvec: Some(mvec.clone()), ..with(None, None, None, None) });
                // odometer over [0, side]^nu
                let mut i = nu;
                loop {
                    if i == 0 {
                        return Ok(out);
                    }
                    i -= 1;
                    if mvec[i] < side {
                        mvec[i] += 1;
                        break;
                    }
                    mvec[i] = 0;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(coeffs: &[i128]) -> Vec<ExactInt> {
        coeffs.iter().map(|&c| ExactInt::new(c)).collect()
    }

    #[test]
    fn products_match_partition_counts() {
        let p = restricted_product_series(1, 2, 6).unwrap();
        assert_eq!(p.coeffs(), series(&[1, 1, 1, 1, 2, 2, 3]).as_slice());
        let p = restricted_product_series(1, 1, 4).unwrap();
        assert_eq!(p.coeffs(), series(&[1, 0, 1, 1, 1]).as_slice());
        assert_eq!(restricted_product_series(3, 4, 0).unwrap().coeffs(), series(&[1]).as_slice());
        assert!(restricted_product_series(1, 5, 4).is_err());
    }

    #[test]
    fn truncation_bound_values() {
        assert_eq!(multisum_truncation_bound(1, 0, 9), 4);
        assert_eq!(multisum_truncation_bound(1, 0, 0), 1);
        assert_eq!(multisum_truncation_bound(1, 3, 20), 3 + 5 + 1);
    }

    #[test]
    fn rogers_ramanujan() {
        let lhs = ag_multisum(1, 1, 30);
        let rhs = restricted_product_series(1, 2, 30).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_name(id.name()), Some(id));
        }
        assert_eq!(Identity::from_name("nope"), None);
    }

    #[test]
    fn tilde_differences() {
        assert_eq!(tilde_m(&[3, 1, 1]), vec![2, 0, 1]);
    }

    #[test]
    fn sweep_box_size() {
        let base = Params { nu: Some(2), q: Some(5), ..Params::default() };
        let bounds = SweepBounds { mvec_box: Some(3), ..SweepBounds::default() };
        assert_eq!(sweep_cases(Identity::Conjecture, &base, &bounds).unwrap().len(), 16);
    }
}
