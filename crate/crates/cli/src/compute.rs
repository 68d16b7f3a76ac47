//! The `compute` verb: one member of a polynomial family.

use clap::ValueEnum;
use qag_core::bressoud_paths::{b_poly, c_poly_enumerated, c_poly_recurrence, refined_bressoud_gf};
use qag_core::gordon_paths::{f_poly, g_poly_enumerated, g_poly_recurrence, w_poly};
use qag_core::identity_engine::{multisum_series, restricted_product_series, supernomial_i};
use qag_core::q_gadgets::{gaussian_binomial, q_multinomial, q_supernomial};
use qag_core::{Execution, LaurentPoly, ParticleContent};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::{Failure, ParamArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Gaussian binomial: --top --bottom
    Qbinom,
    /// q-multinomial: --L --a --nu [--p]
    Qmultinom,
    /// q-supernomial: --lvec and --a or --two-a
    Qsupernom,
    /// Bressoud path count C_{M,L}(s,b): --nu --L --s --b [--M --enumerate]
    Cpoly,
    /// Alternating binomial sum B_{s,b}(L): --nu --s --b --L
    Bpoly,
    /// Gordon path count G_{M,L}(s,b): --nu --L --s --b [--M --enumerate]
    Gpoly,
    /// Alternating multinomial sum W_{s,b}(L): --nu --s --b --L
    Wpoly,
    /// Fermionic multisum F_{s,b}(L): --nu --s --b --L
    Fpoly,
    /// Alternating supernomial sum I_{s,b}(Lvec): --nu --s --b --lvec
    Ipoly,
    /// Per-content path count: --nu --L --s --n
    Refined,
    /// Restricted partition product: --nu --s --Q
    Product,
    /// sum_n q^{sum N_i^2 + sum c_i N_i} / prod (q)_{n_i}: --nu --linear --Q
    Multisum,
}

/// A computed polynomial, exact for exponents up to `order` when set.
#[derive(Debug, Serialize)]
pub struct Computed {
    pub family: String,
    pub params: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<i64>,
    pub min_exp: Option<i64>,
    pub coeffs: Vec<i128>,
    pub text: String,
    #[serde(skip)]
    pub value: LaurentPoly,
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn need_vec<'a>(v: &'a Option<Vec<i64>>, flag: &str) -> Result<&'a [i64], Failure> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Usage(msg()))
    }
}

fn nu_of(p: &ParamArgs) -> Result<usize, Failure> {
    let nu = need(p.nu, "nu")?;
    check(nu >= 1, || "--nu must be at least 1".into())?;
    Ok(nu)
}

fn boundary(v: Option<i64>, flag: &str, nu: usize) -> Result<i64, Failure> {
    let v = need(v, flag)?;
    check((0..=nu as i64).contains(&v), || format!("--{flag}={v} outside 0..={nu}"))?;
    Ok(v)
}

fn record(params: &mut Map<String, Value>, key: &str, v: impl Into<Value>) {
    params.insert(key.to_string(), v.into());
}

pub fn compute(family: Family, p: &ParamArgs) -> Result<Computed, Failure> {
    let mut params = Map::new();
    let mut order = None;
    let value = match family {
        Family::Qbinom => {
            let (top, bottom) = (need(p.top, "top")?, need(p.bottom, "bottom")?);
            record(&mut params, "top", top);
            record(&mut params, "bottom", bottom);
            gaussian_binomial(top, bottom)
        }
        Family::Qmultinom => {
            let (nu, l, a) = (nu_of(p)?, need(p.l, "L")?, need(p.a, "a")?);
            let sup = p.p.unwrap_or(0);
            check((-1..=nu as i64).contains(&sup), || format!("--p={sup} outside -1..={nu}"))?;
            record(&mut params, "nu", nu);
            record(&mut params, "L", l);
            record(&mut params, "a", a);
            record(&mut params, "p", sup);
            q_multinomial(l, a, nu, sup)
        }
        Family::Qsupernom => {
            let lvec = need_vec(&p.lvec, "lvec")?;
            check(!lvec.is_empty(), || "--lvec must be non-empty".into())?;
            let two_a = match (p.a, p.two_a) {
                (Some(a), None) => 2 * a,
                (None, Some(t)) => t,
                _ => return Err(Failure::Usage("give exactly one of --a and --two-a".into())),
            };
            record(&mut params, "lvec", lvec.to_vec());
            record(&mut params, "two_a", two_a);
            q_supernomial(lvec, two_a)
        }
        Family::Cpoly | Family::Gpoly => {
            let nu = nu_of(p)?;
            let (l, s, b) = (need(p.l, "L")?, boundary(p.s, "s", nu)?, boundary(p.b, "b", nu)?);
            let m = p.m.unwrap_or(0);
            record(&mut params, "nu", nu);
            record(&mut params, "M", m);
            record(&mut params, "L", l);
            record(&mut params, "s", s);
            record(&mut params, "b", b);
            let gordon = family == Family::Gpoly;
            if p.enumerate || m != 0 {
                check(l >= m, || format!("--L={l} below --M={m}"))?;
                if gordon {
                    g_poly_enumerated(m, l, s, b, nu, p.cap)?
                } else {
                    c_poly_enumerated(m, l, s, b, nu, p.cap)?
                }
            } else if gordon {
                g_poly_recurrence(nu, l, s, b)
            } else {
                c_poly_recurrence(nu, l, s, b)
            }
        }
        Family::Bpoly | Family::Wpoly | Family::Fpoly => {
            let nu = nu_of(p)?;
            let (s, b, l) = (need(p.s, "s")?, need(p.b, "b")?, need(p.l, "L")?);
            record(&mut params, "nu", nu);
            record(&mut params, "s", s);
            record(&mut params, "b", b);
            record(&mut params, "L", l);
            match family {
                Family::Bpoly => b_poly(nu, s, b, l),
                Family::Wpoly => {
                    check((0..=nu as i64).contains(&b), || format!("--b={b} outside 0..={nu}"))?;
                    w_poly(nu, s, b, l)
                }
                _ => {
                    boundary(Some(s), "s", nu)?;
                    boundary(Some(b), "b", nu)?;
                    f_poly(nu, s, b, l)
                }
            }
        }
        Family::Ipoly => {
            let nu = nu_of(p)?;
            let (s, b) = (need(p.s, "s")?, need(p.b, "b")?);
            let lvec = need_vec(&p.lvec, "lvec")?;
            check(lvec.len() == nu, || format!("--lvec needs {nu} entries"))?;
            record(&mut params, "nu", nu);
            record(&mut params, "s", s);
            record(&mut params, "b", b);
            record(&mut params, "lvec", lvec.to_vec());
            supernomial_i(nu, s, b, lvec)
        }
        Family::Refined => {
            let nu = nu_of(p)?;
            let (l, s) = (need(p.l, "L")?, boundary(p.s, "s", nu)?);
            let n = need_vec(&p.n, "n")?;
            check(n.len() == nu && n.iter().all(|&x| x >= 0), || {
                format!("--n needs {nu} non-negative entries")
            })?;
            record(&mut params, "nu", nu);
            record(&mut params, "L", l);
            record(&mut params, "s", s);
            record(&mut params, "n", n.to_vec());
            refined_bressoud_gf(nu, l, s, &ParticleContent::new(n.to_vec()))
        }
        Family::Product => {
            let (nu, s, q) = (nu_of(p)?, need(p.s, "s")?, need(p.q, "Q")?);
            check(q >= 0, || "--Q must be non-negative".into())?;
            record(&mut params, "nu", nu);
            record(&mut params, "s", s);
            record(&mut params, "Q", q);
            order = Some(q);
            restricted_product_series(nu, s, q as usize)?.to_laurent()
        }
        Family::Multisum => {
            let (nu, q) = (nu_of(p)?, need(p.q, "Q")?);
            check(q >= 0, || "--Q must be non-negative".into())?;
            let linear = need_vec(&p.linear, "linear")?;
            check(linear.len() == nu, || format!("--linear needs {nu} entries"))?;
            record(&mut params, "nu", nu);
            record(&mut params, "linear", linear.to_vec());
            record(&mut params, "Q", q);
            order = Some(q);
            multisum_series(nu, linear, q, Execution::default()).0
        }
    };
    let min_exp = value.min_exp();
    let coeffs = match (min_exp, value.max_exp()) {
        (Some(lo), Some(hi)) => value.window(lo, hi).iter().map(|c| c.get()).collect(),
        _ => Vec::new(),
    };
    Ok(Computed {
        family: format!("{family:?}").to_lowercase(),
        params,
        order,
        min_exp,
        coeffs,
        text: value.to_string(),
        value,
    })
}
