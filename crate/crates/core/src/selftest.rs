//! The acceptance suite: ten criteria, each a deterministic sweep of exact
//! comparisons over a fixed parameter grid.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use crate::bressoud_paths::{
    c_poly_by_content, c_poly_enumerated, c_poly_recurrence, c_poly_via_b, fqk_bosonic,
    fqk_multisum, refined_bressoud_gf, BressoudPath, Step,
};
use crate::content::ParticleContent;
use crate::exec::Execution;
use crate::gordon_paths::{
    f_poly, f_poly_via_w, g_poly_enumerated, g_poly_recurrence, g_poly_via_w, particle_bijection_check,
    GordonSequence, DEFAULT_STATE_CAP,
};
use crate::identity_engine::{
    compute_sides, multisum_series, multisum_series_bounded, multisum_truncation_bound,
    report_from_sides, tilde_m, variant2_finite_lhs, variant2_finite_rhs, EngineOptions, Identity,
    IdentityCase, Params, Sides,
};
use crate::q_gadgets::{gaussian_binomial, q_multinomial, q_supernomial};
use crate::series_core::LaurentPoly;

/// Largest window the suite enumerates.
pub const SELFTEST_CAP: i64 = 12;

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Every failure belongs to a documented counterexample family rather
    /// than to a defect of the implementation.
    pub explained: bool,
    /// Number of individual comparisons made.
    pub checks: usize,
    /// Failures (first few) or a summary.
    pub detail: String,
    pub elapsed_ms: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.passed, self.explained) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented counterexamples)",
            (false, false) => "FAIL",
        };
        write!(
            f,
            "[{}] criterion {:>2}: {} ({} checks, {} ms) {}",
            verdict,
            self.id,
            self.title,
            self.checks,
            self.elapsed_ms,
            self.detail
        )
    }
}

pub const TITLES: [&str; 10] = [
    "q-multinomial symmetries, recurrence, tautologies and special values",
    "supernomial specializations",
    "Bressoud path enumeration against the recurrence and the refined formula",
    "C-to-B dictionary, polynomial fermionic formula and sample paths",
    "Gordon path enumeration against the recurrence and the W/F forms",
    "particle orbits partition the Gordon paths and match the product formula",
    "finite variants",
    "series variants and the classical mod 5 products",
    "supernomial conjecture and its collapse cases",
    "stability under larger truncation order and multisum bound",
];

/// Collects failures while a criterion runs.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
    /// How many of `failures` are documented counterexamples.
    explained: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        self.explained += other.explained;
    }

    fn finish(self, id: u8, started: Instant) -> CriterionResult {
        let passed = self.failures.is_empty();
        let detail = if passed {
            self.notes.join("; ")
        } else {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            let mut d = format!("{} failures, first: {}", self.failures.len(), shown.join(" | "));
            for n in &self.notes {
                d.push_str("; ");
                d.push_str(n);
            }
            d
        };
        CriterionResult {
            id,
            title: TITLES[id as usize - 1],
            passed,
            explained: !passed && self.explained == self.failures.len(),
            checks: self.checks,
            detail,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

fn eq_check(t: &mut Tally, lhs: &LaurentPoly, rhs: &LaurentPoly, what: impl FnOnce() -> String) {
    t.check(lhs == rhs, || {
        let at = lhs.first_difference(rhs).unwrap_or_default();
        format!("{} differs at q^{at}", what())
    });
}

/// Runs one criterion (`1..=10`).
pub fn run_criterion(id: u8, exec: Execution) -> CriterionResult {
    let started = Instant::now();
    let tally = match id {
        1 => multinomial_suite(exec),
        2 => supernomial_specials(),
        3 => bressoud_oracles(exec),
        4 => bressoud_identities(exec),
        5 => gordon_oracles(exec),
        6 => particle_bijection(exec),
        7 => finite_variants(exec),
        8 => series_variants(exec, 0),
        9 => conjecture(exec, 0),
        10 => stability(exec),
        _ => panic!("no criterion {id}"),
    };
    tally.finish(id, started)
}

/// Runs all ten criteria in order.
pub fn run_all(exec: Execution) -> Vec<CriterionResult> {
    (1..=10).map(|id| run_criterion(id, exec)).collect()
}

fn multinomial_suite(exec: Execution) -> Tally {
    let grid: Vec<(usize, i64)> = (1..=4).flat_map(|nu| (0..=8).map(move |l| (nu, l))).collect();
    let parts = exec.map(&grid, |&(nu, l)| {
        let mut t = Tally::default();
        let nu_i = nu as i64;
        let mut memo: HashMap<(i64, i64, i64), LaurentPoly> = HashMap::new();
        let mut mult = |l: i64, a: i64, p: i64| {
            memo.entry((l, a, p)).or_insert_with(|| q_multinomial(l, a, nu, p)).clone()
        };
        let top = nu_i * l;
        for a in -2..=top + 2 {
            for p in 0..=nu_i {
                let here = mult(l, a, p);
                if a < 0 || a > top {
                    t.check(here.is_zero(), || format!("nu={nu} L={l} a={a} p={p}: nonzero outside range"));
                    continue;
                }
                let mirrored = mult(l, top - a, nu_i - p).shift((nu_i - p) * l - a);
                eq_check(&mut t, &here, &mirrored, || format!("symmetry nu={nu} L={l} a={a} p={p}"));
                if l == 0 {
                    let delta = if a == 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
                    eq_check(&mut t, &here, &delta, || format!("L=0 value nu={nu} a={a} p={p}"));
                }
                if l >= 1 {
                    let mut rec = LaurentPoly::zero();
                    for m in 0..=nu_i {
                        let e = if m <= nu_i - p { m * (l - 1) } else { l * (nu_i - p) - m };
                        rec += &mult(l - 1, a - m, m).shift(e);
                    }
                    eq_check(&mut t, &here, &rec, || format!("recurrence nu={nu} L={l} a={a} p={p}"));
                }
            }
            if (0..=top).contains(&a) {
                let plain = mult(l, a, 0);
                eq_check(&mut t, &plain, &mult(l, top - a, 0), || format!("p=0 symmetry nu={nu} L={l} a={a}"));
            }
            t.check(mult(l, a, -1).is_zero(), || format!("p=-1 nonzero nu={nu} L={l} a={a}"));
            for p in -1..nu_i {
                let b = top - a - p - 1;
                let lhs = &mult(l, a, p) + &mult(l, b, p + 1).shift(l);
                let rhs = &mult(l, a, p + 1).shift(l) + &mult(l, b, p);
                eq_check(&mut t, &lhs, &rhs, || format!("tautology nu={nu} L={l} a={a} p={p}"));
            }
        }
        t
    });
    let mut total = Tally::default();
    parts.into_iter().for_each(|p| total.merge(p));
    total
}

fn supernomial_specials() -> Tally {
    let mut t = Tally::default();
    for nu in 1..=3usize {
        let nu_i = nu as i64;
        for l in 0..=8i64 {
            let mut first = vec![0; nu];
            first[0] = l;
            let mut last = vec![0; nu];
            last[nu - 1] = l;
            for target in -1..=nu_i * l + 1 {
                if target <= l + 1 {
                    let got = q_supernomial(&first, 2 * target - l);
                    eq_check(&mut t, &got, &gaussian_binomial(l, target), || {
                        format!("first-slot nu={nu} L={l} target={target}")
                    });
                }
                let got = q_supernomial(&last, 2 * target - nu_i * l);
                eq_check(&mut t, &got, &q_multinomial(l, target, nu, 0), || {
                    format!("last-slot nu={nu} L={l} target={target}")
                });
            }
            // half-integral targets vanish
            if (l * (nu_i * (nu_i + 1) / 2)) % 2 == 0 {
                let full = vec![l; nu];
                t.check(q_supernomial(&full, 1).is_zero(), || format!("half-integral nu={nu} L={l}"));
            }
        }
    }
    t
}

fn bressoud_oracles(exec: Execution) -> Tally {
    let grid: Vec<(usize, i64, i64, i64)> = (1..=3usize)
        .flat_map(|nu| {
            (0..=8).flat_map(move |l| {
                (0..=nu as i64).flat_map(move |s| (0..=nu as i64).map(move |b| (nu, l, s, b)))
            })
        })
        .collect();
    let parts = exec.map(&grid, |&(nu, l, s, b)| {
        let mut t = Tally::default();
        match c_poly_enumerated(0, l, s, b, nu, SELFTEST_CAP) {
            Ok(enumerated) => eq_check(&mut t, &enumerated, &c_poly_recurrence(nu, l, s, b), || {
                format!("C enumeration nu={nu} L={l} s={s} b={b}")
            }),
            Err(e) => t.check(false, || format!("nu={nu} L={l}: {e}")),
        }
        // per-content formula: start at nu - s, end on the axis
        if nu <= 2 && b == 0 {
            let by = c_poly_by_content(0, l, nu as i64 - s, 0, nu, SELFTEST_CAP).unwrap_or_default();
            for n in ParticleContent::all_up_to(nu, l / 2) {
                let got = by.get(&n).cloned().unwrap_or_default();
                eq_check(&mut t, &got, &refined_bressoud_gf(nu, l, s, &n), || {
                    format!("refined nu={nu} L={l} s={s} n={n}")
                });
            }
            let outside = by.keys().filter(|n| n.tail(1) > l / 2).count();
            t.check(outside == 0, || format!("refined nu={nu} L={l} s={s}: content beyond bound"));
        }
        t
    });
    let mut total = Tally::default();
    parts.into_iter().for_each(|p| total.merge(p));
    total
}

/// The path drawn in the sample, and its expected data.
pub fn sample_bressoud_path() -> BressoudPath {
    use Step::*;
    let steps = vec![
        NE, SE, SE, NE, NE, SE, NE, SE, SE, NE, NE, SE, NE, NE, NE, SE, SE, SE, SE, H, H,
    ];
    BressoudPath::new((-8, 1), steps).expect("valid path")
}

/// The Gordon sequence of the sample (`nu = 7`).
pub fn sample_gordon_sequence() -> GordonSequence {
    GordonSequence::new(-2, vec![1, 2, 3, 1, 4, 3])
}

fn bressoud_identities(exec: Execution) -> Tally {
    let grid: Vec<(usize, i64)> = (1..=3).flat_map(|nu| (0..=10).map(move |l| (nu, l))).collect();
    let parts = exec.map(&grid, |&(nu, l)| {
        let mut t = Tally::default();
        let nu_i = nu as i64;
        for s in 0..=nu_i {
            for b in 0..=nu_i {
                eq_check(&mut t, &c_poly_recurrence(nu, l, s, b), &c_poly_via_b(nu, l, s, b), || {
                    format!("C via B nu={nu} L={l} s={s} b={b}")
                });
            }
        }
        for s in 1..=nu_i + 1 {
            eq_check(&mut t, &fqk_multisum(nu, s, l), &fqk_bosonic(nu, s, l), || {
                format!("polynomial fermionic formula nu={nu} L={l} s={s}")
            });
        }
        t
    });
    let mut t = Tally::default();
    parts.into_iter().for_each(|p| t.merge(p));
    let path = sample_bressoud_path();
    t.check(path.weight() == -1, || format!("sample path weight {}", path.weight()));
    t.check(path.relative_heights() == vec![1, 2, 1, 1, 4], || {
        format!("sample path relative heights {:?}", path.relative_heights())
    });
    let seq = sample_gordon_sequence();
    t.check(seq.is_valid(7) && seq.weight() == 7, || format!("sample Gordon weight {}", seq.weight()));
    t.notes.push(format!(
        "sample path weight {} heights {:?}; Gordon weight {}",
        path.weight(),
        path.relative_heights(),
        seq.weight()
    ));
    t
}

fn gordon_oracles(exec: Execution) -> Tally {
    let grid: Vec<(usize, i64, i64, i64)> = (1..=2usize)
        .flat_map(|nu| {
            (0..=6).flat_map(move |l| {
                (0..=nu as i64).flat_map(move |s| (0..=nu as i64).map(move |b| (nu, l, s, b)))
            })
        })
        .collect();
    let parts = exec.map(&grid, |&(nu, l, s, b)| {
        let mut t = Tally::default();
        let nu_i = nu as i64;
        let rec = g_poly_recurrence(nu, l, s, b);
        match g_poly_enumerated(0, l, s, b, nu, SELFTEST_CAP) {
            Ok(e) => eq_check(&mut t, &e, &rec, || format!("G enumeration nu={nu} L={l} s={s} b={b}")),
            Err(e) => t.check(false, || format!("nu={nu} L={l}: {e}")),
        }
        let shifted = g_poly_recurrence(nu, l, nu_i - s, b);
        eq_check(&mut t, &shifted, &g_poly_via_w(nu, s, b, l), || {
            format!("G via W nu={nu} L={l} s={s} b={b}")
        });
        if l >= 2 {
            eq_check(&mut t, &rec, &f_poly(nu, nu_i - s, nu_i - b, l), || {
                format!("G via F nu={nu} L={l} s={s} b={b}")
            });
            eq_check(&mut t, &f_poly(nu, s, b, l), &f_poly_via_w(nu, s, b, l), || {
                format!("F via W nu={nu} L={l} s={s} b={b}")
            });
        }
        t
    });
    let mut total = Tally::default();
    parts.into_iter().for_each(|p| total.merge(p));
    total
}

fn particle_bijection(exec: Execution) -> Tally {
    let grid: Vec<(usize, i64, i64, i64)> = (1..=2usize)
        .flat_map(|nu| {
            (2..=6).flat_map(move |l| {
                (0..=nu as i64).flat_map(move |s| (0..=nu as i64).map(move |b| (nu, l, s, b)))
            })
        })
        .collect();
    let parts = exec.map(&grid, |&(nu, l, s, b)| {
        let mut t = Tally::default();
        match particle_bijection_check(nu, s, b, l, SELFTEST_CAP, DEFAULT_STATE_CAP) {
            Ok(c) => {
                t.check(c.formula_mismatches.is_empty(), || {
                    format!("orbit count nu={nu} L={l} s={s} b={b} contents {:?}", c.formula_mismatches)
                });
                t.check(c.overlaps == 0, || format!("overlap nu={nu} L={l} s={s} b={b}: {}", c.overlaps));
                t.check(c.uncovered == 0, || format!("uncovered nu={nu} L={l} s={s} b={b}: {}", c.uncovered));
                t.check(c.invariant_violations == 0, || {
                    format!("height invariant nu={nu} L={l} s={s} b={b}: {}", c.invariant_violations)
                });
                t.checks += c.contents_checked + c.sequences;
            }
            Err(e) => t.check(false, || format!("nu={nu} L={l}: {e}")),
        }
        t
    });
    let mut total = Tally::default();
    parts.into_iter().for_each(|p| total.merge(p));
    total
}

fn finite_variants(exec: Execution) -> Tally {
    let opts = EngineOptions { exec: Execution::Sequential, ..EngineOptions::default() };
    let mut cases = Vec::new();
    for nu in 1..=2usize {
        for l in 0..=8i64 {
            for m in 0..=l {
                cases.push(IdentityCase::new(
                    Identity::Variant1Finite,
                    Params { nu: Some(nu), l: Some(l), m: Some(m), ..Params::default() },
                ));
            }
        }
        for s in 0..=nu as i64 {
            for b in 0..=nu as i64 {
                for l in 2..=6i64 {
                    for m in 0..=l {
                        cases.push(IdentityCase::new(
                            Identity::Variant2Finite,
                            Params { nu: Some(nu), s: Some(s), b: Some(b), l: Some(l), m: Some(m), ..Params::default() },
                        ));
                    }
                }
            }
        }
    }
    let parts = exec.map(&cases, |c| {
        let mut t = Tally::default();
        match compute_sides(c, &opts) {
            Ok(sides) => eq_check(&mut t, &sides.lhs, &sides.rhs, || format!("{} {}", c.identity, c.params)),
            Err(e) => t.check(false, || format!("{} {}: {e}", c.identity, c.params)),
        }
        t
    });
    let mut total = Tally::default();
    parts.into_iter().for_each(|p| total.merge(p));
    // below the stated range of the second finite variant: report, not gate
    let mut low = Vec::new();
    for nu in 1..=2usize {
        let nu_i = nu as i64;
        for s in 0..=nu_i {
            for b in 0..=nu_i {
                for l in 0..=1i64 {
                    for m in 0..=l {
                        if variant2_finite_lhs(nu, s, b, m, l) != variant2_finite_rhs(nu, s, b, m, l) {
                            low.push(format!("nu={nu} s={s} b={b} L={l} M={m}"));
                        }
                    }
                }
            }
        }
    }
    if !low.is_empty() {
        total.notes.push(format!(
            "second finite variant outside L >= 2 differs at {} of the L in {{0,1}} points (e.g. {})",
            low.len(),
            low[0]
        ));
    }
    total
}

fn series_cases(q_extra: i64) -> Vec<IdentityCase> {
    let mut cases = Vec::new();
    let q = 25 + q_extra;
    for nu in 1..=3usize {
        let nu_i = nu as i64;
        for m in 0..=4i64 {
            cases.push(IdentityCase::new(
                Identity::Variant1Series,
                Params { nu: Some(nu), m: Some(m), q: Some(q), ..Params::default() },
            ));
            for s in 0..=nu_i {
                cases.push(IdentityCase::new(
                    Identity::Variant2Series,
                    Params { nu: Some(nu), s: Some(s), m: Some(m), q: Some(q), ..Params::default() },
                ));
            }
        }
        for s in 0..=nu_i {
            cases.push(IdentityCase::new(
                Identity::SpecialM1,
                Params { nu: Some(nu), s: Some(s), q: Some(q), ..Params::default() },
            ));
            cases.push(IdentityCase::new(
                Identity::AndrewsGordon,
                Params { nu: Some(nu), s: Some(s), q: Some(q), ..Params::default() },
            ));
        }
    }
    for s in 0..=1 {
        cases.push(IdentityCase::new(
            Identity::AndrewsGordon,
            Params { nu: Some(1), s: Some(s), q: Some(40 + q_extra), ..Params::default() },
        ));
    }
    cases
}

fn conjecture_cases(q_extra: i64) -> Vec<IdentityCase> {
    let q = 20 + q_extra;
    let mut cases = Vec::new();
    for (nu, side) in [(2usize, 3i64), (3, 2)] {
        let mut mvec = vec![0i64; nu];
        'odometer: loop {
            cases.push(IdentityCase::new(
                Identity::Conjecture,
                Params { nu: Some(nu), mvec: Some(mvec.clone()), q: Some(q), ..Params::default() },
            ));
            let mut i = nu;
            loop {
                if i == 0 {
                    break 'odometer;
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
    cases
}

fn sides_of(cases: &[IdentityCase], exec: Execution) -> Vec<(IdentityCase, Result<Sides, String>)> {
    let opts = EngineOptions { exec: Execution::Sequential, ..EngineOptions::default() };
    let sides = exec.map(cases, |c| compute_sides(c, &opts).map_err(|e| e.to_string()));
    cases.iter().cloned().zip(sides).collect()
}

fn tally_sides(results: &[(IdentityCase, Result<Sides, String>)]) -> Tally {
    let mut t = Tally::default();
    for (c, r) in results {
        match r {
            Ok(sides) => {
                let report = report_from_sides(c, sides);
                t.check(report.passed(), || {
                    format!(
                        "{} {} first mismatch at q^{}",
                        c.identity,
                        c.params,
                        report.first_mismatch_order.unwrap_or_default()
                    )
                });
            }
            Err(e) => t.check(false, || format!("{} {}: {e}", c.identity, c.params)),
        }
    }
    t
}

fn series_variants(exec: Execution, q_extra: i64) -> Tally {
    let results = sides_of(&series_cases(q_extra), exec);
    let mut t = tally_sides(&results);
    // the second variant at M = 1 against the closed form with plain products
    for (c, r) in &results {
        if c.identity != Identity::Variant2Series || c.params.m != Some(1) {
            continue;
        }
        let special = results.iter().find(|(d, _)| {
            d.identity == Identity::SpecialM1 && d.params.nu == c.params.nu && d.params.s == c.params.s
        });
        if let (Ok(a), Some((_, Ok(b)))) = (r, special) {
            eq_check(&mut t, &a.rhs, &b.rhs, || format!("M=1 specialization {}", c.params));
        }
    }
    t
}

fn conjecture(exec: Execution, q_extra: i64) -> Tally {
    let results = sides_of(&conjecture_cases(q_extra), exec);
    let mut t = tally_sides(&results);
    // every failing Mvec should have a negative consecutive difference
    let (mut monotone_fail, mut other_fail, mut monotone_pass) = (0usize, 0usize, 0usize);
    for (c, r) in &results {
        let mv = c.params.mvec.clone().unwrap_or_default();
        let increasing_somewhere = tilde_m(&mv).iter().any(|&d| d < 0);
        let ok = matches!(r, Ok(sides) if sides.lhs == sides.rhs);
        match (ok, increasing_somewhere) {
            (false, true) => other_fail += 1,
            (false, false) => monotone_fail += 1,
            (true, false) => monotone_pass += 1,
            (true, true) => {}
        }
    }
    if monotone_fail == 0 {
        t.explained += other_fail;
    }
    t.notes.push(format!(
        "{monotone_pass} non-increasing Mvec pass, {monotone_fail} fail; {other_fail} mismatches, all at Mvec with M_i < M_{{i+1}} for some i"
    ));
    let q = 20 + q_extra;
    // collapse cases against the two proven variants
    let mut collapse = Vec::new();
    for nu in 2..=3usize {
        let side = if nu == 2 { 3 } else { 2 };
        for m in 0..=side {
            let mut first = vec![0; nu];
            first[0] = m;
            collapse.push((
                IdentityCase::new(Identity::Conjecture, Params { nu: Some(nu), mvec: Some(first), q: Some(q), ..Params::default() }),
                IdentityCase::new(Identity::Variant1Series, Params { nu: Some(nu), m: Some(m), q: Some(q), ..Params::default() }),
            ));
            collapse.push((
                IdentityCase::new(Identity::Conjecture, Params { nu: Some(nu), mvec: Some(vec![m; nu]), q: Some(q), ..Params::default() }),
                IdentityCase::new(
                    Identity::Variant2Series,
                    Params { nu: Some(nu), s: Some(nu as i64), m: Some(m), q: Some(q), ..Params::default() },
                ),
            ));
        }
    }
    let opts = EngineOptions { exec: Execution::Sequential, ..EngineOptions::default() };
    let pairs = exec.map(&collapse, |(a, b)| (compute_sides(a, &opts), compute_sides(b, &opts)));
    for ((a, b), (x, y)) in collapse.iter().zip(pairs) {
        match (x, y) {
            (Ok(x), Ok(y)) => {
                t.check(x.lhs == y.lhs && x.rhs == y.rhs, || format!("collapse {} vs {} {}", a.params, b.identity, b.params));
            }
            _ => t.check(false, || format!("collapse {} failed to compute", a.params)),
        }
    }
    t
}

fn stability(exec: Execution) -> Tally {
    let mut t = Tally::default();
    let mut cases = series_cases(0);
    cases.extend(conjecture_cases(0));
    let base = sides_of(&cases, exec);
    let bumped: Vec<IdentityCase> = cases
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.params.q = c.params.q.map(|q| q + 5);
            c
        })
        .collect();
    let wider = sides_of(&bumped, exec);
    for ((c, a), (_, b)) in base.iter().zip(&wider) {
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let q = c.params.q.unwrap_or(0);
                let agree = a.lhs == b.lhs.truncate_above(q) && a.rhs == b.rhs.truncate_above(q);
                let same_verdict = (a.lhs == a.rhs) == (b.lhs == b.rhs);
                t.check(agree && same_verdict, || format!("{} {} changes at Q+5", c.identity, c.params));
            }
            _ => t.check(false, || format!("{} {} failed to compute", c.identity, c.params)),
        }
    }
    // analytic bound against one more particle, without the retry loop
    let mut linears: Vec<(usize, Vec<i64>, i64)> = Vec::new();
    for nu in 1..=3usize {
        for m in 0..=4i64 {
            for s in 0..=nu as i64 {
                let lin: Vec<i64> = (1..=nu as i64).map(|i| i64::from(i > s) - m).collect();
                linears.push((nu, lin, 25));
            }
        }
    }
    for c in conjecture_cases(0) {
        let lin = c.params.mvec.unwrap_or_default().iter().map(|m| -m).collect();
        linears.push((c.params.nu.unwrap_or(1), lin, 20));
    }
    let mut raised = 0usize;
    let checks = exec.map(&linears, |(nu, lin, q)| {
        let m_max = lin.iter().map(|&c| -c).max().unwrap_or(0).max(0);
        let bound = multisum_truncation_bound(*nu, m_max, *q);
        let at = multisum_series_bounded(*nu, lin, *q, bound, Execution::Sequential);
        let next = multisum_series_bounded(*nu, lin, *q, bound + 1, Execution::Sequential);
        let (_, used) = multisum_series(*nu, lin, *q, Execution::Sequential);
        (at == next, used > bound)
    });
    for ((nu, lin, q), (ok, was_raised)) in linears.iter().zip(checks) {
        t.check(ok, || format!("multisum nu={nu} c={lin:?} Q={q} changes at N_max+1"));
        raised += usize::from(was_raised);
    }
    t.notes.push(format!("{} series cases, {} multisums, bound raised {raised} times", cases.len(), linears.len()));
    t
}
