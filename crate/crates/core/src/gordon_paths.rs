//! Gordon frequency sequences `f_M..f_L` with `f_j >= 0` and
//! `f_j + f_{j+1} <= nu`, their weights, the G, W and F polynomials, and the
//! particle dynamics that generate every sequence from a minimal one.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::bressoud_paths::{fermionic_product, j_range};
use crate::content::{alpha, ParticleContent};
use crate::error::{Error, Result};
use crate::q_gadgets::q_multinomial;
use crate::series_core::LaurentPoly;

/// Default bound on visited particle states per orbit.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A frequency sequence `f_M, ..., f_L`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GordonSequence {
    pub m: i64,
    pub f: Vec<i64>,
}

impl GordonSequence {
    pub fn new(m: i64, f: Vec<i64>) -> Self {
        assert!(!f.is_empty(), "a sequence has at least one column");
        GordonSequence { m, f }
    }

    pub fn l(&self) -> i64 {
        self.m + self.f.len() as i64 - 1
    }

    /// `f_j` for `M <= j <= L`.
    pub fn at(&self, j: i64) -> i64 {
        self.f[(j - self.m) as usize]
    }

    pub fn is_valid(&self, nu: usize) -> bool {
        self.f.iter().all(|&x| x >= 0) && self.f.windows(2).all(|w| w[0] + w[1] <= nu as i64)
    }

    /// `sum_{j=M+1}^{L-1} j f_j`.
    pub fn weight(&self) -> i64 {
        (self.m + 1..self.l()).map(|j| j * self.at(j)).sum()
    }

    /// `sum_{j=M+1}^{L-1} f_j`.
    pub fn interior_height(&self) -> i64 {
        (self.m + 1..self.l()).map(|j| self.at(j)).sum()
    }

    pub fn translate_left(&self, by: i64) -> GordonSequence {
        GordonSequence { m: self.m - by, f: self.f.clone() }
    }

    /// Mirror image across the y-axis: `f'_j = f_{-j}`.
    pub fn reflect(&self) -> GordonSequence {
        let mut f = self.f.clone();
        f.reverse();
        GordonSequence { m: -self.l(), f }
    }
}

fn check_window(m: i64, l: i64, s: i64, b: i64, nu: usize, cap: i64) -> Result<()> {
    if l < m {
        return Err(Error::InvalidParameter(format!("L={l} < M={m}")));
    }
    if l - m > cap {
        return Err(Error::EnumerationTooLarge { span: l - m, cap });
    }
    let nu = nu as i64;
    if !(0..=nu).contains(&s) || !(0..=nu).contains(&b) {
        return Err(Error::InvalidParameter(format!("boundary heights must lie in 0..={nu}")));
    }
    Ok(())
}

/// Every sequence on `[M, L]` with `f_M = s`, `f_L = b` obeying the Gordon
/// conditions, in lexicographic order.
pub fn enumerate_gordon(m: i64, l: i64, s: i64, b: i64, nu: usize, cap: i64) -> Result<Vec<GordonSequence>> {
    check_window(m, l, s, b, nu, cap)?;
    let nu = nu as i64;
    let width = (l - m) as usize;
    let mut out = Vec::new();
    if width == 0 {
        if s == b {
            out.push(GordonSequence::new(m, vec![s]));
        }
        return Ok(out);
    }
    fn rec(f: &mut Vec<i64>, width: usize, b: i64, nu: i64, m: i64, out: &mut Vec<GordonSequence>) {
        let prev = *f.last().expect("sequence starts with f_M");
        if f.len() == width {
            if prev + b <= nu {
                f.push(b);
                out.push(GordonSequence::new(m, f.clone()));
                f.pop();
            }
            return;
        }
        for x in 0..=nu - prev {
            f.push(x);
            rec(f, width, b, nu, m, out);
            f.pop();
        }
    }
    rec(&mut vec![s], width, b, nu, m, &mut out);
    Ok(out)
}

/// `G_{M,L}(s, b)` by enumeration.
pub fn g_poly_enumerated(m: i64, l: i64, s: i64, b: i64, nu: usize, cap: i64) -> Result<LaurentPoly> {
    let seqs = enumerate_gordon(m, l, s, b, nu, cap)?;
    Ok(LaurentPoly::from_terms(seqs.iter().map(|p| (p.weight(), 1i64))))
}

/// `G_{0,L}(s_arg, b)` from
/// `G_{0,L}(s_arg, b) = sum_{l=0}^{nu-b} q^{(L-1) l} G_{0,L-1}(s_arg, l)` and
/// `G_{0,0}(s_arg, b) = [s_arg = b]`. Zero for `L < 0`.
pub fn g_poly_recurrence(nu: usize, l: i64, s_arg: i64, b: i64) -> LaurentPoly {
    if l < 0 {
        return LaurentPoly::zero();
    }
    let mut row: Vec<LaurentPoly> = (0..=nu as i64)
        .map(|x| if x == s_arg { LaurentPoly::one() } else { LaurentPoly::zero() })
        .collect();
    for len in 1..=l {
        row = (0..=nu)
            .map(|bb| (0..=nu - bb).map(|x| row[x].shift((len - 1) * x as i64)).sum())
            .collect();
    }
    row.swap_remove(b as usize)
}

/// `W_{s,b}(L)`: with `K = 2 nu + 3`,
/// `sum_j q^{j((2j+1)K - 2s)} [L, (nu(L+1) - s - b + 1)/2 + Kj]^(b)
///      - q^{(2j+1)(Kj+s)} [L, (nu(L+1) + s - b + 1)/2 + Kj]^(b)`.
/// Terms with a non-integral lower index are zero.
pub fn w_poly(nu: usize, s: i64, b: i64, l: i64) -> LaurentPoly {
    let nu_i = nu as i64;
    let k = 2 * nu_i + 3;
    let mut acc = LaurentPoly::zero();
    if l < 0 {
        return acc;
    }
    let top = nu_i * l;
    let twice = nu_i * (l + 1) - s - b + 1;
    if twice.rem_euclid(2) == 0 {
        let base = twice / 2;
        for j in j_range(base, k, 0, top) {
            acc += &q_multinomial(l, base + k * j, nu, b).shift(j * ((2 * j + 1) * k - 2 * s));
        }
    }
    let twice = nu_i * (l + 1) + s - b + 1;
    if twice.rem_euclid(2) == 0 {
        let base = twice / 2;
        for j in j_range(base, k, 0, top) {
            acc -= &q_multinomial(l, base + k * j, nu, b).shift((2 * j + 1) * (k * j + s));
        }
    }
    acc
}

/// Per-content summand shared by the F polynomials and the particle count:
/// `q^{sum N_i^2 + N_{s+1}+...+N_nu} prod_i [n_i + iL - 2 sum_{l<=i} N_l - alpha_{i,s} - alpha_{i,b}, n_i]`.
pub fn f_summand(nu: usize, s: i64, b: i64, l: i64, n: &ParticleContent) -> LaurentPoly {
    assert_eq!(n.nu(), nu);
    let e = n.quadratic_form() + n.tail_sum_from(s as usize + 1);
    fermionic_product(n, |i, partial| i * l - 2 * partial - alpha(i, s) - alpha(i, b)).shift(e)
}

/// `F_{s,b}(L)`, the sum of [`f_summand`] over all contents.
pub fn f_poly(nu: usize, s: i64, b: i64, l: i64) -> LaurentPoly {
    // the i = 1 binomial vanishes once 2 N_1 > L
    ParticleContent::all_up_to(nu, l.max(0) / 2)
        .iter()
        .map(|n| f_summand(nu, s, b, l, n))
        .sum()
}

/// `G_{0,L}(nu - s, b)` in W form: `W_{s+1,b}(L)` when
/// `b + s = nu(L+1) (mod 2)`, else `W_{2nu+2-s,b}(L)`.
pub fn g_poly_via_w(nu: usize, s: i64, b: i64, l: i64) -> LaurentPoly {
    let nu_i = nu as i64;
    if (b + s - nu_i * (l + 1)).rem_euclid(2) == 0 {
        w_poly(nu, s + 1, b, l)
    } else {
        w_poly(nu, 2 * nu_i + 2 - s, b, l)
    }
}

/// `F_{s,b}(L)` in W form: `W_{s+1,nu-b}(L)` when `b + s = nu L (mod 2)`,
/// else `W_{2nu+2-s,nu-b}(L)`.
pub fn f_poly_via_w(nu: usize, s: i64, b: i64, l: i64) -> LaurentPoly {
    let nu_i = nu as i64;
    if (b + s - nu_i * l).rem_euclid(2) == 0 {
        w_poly(nu, s + 1, nu_i - b, l)
    } else {
        w_poly(nu, 2 * nu_i + 2 - s, nu_i - b, l)
    }
}

/// A particle of charge `t` spread over one or more columns.
///
/// In free motion a particle occupies a single column (whole) or two adjacent
/// columns with heights `x` and `t - x` (split). When a larger particle
/// passes it, a particle can be left stretched across the passer, with its
/// pieces in non-adjacent columns; it regains a movable shape once the passer
/// has moved on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Particle {
    pub charge: i64,
    /// `(column, height)` pairs in increasing column order; heights are positive.
    pub pieces: Vec<(i64, i64)>,
}

impl Particle {
    fn pair(charge: i64, a: i64, x: i64, y: i64) -> Particle {
        let mut pieces = Vec::with_capacity(2);
        if x > 0 {
            pieces.push((a, x));
        }
        if y > 0 {
            pieces.push((a + 1, y));
        }
        Particle { charge, pieces }
    }

    /// `(a, x, y)` when the particle sits in columns `a, a+1` with heights
    /// `x > 0` and `y >= 0`.
    fn movable_shape(&self) -> Option<(i64, i64, i64)> {
        match self.pieces.as_slice() {
            [(a, x)] => Some((*a, *x, 0)),
            [(a, x), (c, y)] if *c == a + 1 => Some((*a, *x, *y)),
            _ => None,
        }
    }
}

/// Particle configuration on a window, in window coordinates: column `0` is
/// `M` and column `width` is `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    particles: Vec<Particle>,
}

impl State {
    fn canonical(mut particles: Vec<Particle>) -> State {
        particles.sort();
        State { particles }
    }
}

/// Window parameters shared by the particle routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub nu: usize,
    pub m: i64,
    pub l: i64,
    pub s: i64,
    pub b: i64,
}

impl Window {
    fn width(&self) -> i64 {
        self.l - self.m
    }

    fn heights(&self, particles: &[Particle]) -> Vec<i64> {
        let w = self.width() as usize;
        let mut f = vec![0; w + 1];
        f[0] += self.s;
        f[w] += self.b;
        for p in particles {
            for &(c, h) in &p.pieces {
                f[c as usize] += h;
            }
        }
        f
    }

    fn valid(&self, f: &[i64]) -> bool {
        f.windows(2).all(|w| w[0] + w[1] <= self.nu as i64)
    }

    fn sequence(&self, f: Vec<i64>) -> GordonSequence {
        GordonSequence::new(self.m, f)
    }
}

/// The packed starting configuration of a particle content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPath {
    pub window: Window,
    pub content: ParticleContent,
    pub sequence: GordonSequence,
    /// Particles in window coordinates (column 0 is `M`).
    pub particles: Vec<Particle>,
}

/// Packs the particles of content `n` against the left boundary.
///
/// Particles go from the largest charge to the smallest, left to right, in
/// the column pairs `(1,2), (3,4), ...`. A particle of charge `t` puts
/// `min(t, nu - s)` into the first column of its pair and the rest into the
/// second, which respects the left boundary height `s`; when that first share
/// is zero the particle sits whole in the second column. Returns `None` when
/// the packing does not fit in `[M, L]` or violates the Gordon conditions.
pub fn minimal_path(m: i64, l: i64, s: i64, b: i64, nu: usize, n: &ParticleContent) -> Option<MinimalPath> {
    assert_eq!(n.nu(), nu);
    let window = Window { nu, m, l, s, b };
    let width = l - m;
    if width < 0 {
        return None;
    }
    if width == 0 {
        return (s == b && n.total_charge() == 0).then(|| MinimalPath {
            window,
            content: n.clone(),
            sequence: GordonSequence::new(m, vec![s]),
            particles: Vec::new(),
        });
    }
    let mut particles = Vec::new();
    let mut a = 1;
    for t in (1..=nu as i64).rev() {
        for _ in 0..n.n(t as usize) {
            let x = t.min(nu as i64 - s);
            let p = if x > 0 {
                Particle::pair(t, a, x, t - x)
            } else {
                Particle { charge: t, pieces: vec![(a + 1, t)] }
            };
            if p.pieces.iter().any(|&(c, _)| c < 1 || c > width - 1) {
                return None;
            }
            particles.push(p);
            a += 2;
        }
    }
    let f = window.heights(&particles);
    if !window.valid(&f) {
        return None;
    }
    Some(MinimalPath {
        window,
        content: n.clone(),
        sequence: window.sequence(f),
        particles,
    })
}

/// Owners of each column: `(particle index, piece height)`.
fn owners(particles: &[Particle], width: i64) -> Vec<Vec<(usize, i64)>> {
    let mut o = vec![Vec::new(); width as usize + 1];
    for (i, p) in particles.iter().enumerate() {
        for &(c, h) in &p.pieces {
            o[c as usize].push((i, h));
        }
    }
    o
}

/// Configurations reachable in one step.
///
/// An elementary move takes one unit from the left column of a particle's
/// pair to the right one. The right column must hold only that particle and
/// stay inside the window, and unless the next column is the right boundary
/// the charge must exceed the new right height plus the height of the next
/// column. A particle that would be topped up to its full charge next to a
/// smaller particle instead trades places with it: if the right share `y` of
/// particle `P` and the height `g` of the next column (a single piece of
/// another particle `Q`) add up to `t`, `P` is re-read as sitting one column
/// further right with shares `(y, g)` and `Q`'s piece moves to `P`'s old
/// left column. The re-reading leaves the heights unchanged.
fn successors(w: &Window, state: &State) -> Vec<State> {
    let width = w.width();
    let f = w.heights(&state.particles);
    let own = owners(&state.particles, width);
    let mut out = Vec::new();
    for (i, p) in state.particles.iter().enumerate() {
        let Some((a, x, y)) = p.movable_shape() else { continue };
        let t = p.charge;
        if f[a as usize] != x || f[a as usize + 1] != y {
            continue;
        }
        // elementary move
        if a + 1 < width && (a + 2 == width || y + 1 + f[a as usize + 2] <= t) {
            let mut next = state.particles.clone();
            next[i] = Particle::pair(t, a, x - 1, y + 1);
            let nf = w.heights(&next);
            if w.valid(&nf) {
                out.push(State::canonical(next));
            }
        }
        // exchange with the piece in the next column
        if y > 0 && a + 2 < width {
            let g = f[a as usize + 2];
            if g > 0 && y + g == t {
                if let [(j, piece)] = own[a as usize + 2].as_slice() {
                    if *j != i {
                        let mut next = state.particles.clone();
                        next[i] = Particle::pair(t, a + 1, y, g);
                        let q = &mut next[*j];
                        q.pieces.retain(|&(c, _)| c != a + 2);
                        q.pieces.push((a, *piece));
                        q.pieces.sort();
                        out.push(State::canonical(next));
                    }
                }
            }
        }
    }
    out
}

/// Sequences reachable from a minimal path, tagged with its content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub content: ParticleContent,
    pub sequences: Vec<GordonSequence>,
}

impl Orbit {
    pub fn generating_function(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.sequences.iter().map(|p| (p.weight(), 1i64)))
    }
}

/// Closes the minimal path under particle motion (breadth first over
/// particle configurations) and collects the distinct height sequences.
pub fn orbit_generate(min: &MinimalPath, state_cap: usize) -> Result<Orbit> {
    let w = min.window;
    let start = State::canonical(min.particles.clone());
    let mut seen: HashSet<State> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut heights: BTreeSet<Vec<i64>> = BTreeSet::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for st in frontier {
            heights.insert(w.heights(&st.particles));
            for succ in successors(&w, &st) {
                if seen.insert(succ.clone()) {
                    if seen.len() > state_cap {
                        return Err(Error::StateSpaceTooLarge { cap: state_cap });
                    }
                    next.push(succ);
                }
            }
        }
        frontier = next;
    }
    Ok(Orbit {
        content: min.content.clone(),
        sequences: heights.into_iter().map(|f| w.sequence(f)).collect(),
    })
}

/// Result of checking the particle description on one window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    pub nu: usize,
    /// Boundary parameters as in the product formula: the window runs from
    /// `(0, nu - s)` to `(L, nu - b)`.
    pub s: i64,
    pub b: i64,
    pub l: i64,
    /// Contents whose orbit count differs from the product formula.
    pub formula_mismatches: Vec<ParticleContent>,
    /// Sequences reached from two different minimal paths.
    pub overlaps: usize,
    /// Sequences of the window not reached at all.
    pub uncovered: usize,
    /// Orbit members whose interior height differs from `sum_i i n_i`.
    pub invariant_violations: usize,
    pub contents_checked: usize,
    pub sequences: usize,
    /// Summed product formula and summed orbit counts.
    pub formula_total: LaurentPoly,
    pub orbit_total: LaurentPoly,
}

impl BijectionCheck {
    pub fn passed(&self) -> bool {
        self.formula_mismatches.is_empty()
            && self.overlaps == 0
            && self.uncovered == 0
            && self.invariant_violations == 0
    }
}

/// Orbits of all minimal paths on the window from `(0, nu - s)` to
/// `(L, nu - b)`: checks that they partition the enumerated sequences, that
/// the height sum is invariant, and that each orbit count equals
/// [`f_summand`]. The product formula is only claimed for `L >= 2`.
pub fn particle_bijection_check(nu: usize, s: i64, b: i64, l: i64, cap: i64, state_cap: usize) -> Result<BijectionCheck> {
    let nu_i = nu as i64;
    let (left, right) = (nu_i - s, nu_i - b);
    let all = enumerate_gordon(0, l, left, right, nu, cap)?;
    let mut owner: BTreeMap<GordonSequence, ParticleContent> = BTreeMap::new();
    let mut check = BijectionCheck {
        nu,
        s,
        b,
        l,
        formula_mismatches: Vec::new(),
        overlaps: 0,
        uncovered: 0,
        invariant_violations: 0,
        contents_checked: 0,
        sequences: all.len(),
        formula_total: LaurentPoly::zero(),
        orbit_total: LaurentPoly::zero(),
    };
    // at most one particle per interior column
    for n in ParticleContent::all_up_to(nu, (l - 1).max(0)) {
        check.contents_checked += 1;
        let expected = f_summand(nu, s, b, l, &n);
        let got = match minimal_path(0, l, left, right, nu, &n) {
            None => LaurentPoly::zero(),
            Some(min) => {
                let orbit = orbit_generate(&min, state_cap)?;
                for seq in &orbit.sequences {
                    if seq.interior_height() != n.total_charge() {
                        check.invariant_violations += 1;
                    }
                    if owner.insert(seq.clone(), n.clone()).is_some() {
                        check.overlaps += 1;
                    }
                }
                orbit.generating_function()
            }
        };
        if got != expected {
            check.formula_mismatches.push(n.clone());
        }
        check.formula_total += &expected;
        check.orbit_total += &got;
    }
    check.uncovered = all.iter().filter(|p| !owner.contains_key(p)).count();
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_sequence_data() {
        let p = GordonSequence::new(-2, vec![1, 2, 3, 1, 4, 3]);
        assert!(p.is_valid(7));
        assert_eq!(p.weight(), 7);
        let all = enumerate_gordon(-2, 3, 1, 3, 7, 16).unwrap();
        assert!(all.contains(&p));
    }

    #[test]
    fn tiny_window() {
        let g = g_poly_enumerated(0, 2, 0, 0, 1, 16).unwrap();
        assert_eq!(g, LaurentPoly::from_terms([(0, 1), (1, 1)]));
        assert_eq!(g_poly_recurrence(1, 2, 0, 0), g);
        assert_eq!(enumerate_gordon(0, 0, 1, 1, 2, 16).unwrap().len(), 1);
        assert!(enumerate_gordon(0, 0, 1, 0, 2, 16).unwrap().is_empty());
    }

    #[test]
    fn single_particle_orbit() {
        let n = ParticleContent::new(vec![1]);
        let min = minimal_path(0, 4, 0, 0, 1, &n).unwrap();
        assert_eq!(min.sequence.f, vec![0, 1, 0, 0, 0]);
        let orbit = orbit_generate(&min, DEFAULT_STATE_CAP).unwrap();
        let fs: Vec<Vec<i64>> = orbit.sequences.iter().map(|s| s.f.clone()).collect();
        assert_eq!(fs, vec![vec![0, 0, 0, 1, 0], vec![0, 0, 1, 0, 0], vec![0, 1, 0, 0, 0]]);
        assert_eq!(orbit.generating_function(), f_summand(1, 1, 1, 4, &n));
    }

    #[test]
    fn empty_content_orbit_is_minimal_path() {
        let n = ParticleContent::zero(2);
        let min = minimal_path(0, 5, 1, 2, 2, &n).unwrap();
        let orbit = orbit_generate(&min, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(orbit.sequences, vec![min.sequence]);
    }

    #[test]
    fn oversized_content_does_not_fit() {
        let n = ParticleContent::new(vec![3]);
        assert!(minimal_path(0, 4, 0, 0, 1, &n).is_none());
    }
}
