//! Particle content `n = (n_1, ..., n_nu)` and its tail sums.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Particle content; `n[i-1]` counts particles (or peaks) of charge `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParticleContent {
    n: Vec<i64>,
}

impl ParticleContent {
    /// Panics on a negative entry.
    pub fn new(n: Vec<i64>) -> Self {
        assert!(n.iter().all(|&x| x >= 0), "particle counts must be non-negative");
        ParticleContent { n }
    }

    pub fn zero(nu: usize) -> Self {
        ParticleContent { n: vec![0; nu] }
    }

    /// Content with tail sums `big[0] >= big[1] >= ... >= 0`.
    pub fn from_tail_sums(big: &[i64]) -> Self {
        let n = (0..big.len())
            .map(|i| big[i] - big.get(i + 1).copied().unwrap_or(0))
            .collect();
        ParticleContent::new(n)
    }

    pub fn nu(&self) -> usize {
        self.n.len()
    }

    pub fn counts(&self) -> &[i64] {
        &self.n
    }

    /// `n_i`, 1-based.
    pub fn n(&self, i: usize) -> i64 {
        self.n[i - 1]
    }

    /// `N_i = n_i + ... + n_nu`, 1-based, with `N_{nu+1} = 0`.
    pub fn tail(&self, i: usize) -> i64 {
        self.n[i.saturating_sub(1).min(self.n.len())..].iter().sum()
    }

    pub fn tails(&self) -> Vec<i64> {
        (1..=self.nu()).map(|i| self.tail(i)).collect()
    }

    /// `N_1^2 + ... + N_nu^2`.
    pub fn quadratic_form(&self) -> i64 {
        self.tails().iter().map(|t| t * t).sum()
    }

    /// `N_from + ... + N_nu`; empty when `from > nu`.
    pub fn tail_sum_from(&self, from: usize) -> i64 {
        (from.max(1)..=self.nu()).map(|i| self.tail(i)).sum()
    }

    /// `sum_i i n_i`, which equals `N_1 + ... + N_nu`.
    pub fn total_charge(&self) -> i64 {
        self.n.iter().enumerate().map(|(i, &c)| (i as i64 + 1) * c).sum()
    }

    /// All contents with `N_1 <= max_particles`, in lexicographic order of
    /// the tail sums.
    pub fn all_up_to(nu: usize, max_particles: i64) -> Vec<ParticleContent> {
        fn rec(nu: usize, bound: i64, tails: &mut Vec<i64>, out: &mut Vec<ParticleContent>) {
            if tails.len() == nu {
                out.push(ParticleContent::from_tail_sums(tails));
                return;
            }
            for t in 0..=bound {
                tails.push(t);
                rec(nu, t, tails, out);
                tails.pop();
            }
        }
        let mut out = Vec::new();
        if max_particles >= 0 {
            rec(nu, max_particles, &mut Vec::with_capacity(nu), &mut out);
        }
        out
    }
}

impl fmt::Display for ParticleContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.n.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `alpha_{i,s} = max(0, i - s)`.
pub fn alpha(i: i64, s: i64) -> i64 {
    (i - s).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_sums() {
        let c = ParticleContent::new(vec![1, 0, 2]);
        assert_eq!(c.tails(), vec![3, 2, 2]);
        assert_eq!(c.tail(4), 0);
        assert_eq!(c.quadratic_form(), 9 + 4 + 4);
        assert_eq!(c.total_charge(), 7);
        assert_eq!(c.tail_sum_from(2), 4);
        assert_eq!(c.tail_sum_from(4), 0);
        assert_eq!(ParticleContent::from_tail_sums(&[3, 2, 2]), c);
    }

    #[test]
    fn enumeration_counts_chains() {
        // chains 2 >= N_1 >= N_2 >= 0
        assert_eq!(ParticleContent::all_up_to(2, 2).len(), 6);
        assert_eq!(ParticleContent::all_up_to(3, 0).len(), 1);
    }
}
