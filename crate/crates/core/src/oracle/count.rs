//! Brute-force point counts of `R(J_C, alpha)` over `F_p`.
//!
//! Every arrow of `Q_C` gets a matrix with entries in `F_p`; a tuple is a
//! representation of the truncated Jacobian algebra when the relation of each
//! cut arrow vanishes. The search is split over the values of the first
//! nonempty matrix and run in parallel.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quiver::{Arrow, QuiverWithCut};

/// Default number of tuples a single count may enumerate.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "TORICDT_BUDGET";

/// The budget from `TORICDT_BUDGET`, or the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Clone, Copy, Debug)]
struct Block {
    offset: usize,
    rows: usize,
    cols: usize,
}

#[derive(Clone, Debug)]
struct Word {
    letters: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Check {
    rows: usize,
    cols: usize,
    plus: Word,
    minus: Word,
}

/// A compiled counting problem for one dimension vector.
#[derive(Clone, Debug)]
pub struct CountProblem {
    blocks: Vec<Block>,
    checks: Vec<Check>,
    entries: usize,
    max_dim: usize,
}

impl CountProblem {
    pub fn new(q: &QuiverWithCut, alpha: &[u32]) -> Result<Self> {
        if alpha.len() != q.n() {
            return Err(Error::LengthMismatch {
                expected: q.n(),
                got: alpha.len(),
            });
        }
        let cut = q.cut().ok_or(Error::MissingCut)?;
        let arrows = q.uncut_arrows();
        let dim = |v: usize| alpha[v] as usize;
        let mut blocks = Vec::with_capacity(arrows.len());
        let mut offset = 0;
        for &a in &arrows {
            let (rows, cols) = (dim(q.target(a)), dim(q.source(a)));
            blocks.push(Block { offset, rows, cols });
            offset += rows * cols;
        }
        let index = |a: Arrow| arrows.iter().position(|&b| b == a).expect("relations avoid the cut");
        let mut checks = Vec::new();
        for &c in cut {
            let rel = q.relation(c)?;
            // the relation of c : s -> t is a path t -> s
            let (rows, cols) = (dim(q.source(c)), dim(q.target(c)));
            if rows == 0 || cols == 0 {
                continue;
            }
            checks.push(Check {
                rows,
                cols,
                plus: Word {
                    letters: rel.plus.iter().map(|&a| index(a)).collect(),
                },
                minus: Word {
                    letters: rel.minus.iter().map(|&a| index(a)).collect(),
                },
            });
        }
        Ok(CountProblem {
            blocks,
            checks,
            entries: offset,
            max_dim: alpha.iter().copied().max().unwrap_or(0) as usize,
        })
    }

    /// Number of matrix entries, so the search space is `p^entries`.
    pub fn entries(&self) -> usize {
        self.entries
    }

    pub fn search_space(&self, p: u64) -> f64 {
        (p as f64).powi(self.entries as i32)
    }

    /// Counts tuples satisfying all cut relations. With no nontrivial
    /// relation every tuple counts and the answer is `p^entries`.
    pub fn count(&self, p: u64, budget: u64) -> Result<u128> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let estimate = self.search_space(p);
        if self.checks.is_empty() {
            return (p as u128)
                .checked_pow(self.entries as u32)
                .ok_or_else(|| Error::Invalid(format!("{p}^{} overflows", self.entries)));
        }
        if estimate > budget as f64 {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
        // split the first nonempty matrix into an outer parallel range
        let first = self.blocks.iter().find(|b| b.rows * b.cols > 0).copied();
        let (split_offset, first_len) = first.map_or((0, 0), |b| (b.offset, b.rows * b.cols));
        let mut split = first_len.min(1);
        while split < first_len && (p as f64).powi(split as i32 + 1) <= 4096.0 {
            split += 1;
        }
        let outer = p.pow(split as u32);
        let total = (0..outer)
            .into_par_iter()
            .map(|prefix| self.count_with_prefix(p, split_offset, split, prefix))
            .sum::<u64>();
        Ok(total as u128)
    }

    fn count_with_prefix(&self, p: u64, split_offset: usize, split: usize, mut prefix: u64) -> u64 {
        let mut state = vec![0u64; self.entries];
        for k in 0..split {
            state[split_offset + k] = prefix % p;
            prefix /= p;
        }
        let free: Vec<usize> = (0..self.entries)
            .filter(|&i| i < split_offset || i >= split_offset + split)
            .collect();
        let sq = self.max_dim * self.max_dim;
        let mut bufs = [vec![0u64; sq], vec![0u64; sq], vec![0u64; sq], vec![0u64; sq]];
        let mut count = 0u64;
        loop {
            if self.satisfies(&state, p, &mut bufs) {
                count += 1;
            }
            // odometer over the free entries
            let mut i = 0;
            loop {
                if i == free.len() {
                    return count;
                }
                let s = &mut state[free[i]];
                *s += 1;
                if *s < p {
                    break;
                }
                *s = 0;
                i += 1;
            }
        }
    }

    fn satisfies(&self, state: &[u64], p: u64, bufs: &mut [Vec<u64>; 4]) -> bool {
        let [a, b, c, d] = bufs;
        for chk in &self.checks {
            self.eval_word(&chk.plus, state, p, a, b);
            self.eval_word(&chk.minus, state, p, c, d);
            let n = chk.rows * chk.cols;
            if a[..n] != c[..n] {
                return false;
            }
        }
        true
    }

    /// The product `M(w_0) M(w_1) ... M(w_last)` mod `p` into `out` (row-major).
    fn eval_word(&self, w: &Word, state: &[u64], p: u64, out: &mut [u64], tmp: &mut [u64]) {
        let last = self.blocks[*w.letters.last().expect("nonempty word")];
        let (mut rows, cols) = (last.rows, last.cols);
        out[..rows * cols].copy_from_slice(&state[last.offset..last.offset + rows * cols]);
        for &l in w.letters.iter().rev().skip(1) {
            let m = self.blocks[l];
            debug_assert_eq!(m.cols, rows);
            for i in 0..m.rows {
                for j in 0..cols {
                    let mut s = 0u64;
                    for k in 0..rows {
                        s += state[m.offset + i * m.cols + k] * out[k * cols + j];
                    }
                    tmp[i * cols + j] = s % p;
                }
            }
            rows = m.rows;
            out[..rows * cols].copy_from_slice(&tmp[..rows * cols]);
        }
    }
}

/// `#R(J_C, alpha)(F_p)`.
pub fn count_representations(q: &QuiverWithCut, alpha: &[u32], p: u64, budget: u64) -> Result<u128> {
    CountProblem::new(q, alpha)?.count(p, budget)
}

/// `#{(A, B) : A in M_n(F_p), B in GL_n(F_p), AB = BA}`.
pub fn count_commuting_pairs(n: usize, p: u64, budget: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let estimate = (p as f64).powi(2 * (n * n) as i32);
    if estimate > budget as f64 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let p32 = p as u32;
    let mats: Vec<Vec<u32>> = (0..(p as u64).pow((n * n) as u32))
        .map(|mut k| {
            (0..n * n)
                .map(|_| {
                    let e = (k % p) as u32;
                    k /= p;
                    e
                })
                .collect()
        })
        .collect();
    let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                (0..n).map(|k| x[i * n + k] * y[k * n + j]).sum::<u32>() % p32
            })
            .collect()
    };
    let invertible: Vec<&Vec<u32>> = mats.iter().filter(|m| det_nonzero(m, n, p32)).collect();
    Ok(mats
        .par_iter()
        .map(|a| invertible.iter().filter(|b| mul(a, b) == mul(b, a)).count() as u128)
        .sum())
}

fn det_nonzero(m: &[u32], n: usize, p: u32) -> bool {
    let mut a: Vec<Vec<u32>> = (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
            return false;
        };
        a.swap(c, r);
        let inv = (1..p).find(|x| x * a[c][c] % p == 1).expect("field");
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            for k in c..n {
                a[r][k] = (a[r][k] + p * p - f * a[c][k] % p) % p;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::SigmaPartition;

    fn special(n0: usize, n1: usize) -> QuiverWithCut {
        QuiverWithCut::with_special_cut(&SigmaPartition::special(n0, n1).unwrap()).unwrap()
    }

    #[test]
    fn conifold_diagonal_class() {
        // three scalar arrows, the cut relation holds trivially
        assert_eq!(count_representations(&special(1, 1), &[1, 1], 2, DEFAULT_BUDGET).unwrap(), 8);
    }

    #[test]
    fn c3_single_vertex() {
        // C^3: three loops at one vertex, two uncut
        assert_eq!(count_representations(&special(1, 0), &[1], 3, DEFAULT_BUDGET).unwrap(), 9);
    }

    #[test]
    fn budget_and_prime_are_enforced() {
        let q = special(1, 1);
        assert!(matches!(
            count_representations(&q, &[2, 2], 3, 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(count_representations(&q, &[1, 1], 4, 10), Err(Error::NotPrime(4)));
    }

    #[test]
    fn commuting_pairs() {
        // [C(1)] = p (p - 1), [C(2)] = (L + L^2) |GL_2|
        assert_eq!(count_commuting_pairs(1, 3, DEFAULT_BUDGET).unwrap(), 6);
        assert_eq!(count_commuting_pairs(2, 2, DEFAULT_BUDGET).unwrap(), 6 * 6);
        assert_eq!(count_commuting_pairs(2, 3, DEFAULT_BUDGET).unwrap(), 12 * 48);
    }
}
