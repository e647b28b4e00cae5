//! Nilpotent representations of the special quiver.
//!
//! A tuple of partitions `{pi^[a,b]}` fixes the module `V` with a single
//! nilpotent operator `H` (the sum of the `h+` arrows): one `H`-chain per part.
//! Two spaces are attached to a pair of blocks `X = V^{a,b}`, `Y = V^{c,d}`:
//! `B`, the graded maps `X -> Y` commuting with `H`, and `T`, the maps given by
//! the remaining arrows of `Q_C` (`r_i` for `i in I1`, `h-` out of `i+1` for
//! `i in I2`) that satisfy the cut relations together with `H`.
//!
//! Both are computed here by exact linear algebra and, separately, by the
//! closed case tables. The tables are transcribed as stated; the linear
//! algebra is the reference.

use crate::error::{Error, Result};
use crate::linalg;
use crate::quiver::{Arrow, QuiverWithCut, SigmaPartition, SpecialSets};
use crate::Rational;

use super::partitions::{chain_length, cyc_dist, in_interval, partition_m, Partition, PartitionTuple};

/// A graded vector space with a basis permuted (partially) by `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainModule {
    vertex: Vec<usize>,
    next: Vec<Option<usize>>,
    prev: Vec<Option<usize>>,
}

impl ChainModule {
    /// One chain per `(start, length)`.
    pub fn from_chains(n: usize, chains: &[(usize, usize)]) -> Self {
        let mut vertex = Vec::new();
        let mut next = Vec::new();
        let mut prev = Vec::new();
        for &(a, len) in chains {
            let base = vertex.len();
            for p in 0..len {
                vertex.push((a + p) % n);
                next.push((p + 1 < len).then_some(base + p + 1));
                prev.push((p > 0).then(|| base + p - 1));
            }
        }
        ChainModule { vertex, next, prev }
    }

    /// The block `V^{a,b}` carrying `pi`.
    pub fn block(n: usize, a: usize, b: usize, pi: &Partition) -> Self {
        let chains: Vec<_> = pi.parts().iter().map(|&l| (a, chain_length(n, a, b, l))).collect();
        Self::from_chains(n, &chains)
    }

    pub fn of_tuple(t: &PartitionTuple) -> Self {
        Self::from_chains(t.n(), &t.chains())
    }

    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn dim_vector(&self, n: usize) -> Vec<u32> {
        let mut d = vec![0; n];
        for &v in &self.vertex {
            d[v] += 1;
        }
        d
    }

    fn at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.vertex[i] == v)
    }

    fn h_pow(&self, mut i: usize, k: usize) -> Option<usize> {
        for _ in 0..k {
            i = self.next[i]?;
        }
        Some(i)
    }

    fn h_pow_inv(&self, mut i: usize, k: usize) -> Option<usize> {
        for _ in 0..k {
            i = self.prev[i]?;
        }
        Some(i)
    }
}

fn rank_of(rows: Vec<Vec<i64>>) -> usize {
    let rows: Vec<Vec<Rational>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
        .collect();
    linalg::rank(&rows)
}

/// `B(X, Y)`: graded maps `X -> Y` commuting with `H`.
pub fn commuting_dim(x: &ChainModule, y: &ChainModule) -> usize {
    let mut index = vec![vec![None; x.dim()]; y.dim()];
    let mut nvars = 0;
    for (r, row) in index.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            if y.vertex[r] == x.vertex[c] {
                *slot = Some(nvars);
                nvars += 1;
            }
        }
    }
    let mut rows = Vec::new();
    // (N H_X - H_Y N)[r][c] for r one vertex above c
    for r in 0..y.dim() {
        for c in 0..x.dim() {
            let mut row = vec![0i64; nvars];
            if let Some(xc) = x.next[c] {
                if let Some(k) = index[r][xc] {
                    row[k] += 1;
                }
            }
            if let Some(yr) = y.prev[r] {
                if let Some(k) = index[yr][c] {
                    row[k] -= 1;
                }
            }
            rows.push(row);
        }
    }
    nvars - rank_of(rows)
}

/// One monomial `H^before L H^after` of a cut relation, where `L` is the
/// `l`-th unknown arrow.
#[derive(Clone, Debug)]
struct Monomial {
    sign: i64,
    before: usize,
    l: usize,
    after: usize,
}

#[derive(Clone, Debug)]
struct CompiledRelation {
    src: usize,
    monomials: Vec<Monomial>,
}

/// The special quiver with its cut relations compiled into linear conditions
/// on the unknown arrows.
#[derive(Clone, Debug)]
pub struct SpecialQuiver {
    sets: SpecialSets,
    /// `(arrow, source, target)` for the arrows of `Q_C` other than `h+`.
    unknowns: Vec<(Arrow, usize, usize)>,
    relations: Vec<CompiledRelation>,
}

impl SpecialQuiver {
    pub fn new(sigma: &SigmaPartition) -> Result<Self> {
        let sets = sigma
            .special_sets()
            .ok_or_else(|| Error::InvalidSigma(format!("{} is not the special partition", sigma.bits())))?;
        let q = QuiverWithCut::with_special_cut(sigma)?;
        let unknowns: Vec<_> = q
            .uncut_arrows()
            .into_iter()
            .filter(|a| !matches!(a, Arrow::Plus(_)))
            .map(|a| (a, q.source(a), q.target(a)))
            .collect();
        let mut relations = Vec::new();
        for &c in q.cut().ok_or(Error::MissingCut)? {
            let rel = q.relation(c)?;
            let mut monomials = Vec::new();
            let mut src = None;
            for (word, sign) in [(&rel.plus, 1), (&rel.minus, -1)] {
                let ls: Vec<usize> = word
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !matches!(a, Arrow::Plus(_)))
                    .map(|(i, _)| i)
                    .collect();
                let [pos] = ls[..] else {
                    return Err(Error::InvalidCut(format!(
                        "relation of {c} is not linear in the non-h+ arrows"
                    )));
                };
                let l = unknowns
                    .iter()
                    .position(|u| u.0 == word[pos])
                    .ok_or_else(|| Error::InvalidCut(format!("{} is cut", word[pos])))?;
                src = Some(q.source(*word.last().expect("nonempty word")));
                monomials.push(Monomial {
                    sign,
                    before: pos,
                    l,
                    after: word.len() - pos - 1,
                });
            }
            relations.push(CompiledRelation {
                src: src.expect("two monomials"),
                monomials,
            });
        }
        Ok(SpecialQuiver {
            sets,
            unknowns,
            relations,
        })
    }

    pub fn sets(&self) -> &SpecialSets {
        &self.sets
    }

    pub fn n(&self) -> usize {
        self.sets.n
    }

    /// `T(X, Y)`: solutions `L: X -> Y` of the cut relations.
    pub fn relation_dim(&self, x: &ChainModule, y: &ChainModule) -> usize {
        // unknown (l, y, x) -> column
        let mut offsets = Vec::with_capacity(self.unknowns.len());
        let mut nvars = 0;
        let yl: Vec<Vec<usize>> = self.unknowns.iter().map(|&(_, _, t)| y.at(t).collect()).collect();
        let xl: Vec<Vec<usize>> = self.unknowns.iter().map(|&(_, s, _)| x.at(s).collect()).collect();
        for l in 0..self.unknowns.len() {
            offsets.push(nvars);
            nvars += yl[l].len() * xl[l].len();
        }
        let column = |l: usize, yi: usize, xi: usize| -> usize {
            let ry = yl[l].iter().position(|&v| v == yi).expect("vertex match");
            let cx = xl[l].iter().position(|&v| v == xi).expect("vertex match");
            offsets[l] + ry * xl[l].len() + cx
        };
        let mut rows = Vec::new();
        for rel in &self.relations {
            for c in x.at(rel.src) {
                for r in 0..y.dim() {
                    let mut row = vec![0i64; nvars];
                    for m in &rel.monomials {
                        let Some(xi) = x.h_pow(c, m.after) else { continue };
                        let Some(yi) = y.h_pow_inv(r, m.before) else { continue };
                        let (_, s, t) = self.unknowns[m.l];
                        if x.vertex[xi] != s || y.vertex[yi] != t {
                            continue;
                        }
                        row[column(m.l, yi, xi)] += m.sign;
                    }
                    rows.push(row);
                }
            }
        }
        nvars - rank_of(rows)
    }

    /// `(T, B)` for the pair of blocks `V^{a,b}` (carrying `pi`) and `V^{c,d}`
    /// (carrying `rho`), by linear algebra.
    pub fn linear_algebra_dims(
        &self,
        (a, b): (usize, usize),
        (c, d): (usize, usize),
        pi: &Partition,
        rho: &Partition,
    ) -> (usize, usize) {
        let n = self.n();
        let x = ChainModule::block(n, a, b, pi);
        let y = ChainModule::block(n, c, d, rho);
        (self.relation_dim(&x, &y), commuting_dim(&x, &y))
    }

    /// `(T, B)` of the whole module of a tuple, by linear algebra.
    pub fn tuple_dims(&self, t: &PartitionTuple) -> (usize, usize) {
        let m = ChainModule::of_tuple(t);
        (self.relation_dim(&m, &m), commuting_dim(&m, &m))
    }

    /// `B` from the case table.
    pub fn b_dim(&self, (a, b): (usize, usize), (c, d): (usize, usize), pi: &Partition, rho: &Partition) -> u64 {
        let n = self.n();
        table(in_interval(a, c, d, n), cyc_dist(a, d, n) as i64 <= cyc_dist(a, b, n) as i64, pi, rho)
    }

    /// `T` from the case table.
    pub fn t_dim(&self, (a, b): (usize, usize), (c, d): (usize, usize), pi: &Partition, rho: &Partition) -> u64 {
        let n = self.n();
        let s = &self.sets;
        let b_in_i2 = s.i2.contains(&b) as i64;
        let ab = cyc_dist(a, b, n) as i64;
        let (anchor, threshold) = if s.i3.contains(&a) {
            ((a + n - 1) % n, ab + 1 - b_in_i2)
        } else {
            (a, ab - b_in_i2)
        };
        table(
            in_interval(anchor, c, d, n),
            cyc_dist(anchor, d, n) as i64 <= threshold,
            pi,
            rho,
        )
    }

    /// `T - B` from the list of exceptional cases; zero outside them.
    pub fn dif_table(&self, (a, b): (usize, usize), (c, d): (usize, usize), pi: &Partition, rho: &Partition) -> i64 {
        let n = self.n();
        let s = &self.sets;
        let m = |x: &Partition, y: &Partition| partition_m(x, y) as i64;
        let (pp, rp) = (pi.prime(), rho.prime());
        let am1 = (a + n - 1) % n;
        let a_i3 = s.i3.contains(&a);
        let b_i2 = s.i2.contains(&b);
        let dist_d = cyc_dist(a, d, n);
        let dist_b = cyc_dist(a, b, n);
        let am1_in = in_interval(am1, c, d, n);

        // case 1
        if !a_i3 && b == d && b_i2 {
            return if in_interval(a, c, b, n) {
                m(&pp, rho) - m(pi, rho)
            } else {
                m(&pp, &rp) - m(pi, &rp)
            };
        }
        // cases 2 and 3
        if a_i3 && !b_i2 {
            if d == am1 && s.i2.contains(&am1) {
                return if a == c {
                    m(pi, rho) - m(&pp, rho)
                } else {
                    m(pi, rho) - m(&pp, &rp)
                };
            }
            if a == c && d != am1 {
                return if dist_d <= dist_b {
                    m(pi, &rp) - m(pi, rho)
                } else {
                    m(&pp, &rp) - m(&pp, rho)
                };
            }
            return 0;
        }
        if !(a_i3 && b_i2) {
            return 0;
        }
        // case 4
        if d == am1 {
            if a == c && b != am1 {
                return m(pi, rho) - m(&pp, rho);
            }
            if a != c && b == am1 {
                return m(pi, rho) - m(pi, &rp);
            }
            if a != c && b != am1 {
                return m(pi, rho) - m(&pp, &rp);
            }
            return 0;
        }
        // case 5
        if am1_in && b == d {
            return m(&pp, rho) - m(pi, rho);
        }
        if !am1_in {
            // case 6
            if a == c && dist_d < dist_b {
                return m(pi, &rp) - m(pi, rho);
            }
            // case 7
            if a == c && b == d {
                return m(&pp, &rp) - m(pi, rho);
            }
            if a == c && dist_d > dist_b {
                return m(&pp, &rp) - m(&pp, rho);
            }
            if a != c && b == d {
                return m(&pp, &rp) - m(pi, &rp);
            }
        }
        0
    }

    /// Twice the closed form of `T - B` for a whole tuple.
    pub fn difference_doubled(&self, t: &PartitionTuple) -> i64 {
        let n = self.n();
        let s = &self.sets;
        let len = |a: usize, b: usize| t.get(a, b).length() as i64;
        let mut total = 0i64;
        for &i in &s.i2 {
            let ip = (i + 1) % n;
            let out: i64 = (0..n).filter(|&b| b != i).map(|b| len(ip, b)).sum();
            let inn: i64 = (0..n).filter(|&c| c != ip).map(|c| len(c, i)).sum();
            total -= (out - inn).pow(2);
        }
        for (&(a, b), p) in t.entries() {
            if s.i3.contains(&a) != s.i2.contains(&b) {
                total -= p.multiplicities().iter().map(|&x| (x as i64).pow(2)).sum::<i64>();
            }
        }
        total
    }

    /// Twice the sum of the table values `T - B` over all ordered pairs of
    /// blocks of a tuple.
    pub fn pairwise_difference_doubled(&self, t: &PartitionTuple) -> i64 {
        let mut total = 0i64;
        for (&ab, pi) in t.entries() {
            for (&cd, rho) in t.entries() {
                total += self.t_dim(ab, cd, pi, rho) as i64 - self.b_dim(ab, cd, pi, rho) as i64;
            }
        }
        2 * total
    }

    /// `sum_{i in I2} (alpha_{i+1} - alpha_i)^2`.
    pub fn sign_exponent(&self, alpha: &[u32]) -> i64 {
        let n = self.n();
        self.sets
            .i2
            .iter()
            .map(|&i| (alpha[(i + 1) % n] as i64 - alpha[i] as i64).pow(2))
            .sum()
    }
}

fn table(anchor_in: bool, near: bool, pi: &Partition, rho: &Partition) -> u64 {
    match (anchor_in, near) {
        (true, true) => partition_m(pi, rho),
        (true, false) => partition_m(&pi.prime(), rho),
        (false, true) => partition_m(pi, &rho.prime()),
        (false, false) => partition_m(&pi.prime(), &rho.prime()),
    }
}
