//! Integer partitions, the quadratic form `M`, and tuples of partitions
//! labelled by cyclic intervals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::motive::{gl_order, MotiveRat, VPolynomial};

/// A partition stored by part multiplicities: `mult[l - 1]` parts equal to `l`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// From multiplicities `b_1, b_2, ...`.
    pub fn from_multiplicities(mut mult: Vec<u32>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Partition { mult }
    }

    /// From a list of parts in any order.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut mult = Vec::new();
        for &p in parts.iter().filter(|&&p| p > 0) {
            let i = p as usize - 1;
            if mult.len() <= i {
                mult.resize(i + 1, 0);
            }
            mult[i] += 1;
        }
        Self::from_multiplicities(mult)
    }

    /// `b_l`, the number of parts equal to `l` (`l >= 1`).
    pub fn multiplicity(&self, l: usize) -> u32 {
        if l == 0 {
            return 0;
        }
        self.mult.get(l - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &b) in self.mult.iter().enumerate().rev() {
            out.extend(std::iter::repeat(i as u32 + 1).take(b as usize));
        }
        out
    }

    pub fn size(&self) -> u32 {
        self.mult.iter().enumerate().map(|(i, &b)| (i as u32 + 1) * b).sum()
    }

    pub fn length(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Removes one box from every column: `(1^{b1} 2^{b2} ...) -> (1^{b2} 2^{b3} ...)`.
    pub fn prime(&self) -> Partition {
        Partition::from_multiplicities(self.mult.iter().skip(1).copied().collect())
    }

    /// Number of parts `>= i`.
    fn parts_at_least(&self, i: usize) -> u32 {
        self.mult.iter().skip(i.saturating_sub(1)).sum()
    }

    /// `f(pi) = prod_l L^{b_l^2} / [GL_{b_l}]`.
    pub fn f_weight(&self) -> MotiveRat {
        self.mult.iter().fold(MotiveRat::one(), |acc, &b| {
            let t = MotiveRat::new(VPolynomial::v_pow(2 * (b * b) as i64), gl_order(b))
                .expect("nonzero");
            acc * t
        })
    }

    /// `g(pi) = f(pi) prod_l (-v)^{-b_l^2}`.
    pub fn g_weight(&self) -> MotiveRat {
        self.mult.iter().fold(self.f_weight(), |acc, &b| {
            let e = (b * b) as i64;
            let sign = if e % 2 == 0 { 1 } else { -1 };
            acc * MotiveRat::from_poly(VPolynomial::monomial(-e, sign))
        })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `M(pi, rho) = sum_{i >= 1} #{parts of pi >= i} * #{parts of rho >= i}`.
pub fn partition_m(pi: &Partition, rho: &Partition) -> u64 {
    let top = pi.mult.len().max(rho.mult.len());
    (1..=top)
        .map(|i| pi.parts_at_least(i) as u64 * rho.parts_at_least(i) as u64)
        .sum()
}

/// All partitions of `n`, largest parts first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::from_parts(cur));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `n` boxes.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Cyclic distance `|b - a|`: the `r in 0..N` with `b = a + r mod N`.
pub fn cyc_dist(a: usize, b: usize, n: usize) -> usize {
    (b + n - a % n) % n
}

/// Whether `x` lies in the cyclic interval `[c, d] = {c, c+1, ..., d}`.
pub fn in_interval(x: usize, c: usize, d: usize, n: usize) -> bool {
    cyc_dist(c, x, n) <= cyc_dist(c, d, n)
}

/// Partitions `pi^[a,b]` for cyclic intervals `[a, b]` of `Z/N`; missing
/// entries are empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PartitionTuple {
    n: usize,
    parts: BTreeMap<(usize, usize), Partition>,
}

impl PartitionTuple {
    pub fn new(n: usize) -> Self {
        PartitionTuple {
            n,
            parts: BTreeMap::new(),
        }
    }

    pub fn with(mut self, a: usize, b: usize, pi: Partition) -> Self {
        self.set(a, b, pi);
        self
    }

    pub fn set(&mut self, a: usize, b: usize, pi: Partition) {
        assert!(a < self.n && b < self.n, "interval endpoints out of range");
        if pi.is_empty() {
            self.parts.remove(&(a, b));
        } else {
            self.parts.insert((a, b), pi);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> Partition {
        self.parts.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Nonempty entries.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Partition)> {
        self.parts.iter()
    }

    pub fn boxes(&self) -> u32 {
        self.parts.values().map(|p| p.size()).sum()
    }

    /// `alpha_i = sum |pi^[a,b]| - sum_{i not in [a,b]} l(pi^[a,b])`.
    pub fn dim_vector(&self) -> Vec<u32> {
        let total: u32 = self.boxes();
        (0..self.n)
            .map(|i| {
                let missing: u32 = self
                    .parts
                    .iter()
                    .filter(|((a, b), _)| !in_interval(i, *a, *b, self.n))
                    .map(|(_, p)| p.length())
                    .sum();
                total - missing
            })
            .collect()
    }

    /// The `H`-chains: `(start vertex, length)` for every part, with length
    /// `N (l - 1) + |b - a| + 1` for a part `l` of `pi^[a,b]`.
    pub fn chains(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (&(a, b), p) in &self.parts {
            for l in p.parts() {
                out.push((a, chain_length(self.n, a, b, l)));
            }
        }
        out
    }

    /// All tuples on `Z/N` whose chains have total length at most `max_len`,
    /// i.e. whose dimension vectors have total degree at most `max_len`.
    pub fn all_up_to_degree(n: usize, max_len: usize) -> Vec<PartitionTuple> {
        // chain types (start a, length) ordered; choose a multiset
        let types: Vec<(usize, usize)> = (1..=max_len)
            .flat_map(|len| (0..n).map(move |a| (a, len)))
            .collect();
        let mut out = Vec::new();
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        fn rec(
            n: usize,
            types: &[(usize, usize)],
            from: usize,
            budget: usize,
            chosen: &mut Vec<(usize, usize)>,
            out: &mut Vec<PartitionTuple>,
        ) {
            out.push(PartitionTuple::from_chains(n, chosen));
            for t in from..types.len() {
                let (_, len) = types[t];
                if len > budget {
                    continue;
                }
                chosen.push(types[t]);
                rec(n, types, t, budget - len, chosen, out);
                chosen.pop();
            }
        }
        rec(n, &types, 0, max_len, &mut chosen, &mut out);
        out
    }

    /// All tuples on `Z/N` with at most `max_boxes` boxes in total.
    pub fn all_up_to_boxes(n: usize, max_boxes: u32) -> Vec<PartitionTuple> {
        let intervals: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        fn rec(
            n: usize,
            intervals: &[(usize, usize)],
            idx: usize,
            budget: u32,
            cur: &mut PartitionTuple,
            out: &mut Vec<PartitionTuple>,
        ) {
            if idx == intervals.len() {
                out.push(cur.clone());
                return;
            }
            let (a, b) = intervals[idx];
            for p in partitions_up_to(budget) {
                let s = p.size();
                cur.set(a, b, p);
                rec(n, intervals, idx + 1, budget - s, cur, out);
            }
            cur.set(a, b, Partition::empty());
        }
        rec(n, &intervals, 0, max_boxes, &mut PartitionTuple::new(n), &mut out);
        out
    }

    /// Inverse of [`chains`](Self::chains).
    pub fn from_chains(n: usize, chains: &[(usize, usize)]) -> PartitionTuple {
        let mut parts: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        for &(a, len) in chains {
            assert!(len >= 1);
            let r = (len - 1) % n;
            let l = (len - 1) / n + 1;
            parts.entry((a, (a + r) % n)).or_default().push(l as u32);
        }
        let mut t = PartitionTuple::new(n);
        for ((a, b), ps) in parts {
            t.set(a, b, Partition::from_parts(&ps));
        }
        t
    }
}

pub fn chain_length(n: usize, a: usize, b: usize, l: u32) -> usize {
    n * (l as usize - 1) + cyc_dist(a, b, n) + 1
}

impl fmt::Debug for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let items: Vec<String> = self
            .parts
            .iter()
            .map(|((a, b), p)| format!("[{a},{b}]={p}"))
            .collect();
        write!(f, "{{{}}}", items.join(" "))
    }
}
