//! The quivers `Q_sigma` with their Jacobian relations, cuts and flips.
//!
//! Vertices are `Z/N`. Half-integer edge labels `i = j + 1/2` are stored by
//! their integer part `j`, so `h+_j : j -> j+1` and `h-_j : j+1 -> j`.
//! Paths are written in composition order: the leftmost arrow acts last, which
//! is also the order of the corresponding matrix product.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The pair `(N0, N1)` defining `XY = Z^{N0} W^{N1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ToricData {
    pub n0: usize,
    pub n1: usize,
}

impl ToricData {
    pub fn new(n0: usize, n1: usize) -> Result<Self> {
        if n0 < 1 || n0 < n1 {
            return Err(Error::InvalidSigma(format!(
                "need n0 >= n1 >= 0 and n0 >= 1, got ({n0}, {n1})"
            )));
        }
        Ok(ToricData { n0, n1 })
    }

    /// Number of vertices `N = n0 + n1`.
    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }
}

/// A partition of the toric polygon, keyed by its row sequence.
///
/// `row[j]` is the row (0 or 1) of the triangle labelled `j + 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaPartition {
    toric: ToricData,
    row: Vec<u8>,
}

impl SigmaPartition {
    pub fn new(toric: ToricData, row: Vec<u8>) -> Result<Self> {
        if row.len() != toric.n() {
            return Err(Error::InvalidSigma(format!(
                "row has length {}, expected {}",
                row.len(),
                toric.n()
            )));
        }
        if row.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSigma("row entries must be 0 or 1".into()));
        }
        let ones = row.iter().filter(|&&b| b == 1).count();
        if ones != toric.n1 {
            return Err(Error::InvalidSigma(format!(
                "row has {ones} ones, expected n1 = {}",
                toric.n1
            )));
        }
        Ok(SigmaPartition { toric, row })
    }

    /// Parses a string such as `"010"`.
    pub fn parse(n0: usize, n1: usize, bits: &str) -> Result<Self> {
        let row = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidSigma(format!("unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(ToricData::new(n0, n1)?, row)
    }

    /// Partition of the special shape: `N' = n0 - n1` zeros followed by
    /// `(1, 0)` repeated `n1` times. Its loops sit exactly on `0..N'`.
    pub fn special(n0: usize, n1: usize) -> Result<Self> {
        let toric = ToricData::new(n0, n1)?;
        let mut row = vec![0u8; n0 - n1];
        for _ in 0..n1 {
            row.extend([1, 0]);
        }
        Self::new(toric, row)
    }

    pub fn toric(&self) -> ToricData {
        self.toric
    }

    pub fn n(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[u8] {
        &self.row
    }

    pub fn bits(&self) -> String {
        self.row.iter().map(|b| char::from(b'0' + b)).collect()
    }

    /// Whether vertex `k` carries a loop: its two neighbouring triangles lie
    /// in the same row.
    pub fn is_loop(&self, k: usize) -> bool {
        let n = self.n();
        self.row[(k + n - 1) % n] == self.row[k % n]
    }

    pub fn loop_set(&self) -> BTreeSet<usize> {
        (0..self.n()).filter(|&k| self.is_loop(k)).collect()
    }

    /// Twice the x-coordinates of the triangle centres. Within a row the
    /// coordinates decrease as the label increases.
    pub fn sigma_x_doubled(&self) -> Vec<u32> {
        let mut remaining = [self.toric.n0 as u32, self.toric.n1 as u32];
        self.row
            .iter()
            .map(|&r| {
                let slot = &mut remaining[r as usize];
                *slot -= 1;
                2 * *slot + 1
            })
            .collect()
    }

    /// Swaps the rows of the two triangles adjacent to vertex `k`.
    pub fn flip(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::VertexOutOfRange { vertex: k, n });
        }
        if self.is_loop(k) {
            return Err(Error::LoopVertex(k));
        }
        let mut row = self.row.clone();
        row.swap((k + n - 1) % n, k);
        Ok(SigmaPartition {
            toric: self.toric,
            row,
        })
    }

    /// The three vertex classes of the special partition: loops, and the
    /// alternating non-loop vertices starting at `N'` and at `N' + 1`.
    /// `None` if `self` is not the special partition.
    pub fn special_sets(&self) -> Option<SpecialSets> {
        let special = Self::special(self.toric.n0, self.toric.n1).ok()?;
        if *self != special {
            return None;
        }
        let np = self.toric.n0 - self.toric.n1;
        let n = self.n();
        Some(SpecialSets {
            n,
            i1: (0..np).collect(),
            i2: (np..n).step_by(2).collect(),
            i3: (np + 1..n).step_by(2).collect(),
        })
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) sigma={}", self.toric.n0, self.toric.n1, self.bits())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSets {
    pub n: usize,
    pub i1: BTreeSet<usize>,
    pub i2: BTreeSet<usize>,
    pub i3: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// `h+_{j+1/2} : j -> j+1`
    Plus(usize),
    /// `h-_{j+1/2} : j+1 -> j`
    Minus(usize),
    /// `r_k : k -> k`
    Loop(usize),
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arrow::Plus(j) => write!(f, "h+_{}/2", 2 * j + 1),
            Arrow::Minus(j) => write!(f, "h-_{}/2", 2 * j + 1),
            Arrow::Loop(k) => write!(f, "r_{k}"),
        }
    }
}

/// `plus - minus`, a difference of two paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub plus: Vec<Arrow>,
    pub minus: Vec<Arrow>,
}

impl Relation {
    pub fn monomials(&self) -> [&[Arrow]; 2] {
        [&self.plus, &self.minus]
    }
}

impl Serialize for Arrow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct QuiverWithCut {
    sigma: SigmaPartition,
    arrows: Vec<Arrow>,
    cut: Option<BTreeSet<Arrow>>,
}

impl QuiverWithCut {
    /// The quiver of `sigma` with no cut chosen.
    pub fn new(sigma: &SigmaPartition) -> Self {
        let mut arrows = Vec::with_capacity(2 * sigma.n() + sigma.n());
        for k in 0..sigma.n() {
            if sigma.is_loop(k) {
                arrows.push(Arrow::Loop(k));
            }
            arrows.push(Arrow::Plus(k));
            arrows.push(Arrow::Minus(k));
        }
        QuiverWithCut {
            sigma: sigma.clone(),
            arrows,
            cut: None,
        }
    }

    /// The quiver with the default cut: groups `[r_0], h_{1/2}, [r_1], h_{3/2}, ...`
    /// and one arrow (`r_k`, or `h-` of a pair) from every other group.
    pub fn with_default_cut(sigma: &SigmaPartition) -> Result<Self> {
        let q = Self::new(sigma);
        let mut groups = Vec::new();
        for k in 0..sigma.n() {
            if sigma.is_loop(k) {
                groups.push(Arrow::Loop(k));
            }
            groups.push(Arrow::Minus(k));
        }
        debug_assert!(groups.len() % 2 == 0);
        let cut = groups.into_iter().step_by(2).collect();
        q.with_cut(cut)
    }

    /// The special partition with cut `{h-_j : j not in I2}`.
    pub fn with_special_cut(sigma: &SigmaPartition) -> Result<Self> {
        let sets = sigma
            .special_sets()
            .ok_or_else(|| Error::InvalidSigma(format!("{sigma} is not special")))?;
        let cut = (0..sigma.n())
            .filter(|j| !sets.i2.contains(j))
            .map(Arrow::Minus)
            .collect();
        Self::new(sigma).with_cut(cut)
    }

    /// Attaches `cut` after checking it is a valid cut.
    pub fn with_cut(mut self, cut: BTreeSet<Arrow>) -> Result<Self> {
        for a in &cut {
            if !self.arrows.contains(a) {
                return Err(Error::UnknownArrow(a.to_string()));
            }
        }
        check_cut(&self, &cut)?;
        self.cut = Some(cut);
        Ok(self)
    }

    pub fn sigma(&self) -> &SigmaPartition {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn cut(&self) -> Option<&BTreeSet<Arrow>> {
        self.cut.as_ref()
    }

    pub fn in_cut(&self, a: Arrow) -> bool {
        self.cut.as_ref().is_some_and(|c| c.contains(&a))
    }

    /// Arrows not in the cut, in quiver order.
    pub fn uncut_arrows(&self) -> Vec<Arrow> {
        self.arrows
            .iter()
            .copied()
            .filter(|&a| !self.in_cut(a))
            .collect()
    }

    pub fn source(&self, a: Arrow) -> usize {
        match a {
            Arrow::Plus(j) => j,
            Arrow::Minus(j) => (j + 1) % self.n(),
            Arrow::Loop(k) => k,
        }
    }

    pub fn target(&self, a: Arrow) -> usize {
        match a {
            Arrow::Plus(j) => (j + 1) % self.n(),
            Arrow::Minus(j) => j,
            Arrow::Loop(k) => k,
        }
    }

    /// `eps_k`: the loop at `k`, or `h+_{k-1/2} h-_{k-1/2}`.
    fn eps(&self, k: usize) -> Vec<Arrow> {
        if self.sigma.is_loop(k) {
            vec![Arrow::Loop(k)]
        } else {
            let j = (k + self.n() - 1) % self.n();
            vec![Arrow::Plus(j), Arrow::Minus(j)]
        }
    }

    /// `eta_k`: the loop at `k`, or `h-_{k+1/2} h+_{k+1/2}`.
    fn eta(&self, k: usize) -> Vec<Arrow> {
        if self.sigma.is_loop(k) {
            vec![Arrow::Loop(k)]
        } else {
            vec![Arrow::Minus(k), Arrow::Plus(k)]
        }
    }

    /// The cyclic derivative of the potential with respect to `a`.
    pub fn relation(&self, a: Arrow) -> Result<Relation> {
        if !self.arrows.contains(&a) {
            return Err(Error::UnknownArrow(a.to_string()));
        }
        let n = self.n();
        Ok(match a {
            Arrow::Minus(j) => {
                let mut plus = vec![Arrow::Plus(j)];
                plus.extend(self.eps(j));
                let mut minus = self.eta((j + 1) % n);
                minus.push(Arrow::Plus(j));
                Relation { plus, minus }
            }
            Arrow::Plus(j) => {
                let mut plus = self.eps(j);
                plus.push(Arrow::Minus(j));
                let mut minus = vec![Arrow::Minus(j)];
                minus.extend(self.eta((j + 1) % n));
                Relation { plus, minus }
            }
            Arrow::Loop(k) => {
                let jm = (k + n - 1) % n;
                Relation {
                    plus: vec![Arrow::Plus(jm), Arrow::Minus(jm)],
                    minus: vec![Arrow::Minus(k), Arrow::Plus(k)],
                }
            }
        })
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `chi(a, b) = sum_i a_i b_i - sum_{arrows s -> t} a_s b_t`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|&h| a[self.source(h)] * b[self.target(h)])
            .sum();
        Ok(diag - off)
    }

    /// `d_C(a) = sum_{cut arrows s -> t} a_s a_t`.
    pub fn d_cut(&self, a: &[i64]) -> Result<i64> {
        self.check_len(a)?;
        let cut = self.cut.as_ref().ok_or(Error::MissingCut)?;
        Ok(cut
            .iter()
            .map(|&h| a[self.source(h)] * a[self.target(h)])
            .sum())
    }

    pub fn dump(&self) -> QuiverDump {
        QuiverDump {
            n0: self.sigma.toric.n0,
            n1: self.sigma.toric.n1,
            sigma: self.sigma.bits(),
            vertices: self.n(),
            loops: self.sigma.loop_set().into_iter().collect(),
            arrows: self
                .arrows
                .iter()
                .map(|&a| ArrowDump {
                    name: a.to_string(),
                    src: self.source(a),
                    dst: self.target(a),
                    in_cut: self.in_cut(a),
                })
                .collect(),
            relations: self
                .arrows
                .iter()
                .map(|&a| RelationDump {
                    arrow: a.to_string(),
                    relation: self.relation(a).expect("own arrow"),
                })
                .collect(),
        }
    }
}

fn check_cut(q: &QuiverWithCut, cut: &BTreeSet<Arrow>) -> Result<()> {
    for &a in q.arrows() {
        let rel = q.relation(a)?;
        for word in rel.monomials() {
            let hits = word.iter().filter(|b| cut.contains(b)).count();
            let ok = if cut.contains(&a) { hits == 0 } else { hits == 1 };
            if !ok {
                return Err(Error::InvalidCut(a.to_string()));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowDump {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    pub in_cut: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationDump {
    pub arrow: String,
    pub relation: Relation,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverDump {
    pub n0: usize,
    pub n1: usize,
    pub sigma: String,
    pub vertices: usize,
    pub loops: Vec<usize>,
    pub arrows: Vec<ArrowDump>,
    pub relations: Vec<RelationDump>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conifold() -> SigmaPartition {
        SigmaPartition::parse(1, 1, "01").unwrap()
    }

    fn example_six() -> SigmaPartition {
        SigmaPartition::parse(4, 2, "010010").unwrap()
    }

    #[test]
    fn loop_sets() {
        assert!(conifold().loop_set().is_empty());
        assert_eq!(
            SigmaPartition::parse(1, 0, "0").unwrap().loop_set(),
            BTreeSet::from([0])
        );
        assert_eq!(example_six().loop_set(), BTreeSet::from([0, 3]));
    }

    #[test]
    fn sigma_x_reconstruction() {
        // centres (7/2,0) (3/2,1) (5/2,0) (3/2,0) (1/2,1) (1/2,0)
        assert_eq!(example_six().sigma_x_doubled(), vec![7, 3, 5, 3, 1, 1]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(SigmaPartition::parse(1, 1, "00").is_err());
        assert!(SigmaPartition::parse(1, 1, "012").is_err());
        assert!(SigmaPartition::parse(1, 2, "011").is_err());
    }

    #[test]
    fn arrow_counts() {
        assert_eq!(QuiverWithCut::new(&conifold()).arrows().len(), 4);
        let c3 = QuiverWithCut::new(&SigmaPartition::parse(1, 0, "0").unwrap());
        assert_eq!(c3.arrows().len(), 3);
        assert_eq!(QuiverWithCut::new(&example_six()).arrows().len(), 14);
    }

    #[test]
    fn relation_cases() {
        // both neighbours of h_{i} looped: (3,0) row 000, i = 1/2
        let s = SigmaPartition::parse(3, 0, "000").unwrap();
        let q = QuiverWithCut::new(&s);
        let r = q.relation(Arrow::Minus(0)).unwrap();
        assert_eq!(r.plus, vec![Arrow::Plus(0), Arrow::Loop(0)]);
        assert_eq!(r.minus, vec![Arrow::Loop(1), Arrow::Plus(0)]);

        // row 0010: vertex 1 looped, vertex 2 not; h-_{3/2}
        let s = SigmaPartition::parse(3, 1, "0010").unwrap();
        let q = QuiverWithCut::new(&s);
        let r = q.relation(Arrow::Minus(1)).unwrap();
        assert_eq!(r.plus, vec![Arrow::Plus(1), Arrow::Loop(1)]);
        assert_eq!(
            r.minus,
            vec![Arrow::Minus(2), Arrow::Plus(2), Arrow::Plus(1)]
        );
        let r = q.relation(Arrow::Loop(1)).unwrap();
        assert_eq!(r.plus, vec![Arrow::Plus(0), Arrow::Minus(0)]);
        assert_eq!(r.minus, vec![Arrow::Minus(1), Arrow::Plus(1)]);
    }

    #[test]
    fn relation_words_are_composable_and_reverse_the_arrow() {
        for bits in ["01", "0", "010", "0010", "010010", "000", "0110"] {
            let ones = bits.matches('1').count();
            let s = SigmaPartition::parse(bits.len() - ones, ones, bits).unwrap();
            let q = QuiverWithCut::new(&s);
            for &a in q.arrows() {
                for word in q.relation(a).unwrap().monomials() {
                    for w in word.windows(2) {
                        assert_eq!(q.source(w[0]), q.target(w[1]));
                    }
                    assert_eq!(q.target(word[0]), q.source(a));
                    assert_eq!(q.source(*word.last().unwrap()), q.target(a));
                }
            }
        }
    }

    #[test]
    fn default_cuts() {
        let q = QuiverWithCut::with_default_cut(&conifold()).unwrap();
        assert_eq!(q.cut().unwrap(), &BTreeSet::from([Arrow::Minus(0)]));
        let q = QuiverWithCut::with_default_cut(&SigmaPartition::parse(1, 0, "0").unwrap())
            .unwrap();
        assert_eq!(q.cut().unwrap(), &BTreeSet::from([Arrow::Loop(0)]));
    }

    #[test]
    fn the_other_conifold_cut_is_valid_too() {
        let q = QuiverWithCut::new(&conifold());
        assert!(q.clone().with_cut(BTreeSet::from([Arrow::Minus(1)])).is_ok());
        assert!(q
            .with_cut(BTreeSet::from([Arrow::Minus(0), Arrow::Plus(0)]))
            .is_err());
    }

    #[test]
    fn euler_form_and_d_cut() {
        let q = QuiverWithCut::with_default_cut(&conifold()).unwrap();
        assert_eq!(q.euler_form(&[1, 1], &[1, 1]).unwrap(), -2);
        assert_eq!(q.euler_form(&[0, 0], &[3, 1]).unwrap(), 0);
        assert_eq!(q.d_cut(&[1, 1]).unwrap(), 1);
        assert!(q.euler_form(&[1], &[1, 1]).is_err());
        let c3 = QuiverWithCut::new(&SigmaPartition::parse(1, 0, "0").unwrap());
        assert_eq!(c3.euler_form(&[1], &[1]).unwrap(), -2);
        assert_eq!(c3.d_cut(&[1]), Err(Error::MissingCut));
    }

    #[test]
    fn special_partitions() {
        assert_eq!(SigmaPartition::special(1, 1).unwrap().bits(), "10");
        assert_eq!(SigmaPartition::special(2, 0).unwrap().bits(), "00");
        assert_eq!(SigmaPartition::special(2, 1).unwrap().bits(), "010");
        let s = SigmaPartition::special(3, 1).unwrap();
        assert_eq!(s.loop_set(), BTreeSet::from([0, 1]));
        let sets = s.special_sets().unwrap();
        assert_eq!(sets.i2, BTreeSet::from([2]));
        assert_eq!(sets.i3, BTreeSet::from([3]));
        assert!(SigmaPartition::special(1, 2).is_err());
        let c = SigmaPartition::special(1, 1).unwrap().special_sets().unwrap();
        assert_eq!((c.i1.len(), c.i2, c.i3), (0, BTreeSet::from([0]), BTreeSet::from([1])));
    }

    #[test]
    fn special_cut_identity() {
        for (n0, n1) in [(1, 1), (2, 0), (2, 1), (3, 1), (3, 2), (4, 2), (1, 0)] {
            let s = SigmaPartition::special(n0, n1).unwrap();
            let sets = s.special_sets().unwrap();
            let q = QuiverWithCut::with_special_cut(&s).unwrap();
            let n = s.n();
            // all vectors with entries <= 2 and total <= 4
            let mut a = vec![0i64; n];
            loop {
                if a.iter().sum::<i64>() <= 4 {
                    let lhs = q.euler_form(&a, &a).unwrap() + 2 * q.d_cut(&a).unwrap();
                    let rhs: i64 = sets
                        .i2
                        .iter()
                        .map(|&i| (a[(i + 1) % n] - a[i]).pow(2))
                        .sum();
                    assert_eq!(lhs, rhs, "{s} alpha={a:?}");
                }
                let mut i = 0;
                while i < n && a[i] == 4 {
                    a[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                a[i] += 1;
            }
        }
    }

    #[test]
    fn flips() {
        let c = conifold();
        assert_eq!(c.flip(0).unwrap().bits(), "10");
        assert_eq!(c.flip(0).unwrap().flip(0).unwrap(), c);
        let f = example_six().flip(1).unwrap();
        assert_eq!(f.bits(), "100010");
        assert_eq!(f.loop_set(), BTreeSet::from([2, 3]));
        assert_eq!(example_six().flip(0), Err(Error::LoopVertex(0)));
        assert!(example_six().flip(9).is_err());
    }

    #[test]
    fn json_dump_lists_cut_membership() {
        let q = QuiverWithCut::with_default_cut(&conifold()).unwrap();
        let v = serde_json::to_value(q.dump()).unwrap();
        assert_eq!(v["arrows"][1]["name"], "h-_1/2");
        assert_eq!(v["arrows"][1]["in_cut"], true);
        assert_eq!(v["relations"][1]["relation"]["plus"][0], "h+_1/2");
    }
}
