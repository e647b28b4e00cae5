//! Positive roots of the affine type-A root system on `Z/N`, their parities
//! relative to a partition, simple reflections and stability parameters.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::SigmaPartition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootKind {
    RealOdd,
    RealEven,
    Imaginary,
}

/// How a positive root is written in terms of `alpha_[a,b]` and `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Decomposition {
    /// `alpha_[a,b] + n delta` (`n >= 0`) or `-alpha_[a,b] + n delta` (`n >= 1`),
    /// with `1 <= a <= b <= N-1`.
    Real {
        a: usize,
        b: usize,
        n: u32,
        positive: bool,
    },
    /// `n delta`, `n >= 1`.
    Imaginary { n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub coords: Vec<u32>,
    pub kind: RootKind,
    pub decomposition: Decomposition,
}

impl Root {
    pub fn degree(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn is_real(&self) -> bool {
        self.kind != RootKind::Imaginary
    }

    /// Recognizes `coords` as a positive root, or returns `None`.
    pub fn from_coords(sigma: &SigmaPartition, coords: &[u32]) -> Option<Root> {
        let decomposition = decompose(coords)?;
        if coords.len() != sigma.n() {
            return None;
        }
        let kind = match decomposition {
            Decomposition::Imaginary { .. } => RootKind::Imaginary,
            Decomposition::Real { .. } => {
                if non_loop_sum(sigma, coords) % 2 == 1 {
                    RootKind::RealOdd
                } else {
                    RootKind::RealEven
                }
            }
        };
        Some(Root {
            coords: coords.to_vec(),
            kind,
            decomposition,
        })
    }

    /// Point multiplicity and curve interval, as used for DT/PT variables.
    pub fn curve_class(&self, sigma: &SigmaPartition) -> CurveClass {
        match self.decomposition {
            Decomposition::Imaginary { n } => CurveClass {
                n,
                interval: None,
                c: 0,
            },
            Decomposition::Real { a, b, n, .. } => CurveClass {
                n,
                interval: Some((a, b)),
                c: (a..=b).filter(|&i| !sigma.is_loop(i)).count(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub n: u32,
    pub interval: Option<(usize, usize)>,
    /// Number of vertices of the interval without a loop.
    pub c: usize,
}

fn non_loop_sum(sigma: &SigmaPartition, coords: &[u32]) -> u32 {
    coords
        .iter()
        .enumerate()
        .filter(|&(k, _)| !sigma.is_loop(k))
        .map(|(_, &c)| c)
        .sum()
}

/// `Some(a, b)` if `ind` is the indicator of a nonempty interval inside `1..N`.
fn interval_of(ind: &[u32]) -> Option<(usize, usize)> {
    let a = ind.iter().position(|&x| x == 1)?;
    let b = ind.iter().rposition(|&x| x == 1)?;
    if a == 0 || ind[a..=b].iter().any(|&x| x != 1) {
        return None;
    }
    Some((a, b))
}

fn decompose(coords: &[u32]) -> Option<Decomposition> {
    let m = *coords.iter().min()?;
    let r: Vec<u32> = coords.iter().map(|&c| c - m).collect();
    if r.iter().any(|&x| x > 1) {
        return None;
    }
    if r.iter().all(|&x| x == 0) {
        return (m > 0).then_some(Decomposition::Imaginary { n: m });
    }
    if r[0] == 0 {
        let (a, b) = interval_of(&r)?;
        Some(Decomposition::Real {
            a,
            b,
            n: m,
            positive: true,
        })
    } else {
        let complement: Vec<u32> = r.iter().map(|&x| 1 - x).collect();
        let (a, b) = interval_of(&complement)?;
        Some(Decomposition::Real {
            a,
            b,
            n: m + 1,
            positive: false,
        })
    }
}

/// All positive roots of total degree `1..=max_degree`, sorted by degree
/// and then by coordinates.
pub fn positive_roots(sigma: &SigmaPartition, max_degree: u32) -> Vec<Root> {
    let n = sigma.n();
    let nn = n as u32;
    let mut out = Vec::new();
    let mut push = |coords: Vec<u32>| {
        out.push(Root::from_coords(sigma, &coords).expect("constructed root"));
    };
    for m in 1..=max_degree / nn {
        push(vec![m; n]);
    }
    for a in 1..n {
        for b in a..n {
            let len = (b - a + 1) as u32;
            for m in 0.. {
                if len + m * nn > max_degree {
                    break;
                }
                let mut c = vec![m; n];
                c[a..=b].iter_mut().for_each(|x| *x += 1);
                push(c);
            }
            for m in 1.. {
                if m * nn - len > max_degree {
                    break;
                }
                let mut c = vec![m; n];
                c[a..=b].iter_mut().for_each(|x| *x -= 1);
                push(c);
            }
        }
    }
    out.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.coords.cmp(&y.coords)));
    out
}

/// Parity of a real root: sum of coordinates over vertices without loops.
pub fn parity(sigma: &SigmaPartition, coords: &[u32]) -> Result<RootKind> {
    match Root::from_coords(sigma, coords) {
        Some(r) if r.kind == RootKind::Imaginary => Err(Error::ImaginaryRoot),
        Some(r) => Ok(r.kind),
        None => Err(Error::Invalid(format!("{coords:?} is not a positive root"))),
    }
}

/// Cartan matrix of the `N`-cycle: `2` on the diagonal, minus the number of
/// edges between distinct vertices.
pub fn cartan(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    if n == 1 {
        return c;
    }
    for i in 0..n {
        c[i][i] += 2;
        c[i][(i + 1) % n] -= 1;
        c[(i + 1) % n][i] -= 1;
    }
    c
}

/// `s_k`, extended linearly from `e_i -> e_i - C_{ik} e_k`.
pub fn simple_reflection(k: usize, alpha: &[i64]) -> Vec<i64> {
    let c = cartan(alpha.len());
    let pairing: i64 = alpha.iter().enumerate().map(|(i, a)| a * c[i][k]).sum();
    let mut out = alpha.to_vec();
    out[k] -= pairing;
    out
}

/// A stability parameter `base + eps * epsilon` with `epsilon` infinitesimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParam {
    pub base: Vec<BigRational>,
    pub eps: Vec<BigRational>,
}

impl StabilityParam {
    pub fn new(base: Vec<BigRational>, eps: Vec<BigRational>) -> Result<Self> {
        if base.len() != eps.len() {
            return Err(Error::LengthMismatch {
                expected: base.len(),
                got: eps.len(),
            });
        }
        Ok(StabilityParam { base, eps })
    }

    pub fn from_ints(base: &[i64], eps: &[i64]) -> Result<Self> {
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        Self::new(q(base), q(eps))
    }

    /// Chamber whose framed series counts DT-type objects: real roots
    /// `alpha_[a,b] + n delta` and all imaginary roots are destabilizing.
    pub fn dt(n: usize) -> Self {
        Self::curve_chamber(n, -1)
    }

    /// Chamber whose framed series counts PT-type objects: only the real roots
    /// `alpha_[a,b] + n delta`.
    pub fn pt(n: usize) -> Self {
        Self::curve_chamber(n, 1)
    }

    fn curve_chamber(n: usize, eps0: i64) -> Self {
        let mut base = vec![-1i64; n];
        base[0] = n as i64 - 1;
        let mut eps = vec![0i64; n];
        eps[0] = eps0;
        Self::from_ints(&base, &eps).expect("same length")
    }

    /// All entries negative: every root is included.
    pub fn ncdt(n: usize) -> Self {
        Self::from_ints(&vec![-1; n], &vec![0; n]).expect("same length")
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    fn dot(v: &[BigRational], a: &[u32]) -> BigRational {
        v.iter()
            .zip(a)
            .map(|(x, &c)| x * BigRational::from_integer(c.into()))
            .fold(BigRational::zero(), |s, t| s + t)
    }

    /// Lexicographic sign of `(base . alpha, eps . alpha)`.
    pub fn sign(&self, alpha: &[u32]) -> Ordering {
        let b = Self::dot(&self.base, alpha);
        if !b.is_zero() {
            return if b.is_negative() { Ordering::Less } else { Ordering::Greater };
        }
        Self::dot(&self.eps, alpha).cmp(&BigRational::zero())
    }

    pub fn is_negative(&self, alpha: &[u32]) -> bool {
        self.sign(alpha) == Ordering::Less
    }

    /// First root orthogonal to `self`, if any.
    pub fn first_orthogonal<'a>(&self, roots: &'a [Root]) -> Option<&'a Root> {
        roots.iter().find(|r| self.sign(&r.coords) == Ordering::Equal)
    }

    pub fn is_generic(&self, roots: &[Root]) -> bool {
        self.first_orthogonal(roots).is_none()
    }

    pub fn check_generic(&self, roots: &[Root]) -> Result<()> {
        match self.first_orthogonal(roots) {
            Some(r) => Err(Error::NotGeneric {
                root: r.coords.clone(),
            }),
            None => Ok(()),
        }
    }
}

/// Two parameters on either side of the wall of a single real root: the
/// first makes `root` negative, the second positive, and every other root in
/// `roots` has the same sign for both. Searches small integer bases.
pub fn wall_pair(root: &Root, roots: &[Root]) -> Option<(StabilityParam, StabilityParam)> {
    if !root.is_real() {
        return None;
    }
    let n = root.coords.len();
    let dot = |b: &[i64], a: &[u32]| -> i64 { b.iter().zip(a).map(|(x, &y)| x * y as i64).sum() };
    let range = 4i64;
    let total = (2 * range + 1).pow(n as u32);
    (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % (2 * range + 1) - range;
                    k /= 2 * range + 1;
                    d
                })
                .collect::<Vec<i64>>()
        })
        .find(|b| {
            dot(b, &root.coords) == 0
                && roots.iter().all(|r| r.coords == root.coords || dot(b, &r.coords) != 0)
        })
        .map(|b| {
            let up: Vec<i64> = root.coords.iter().map(|&x| x as i64).collect();
            let down: Vec<i64> = up.iter().map(|x| -x).collect();
            (
                StabilityParam::from_ints(&b, &down).expect("same length"),
                StabilityParam::from_ints(&b, &up).expect("same length"),
            )
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conifold() -> SigmaPartition {
        SigmaPartition::parse(1, 1, "01").unwrap()
    }

    fn coords(rs: &[Root]) -> Vec<Vec<u32>> {
        rs.iter().map(|r| r.coords.clone()).collect()
    }

    #[test]
    fn conifold_roots_degree_two() {
        let rs = positive_roots(&conifold(), 2);
        assert_eq!(coords(&rs), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let kinds: Vec<_> = rs.iter().map(|r| r.kind).collect();
        assert_eq!(kinds, vec![RootKind::RealOdd, RootKind::RealOdd, RootKind::Imaginary]);
        assert_eq!(
            rs[1].decomposition,
            Decomposition::Real { a: 1, b: 1, n: 1, positive: false }
        );
    }

    #[test]
    fn single_vertex_has_only_imaginary_roots() {
        let s = SigmaPartition::parse(1, 0, "0").unwrap();
        let rs = positive_roots(&s, 3);
        assert_eq!(coords(&rs), vec![vec![1], vec![2], vec![3]]);
        assert!(rs.iter().all(|r| r.kind == RootKind::Imaginary));
    }

    #[test]
    fn three_vertices_degree_one() {
        let s = SigmaPartition::parse(3, 0, "000").unwrap();
        let rs = positive_roots(&s, 1);
        assert_eq!(coords(&rs), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let s = SigmaPartition::parse(2, 1, "010").unwrap();
        let rs = positive_roots(&s, 6);
        let mut brute = Vec::new();
        for a in 0..=6u32 {
            for b in 0..=6 - a {
                for c in 0..=6 - a - b {
                    let v = vec![a, b, c];
                    if v.iter().sum::<u32>() > 0 && decompose(&v).is_some() {
                        brute.push(v);
                    }
                }
            }
        }
        brute.sort_by(|x, y| {
            x.iter().sum::<u32>().cmp(&y.iter().sum()).then_with(|| x.cmp(y))
        });
        assert_eq!(coords(&rs), brute);
    }

    #[test]
    fn parities() {
        assert_eq!(parity(&conifold(), &[1, 0]), Ok(RootKind::RealOdd));
        let s20 = SigmaPartition::parse(2, 0, "00").unwrap();
        assert_eq!(parity(&s20, &[1, 0]), Ok(RootKind::RealEven));
        let s31 = SigmaPartition::special(3, 1).unwrap();
        assert_eq!(parity(&s31, &[0, 0, 1, 1]), Ok(RootKind::RealEven));
        assert_eq!(parity(&conifold(), &[1, 1]), Err(Error::ImaginaryRoot));
    }

    #[test]
    fn reflections() {
        assert_eq!(simple_reflection(1, &[1, 0]), vec![1, 2]);
        for n in 1..6 {
            for k in 0..n {
                assert_eq!(simple_reflection(k, &vec![1; n]), vec![1; n]);
            }
        }
        assert_eq!(simple_reflection(0, &[1, 0, 0]), vec![-1, 0, 0]);
        assert_eq!(simple_reflection(1, &[1, 0, 0]), vec![1, 1, 0]);
    }

    #[test]
    fn curve_classes() {
        let r = Root::from_coords(&conifold(), &[1, 1]).unwrap();
        assert_eq!(r.curve_class(&conifold()), CurveClass { n: 1, interval: None, c: 0 });
        // vertices 1 and 2 of "010" carry no loop
        let s = SigmaPartition::parse(2, 1, "010").unwrap();
        let r = Root::from_coords(&s, &[0, 1, 1]).unwrap();
        assert_eq!(r.curve_class(&s).c, 2);
        let s31 = SigmaPartition::special(3, 1).unwrap();
        let r = Root::from_coords(&s31, &[0, 0, 0, 1]).unwrap();
        assert_eq!(r.curve_class(&s31).c, 1);
    }

    #[test]
    fn stability_signs() {
        let n = 3;
        let delta = vec![1; n];
        assert!(!StabilityParam::pt(n).is_negative(&delta));
        assert!(StabilityParam::dt(n).is_negative(&delta));
        let zero = StabilityParam::from_ints(&[0, 0, 0], &[0, 0, 0]).unwrap();
        let rs = positive_roots(&SigmaPartition::special(2, 1).unwrap(), 4);
        assert!(!zero.is_generic(&rs));
        assert!(StabilityParam::dt(n).is_generic(&rs));
        assert!(StabilityParam::from_ints(&[1], &[0, 0]).is_err());
    }

    #[test]
    fn wall_pairs_separate_one_root() {
        let s = SigmaPartition::special(2, 1).unwrap();
        let rs = positive_roots(&s, 5);
        let r = Root::from_coords(&s, &[1, 1, 0]).unwrap();
        let (below, above) = wall_pair(&r, &rs).unwrap();
        assert!(below.is_negative(&r.coords) && !above.is_negative(&r.coords));
        for o in rs.iter().filter(|o| o.coords != r.coords) {
            assert_eq!(below.sign(&o.coords), above.sign(&o.coords));
        }
        let im = Root::from_coords(&s, &[1, 1, 1]).unwrap();
        assert!(wall_pair(&im, &rs).is_none());
    }

    #[test]
    fn chambers_select_expected_roots() {
        let s = SigmaPartition::special(2, 1).unwrap();
        let rs = positive_roots(&s, 6);
        for r in &rs {
            let plus = matches!(r.decomposition, Decomposition::Real { positive: true, .. });
            let im = r.kind == RootKind::Imaginary;
            assert_eq!(StabilityParam::pt(3).is_negative(&r.coords), plus);
            assert_eq!(StabilityParam::dt(3).is_negative(&r.coords), plus || im);
            assert!(StabilityParam::ncdt(3).is_negative(&r.coords));
        }
    }
}
