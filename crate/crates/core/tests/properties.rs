use proptest::prelude::*;

use toric_dt::motive::{MotiveRat, VPolynomial};
use toric_dt::quiver::{Arrow, QuiverWithCut, SigmaPartition};
use toric_dt::roots::{positive_roots, simple_reflection};
use toric_dt::series::universal_series;
use toric_dt::{MotiveSeries, Rational, RationalSeries};

fn vpoly() -> impl Strategy<Value = VPolynomial> {
    (-3i64..3, prop::collection::vec(-3i64..4, 0..4))
        .prop_map(|(low, cs)| VPolynomial::from_terms(cs.into_iter().enumerate().map(|(i, c)| (low + i as i64, c))))
}

fn motive() -> impl Strategy<Value = MotiveRat> {
    (vpoly(), vpoly()).prop_filter_map("nonzero denominator", |(n, d)| MotiveRat::new(n, d).ok())
}

fn all_rows(n: usize) -> Vec<SigmaPartition> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let bits: String = (0..n).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect();
        let n1 = bits.matches('1').count();
        if 2 * n1 <= n {
            out.push(SigmaPartition::parse(n - n1, n1, &bits).unwrap());
        }
    }
    out
}

#[test]
fn default_cuts_are_valid_for_every_row() {
    for n in 1..=6 {
        for s in all_rows(n) {
            let q = QuiverWithCut::with_default_cut(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
            let cut = q.cut().unwrap();
            for &c in cut {
                let rel = q.relation(c).unwrap();
                for word in rel.monomials() {
                    assert!(word.iter().all(|a| !cut.contains(a)), "{s}: relation of {c} uses a cut arrow");
                }
            }
            // every other loop or pair is cut
            assert_eq!(2 * cut.len(), n + s.loop_set().len(), "{s}");
        }
    }
}

#[test]
fn special_cut_contains_only_h_minus() {
    for (n0, n1) in [(1, 0), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2)] {
        let s = SigmaPartition::special(n0, n1).unwrap();
        let q = QuiverWithCut::with_special_cut(&s).unwrap();
        assert!(q.cut().unwrap().iter().all(|a| matches!(a, Arrow::Minus(_))), "{s}");
    }
}

#[test]
fn universal_series_json_round_trip() {
    let s = universal_series(&SigmaPartition::special(1, 1).unwrap(), 3);
    let json = serde_json::to_string(&s).unwrap();
    let back: MotiveSeries = serde_json::from_str(&json).unwrap();
    assert_eq!(back, s);
}

proptest! {
    #[test]
    fn flip_is_an_involution(mask in 0u32..64, n in 1usize..=6, k in 0usize..6) {
        let bits: String = (0..n).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect();
        let n1 = bits.matches('1').count();
        prop_assume!(2 * n1 <= n);
        let s = SigmaPartition::parse(n - n1, n1, &bits).unwrap();
        if let Ok(f) = s.flip(k % n) {
            prop_assert!(!f.is_loop(k % n));
            prop_assert_eq!(f.flip(k % n).unwrap(), s);
        }
    }

    #[test]
    fn reflection_is_an_involution(v in prop::collection::vec(-5i64..6, 1..6), k in 0usize..6) {
        let k = k % v.len();
        prop_assert_eq!(simple_reflection(k, &simple_reflection(k, &v)), v);
    }

    #[test]
    fn adams_is_a_ring_map(a in motive(), b in motive(), n in 1u32..4) {
        prop_assert_eq!((&a * &b).adams(n), a.adams(n) * b.adams(n));
        prop_assert_eq!((&a + &b).adams(n), a.adams(n) + b.adams(n));
    }

    #[test]
    fn division_inverts_multiplication(a in motive(), b in motive()) {
        if let Ok(q) = a.try_div(&b) {
            prop_assert_eq!(q * b, a);
        }
    }

    #[test]
    fn motive_json_round_trip(a in motive()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: MotiveRat = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exp_is_additive(f in prop::collection::vec(motive(), 3), g in prop::collection::vec(motive(), 3)) {
        let cap = 3;
        let series = |cs: &[MotiveRat]| {
            let mut s = MotiveSeries::zero_y(2, cap);
            for (i, c) in cs.iter().enumerate() {
                s.add_term(vec![i as u32 + 1, (i as u32) % 2], c.clone());
            }
            s
        };
        let (sf, sg) = (series(&f), series(&g));
        let lhs = sf.add(&sg).plethystic_exp().unwrap();
        let rhs = sf.plethystic_exp().unwrap().mul(&sg.plethystic_exp().unwrap());
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.plethystic_log().unwrap(), sf.add(&sg));
    }

    #[test]
    fn exp_log_inverse_over_q(cs in prop::collection::vec(-5i64..6, 1..5)) {
        let mut s = RationalSeries::zero_y(1, 5);
        for (i, c) in cs.iter().enumerate() {
            s.add_term(vec![i as u32 + 1], Rational::from_integer((*c).into()));
        }
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn roots_are_closed_under_reflection(n0 in 1usize..3, n1 in 0usize..3, k in 0usize..4) {
        prop_assume!(n1 <= n0);
        let s = SigmaPartition::special(n0, n1).unwrap();
        let n = s.n();
        let k = k % n;
        for r in positive_roots(&s, 5) {
            let a: Vec<i64> = r.coords.iter().map(|&x| x as i64).collect();
            let img = simple_reflection(k, &a);
            let is_ek = a.iter().enumerate().all(|(i, &x)| x == (i == k) as i64);
            prop_assert_eq!(img.iter().all(|&x| x >= 0), !is_ek || n == 1);
        }
    }
}
