//! The nilpotent factor `N^sigma` of the special partition, summed over
//! partition tuples, and the factorization `A_U = I^sigma(y') N^sigma(y)`.

use rayon::prelude::*;

use super::nilpotent::SpecialQuiver;
use super::partitions::{partitions_up_to, PartitionTuple};
use crate::error::Result;
use crate::motive::{MotiveRat, VPolynomial};
use crate::quiver::SigmaPartition;
use crate::series::universal_series;
use crate::MotiveSeries;

/// Where the exponent `T - B` of a tuple comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferenceSource {
    /// Exact ranks of the linear systems.
    LinearAlgebra,
    /// The closed quadratic expression in the partition lengths and multiplicities.
    ClosedForm,
}

fn l_over_l_minus_one() -> MotiveRat {
    MotiveRat::new(VPolynomial::v_pow(2), VPolynomial::from_terms([(2, 1), (0, -1)])).expect("nonzero")
}

fn signed_v_pow(e: i64) -> MotiveRat {
    // (-v)^e
    let c = if e.rem_euclid(2) == 0 { 1 } else { -1 };
    MotiveRat::from_poly(VPolynomial::monomial(e, c))
}

/// `N^sigma` up to total degree `cap` as a sum over all partition tuples:
/// `(-v)^{sum_{I2} (alpha_{i+1} - alpha_i)^2} L^{T - B} prod f(pi^[a,b]) y^alpha`.
pub fn n_sigma_via_partitions(q: &SpecialQuiver, cap: u32, source: DifferenceSource) -> MotiveSeries {
    let n = q.n();
    let tuples = PartitionTuple::all_up_to_degree(n, cap as usize);
    let terms: Vec<(Vec<u32>, MotiveRat)> = tuples
        .par_iter()
        .map(|t| {
            let alpha = t.dim_vector();
            let doubled = match source {
                DifferenceSource::LinearAlgebra => {
                    let (tt, bb) = q.tuple_dims(t);
                    2 * (tt as i64 - bb as i64)
                }
                DifferenceSource::ClosedForm => q.difference_doubled(t),
            };
            // L^{T - B} = v^{2 (T - B)}
            let mut c = signed_v_pow(q.sign_exponent(&alpha)) * MotiveRat::v_pow(doubled);
            for (_, p) in t.entries() {
                c = c * p.f_weight();
            }
            (alpha, c)
        })
        .collect();
    let mut out = MotiveSeries::zero_y(n, cap);
    for (alpha, c) in terms {
        out.add_term(alpha, c);
    }
    out
}

/// The closed form
/// `Exp( L/(L-1) * 1/(1-y') * (sum_{[a,b] not in S} y_[a,b] - L^{-1/2} sum_{[a,b] in S} y_[a,b]) )`
/// with `S = {a in I3, b not in I2} u {a not in I3, b in I2}`.
pub fn n_sigma_closed(q: &SpecialQuiver, cap: u32) -> Result<MotiveSeries> {
    let n = q.n();
    let s = q.sets();
    let base = l_over_l_minus_one();
    let odd = -(&base * &MotiveRat::v_pow(-1));
    let mut arg = MotiveSeries::zero_y(n, cap);
    for a in 0..n {
        for b in 0..n {
            let in_s = s.i3.contains(&a) != s.i2.contains(&b);
            let c = if in_s { &odd } else { &base };
            let r = (b + n - a) % n;
            for m in 0.. {
                let mut exp = vec![m as u32; n];
                for p in 0..=r {
                    exp[(a + p) % n] += 1;
                }
                if exp.iter().sum::<u32>() > cap {
                    break;
                }
                arg.add_term(exp, c.clone());
            }
        }
    }
    arg.plethystic_exp()
}

/// `I^sigma(y) = Exp(L y / (1 - y))` in one variable.
pub fn i_sigma_closed(cap: u32) -> Result<MotiveSeries> {
    let mut arg = MotiveSeries::zero_y(1, cap);
    for m in 1..=cap {
        arg.add_term(vec![m], MotiveRat::l_pow(1));
    }
    arg.plethystic_exp()
}

/// `I^sigma(y')` with `y' = y_0 ... y_{N-1}`.
pub fn i_sigma_of_cycle(n: usize, cap: u32) -> Result<MotiveSeries> {
    let i = i_sigma_closed(cap / n as u32)?;
    let mut out = MotiveSeries::zero_y(n, cap);
    for (e, c) in i.terms() {
        out.add_term(vec![e[0]; n], c.clone());
    }
    Ok(out)
}

/// Outcome of comparing the universal series of the special partition with
/// its factorization and with the partition sum.
#[derive(Clone, Debug)]
pub struct FactorizationCheck {
    pub cap: u32,
    /// First `y`-exponent where `A_U` and `I^sigma(y') N^sigma(y)` differ.
    pub universal_mismatch: Option<Vec<u32>>,
    /// First `y`-exponent where the partition sum and the closed `N^sigma` differ.
    pub partition_mismatch: Option<Vec<u32>>,
}

impl FactorizationCheck {
    pub fn passed(&self) -> bool {
        self.universal_mismatch.is_none() && self.partition_mismatch.is_none()
    }
}

pub fn verify_factorization(sigma: &SigmaPartition, cap: u32) -> Result<FactorizationCheck> {
    let q = SpecialQuiver::new(sigma)?;
    let n = q.n();
    let closed = n_sigma_closed(&q, cap)?;
    let product = i_sigma_of_cycle(n, cap)?.mul(&closed);
    let universal = universal_series(sigma, cap);
    let sum = n_sigma_via_partitions(&q, cap, DifferenceSource::LinearAlgebra);
    Ok(FactorizationCheck {
        cap,
        universal_mismatch: universal.first_difference(&product),
        partition_mismatch: sum.first_difference(&closed),
    })
}

/// `sum_pi w(pi) a^{l(pi)} t^{|pi| - l(pi)}` over partitions with at most
/// `cap` boxes, in the variables `(a, t)`.
pub fn partition_series(cap: u32, weight: impl Fn(&super::Partition) -> MotiveRat) -> MotiveSeries {
    let mut out = MotiveSeries::zero(vec!["a".into(), "t".into()], vec![1, 1], cap);
    for p in partitions_up_to(cap) {
        let l = p.length();
        out.add_term(vec![l, p.size() - l], weight(&p));
    }
    out
}

/// `Exp(c * a / (1 - t))` in the variables `(a, t)`.
pub fn geometric_exp(c: &MotiveRat, cap: u32) -> Result<MotiveSeries> {
    let mut arg = MotiveSeries::zero(vec!["a".into(), "t".into()], vec![1, 1], cap);
    for k in 0..cap {
        arg.add_term(vec![1, k], c.clone());
    }
    arg.plethystic_exp()
}

/// The two partition identities behind the `f` and `g` weights: returns the
/// first mismatching exponent, if any.
pub fn check_partition_identities(cap: u32) -> Result<[Option<Vec<u32>>; 2]> {
    let f_closed = geometric_exp(&l_over_l_minus_one(), cap)?;
    let g_coeff = -(&l_over_l_minus_one() * &MotiveRat::v_pow(-1));
    let g_closed = geometric_exp(&g_coeff, cap)?;
    let f_sum = partition_series(cap, |p| p.f_weight());
    let g_sum = partition_series(cap, |p| p.g_weight());
    Ok([f_sum.first_difference(&f_closed), g_sum.first_difference(&g_closed)])
}

/// The coefficient of `y^alpha` in `N^sigma` as a sum over the tuples of
/// that dimension vector; handy for spot checks.
pub fn n_sigma_coefficient(q: &SpecialQuiver, alpha: &[u32]) -> MotiveRat {
    let cap: u32 = alpha.iter().sum();
    n_sigma_via_partitions(q, cap, DifferenceSource::LinearAlgebra).coeff(alpha)
}
