//! Direct expansion of the infinite products behind the root factors.
//!
//! The coefficients of the plethystic forms are rational in `v`; expanding
//! them at `v = infinity` gives Laurent series in `v^-1`. The products
//! `prod_{j >= 0}` are expanded with `j <= J`; factors with `j > J` only touch
//! exponents at most `-2J + 2 cap`, so everything above that floor is exact.
//! Agreement of the caps `J` and `J + 1` above the floor is checked as well.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::generating::{quantum_exp_e, root_coefficient};
use super::TruncatedSeries;
use crate::error::Result;
use crate::motive::{MotiveRat, VPolynomial};
use crate::roots::RootKind;

/// Coefficients of `y^0, ..., y^cap`, each a Laurent polynomial in `v`.
pub type VSeries = Vec<VPolynomial>;

fn drop_below(p: &VPolynomial, floor: i64) -> VPolynomial {
    VPolynomial::from_terms(p.terms().filter(|(e, _)| *e >= floor).map(|(e, c)| (e, c.clone())))
}

/// `(1 - v^e y)^k` up to `y^cap`, for any integer `k`.
pub fn binomial_expansion(e: i64, k: i64, cap: u32) -> VSeries {
    let mut out = Vec::with_capacity(cap as usize + 1);
    let mut binom = BigInt::one();
    for t in 0..=cap as i64 {
        if t > 0 {
            binom = binom * BigInt::from(k - t + 1) / BigInt::from(t);
        }
        let c = if t % 2 == 0 { binom.clone() } else { -binom.clone() };
        out.push(VPolynomial::monomial(e * t, c));
    }
    out
}

fn mul_capped(a: &VSeries, b: &VSeries, floor: i64) -> VSeries {
    let cap = a.len().min(b.len());
    let mut out = vec![VPolynomial::zero(); cap];
    for i in 0..cap {
        for j in 0..cap - i {
            if a[i].is_zero() || b[j].is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out.iter().map(|p| drop_below(p, floor)).collect()
}

/// `prod (1 - v^e y)^k` over `(e, k)` in `factors`, exponents below `floor` dropped.
pub fn capped_product(factors: &[(i64, i64)], cap: u32, floor: i64) -> VSeries {
    // keep a margin: later factors can raise an exponent by at most 2 per y
    let work = floor - 2 * cap as i64 - 2;
    let mut acc: VSeries = (0..=cap)
        .map(|t| if t == 0 { VPolynomial::one() } else { VPolynomial::zero() })
        .collect();
    for &(e, k) in factors {
        acc = mul_capped(&acc, &binomial_expansion(e, k, cap), work);
    }
    acc.iter().map(|p| drop_below(p, floor)).collect()
}

/// The factors `(v-exponent, power)` of the infinite product of a root type,
/// for `j = 0..=j_max`.
pub fn product_factors(kind: RootKind, n_vertices: usize, j_max: u32) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for j in 0..=j_max as i64 {
        match kind {
            RootKind::RealOdd => out.push((-2 * j - 1, 1)),
            RootKind::RealEven => out.push((-2 * j, -1)),
            RootKind::Imaginary => {
                out.push((-2 * j, 1 - n_vertices as i64));
                out.push((-2 * j + 2, -1));
            }
        }
    }
    out
}

/// Expansion at `v = infinity` of a one-variable series.
pub fn expand_at_infinity(s: &TruncatedSeries<MotiveRat>, floor: i64) -> Result<VSeries> {
    (0..=s.cap())
        .map(|t| s.coeff(&[t]).expand_at_infinity(floor))
        .collect()
}

/// Result of comparing a closed rational series with its product expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub floor: i64,
    /// First `y`-degree where the forms disagree, if any.
    pub mismatch: Option<u32>,
    /// Whether the products with `J` and `J + 1` factors agree above the floor.
    pub stable: bool,
}

impl ProductCheck {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none() && self.stable
    }
}

fn compare(closed: &VSeries, factors_j: &VSeries, factors_j1: &VSeries, floor: i64) -> ProductCheck {
    let mismatch = (0..closed.len()).find(|&t| closed[t] != factors_j[t]).map(|t| t as u32);
    ProductCheck {
        floor,
        mismatch,
        stable: factors_j == factors_j1,
    }
}

/// Compares `Exp(c y)` for a root type with `prod_{j <= j_max}` of its factors.
pub fn check_root_factor_product(
    kind: RootKind,
    n_vertices: usize,
    cap: u32,
    j_max: u32,
) -> Result<ProductCheck> {
    let floor = -2 * j_max as i64 + 2 * cap as i64 + 1;
    let closed = TruncatedSeries::zero_y(1, cap)
        .with_term(vec![1], root_coefficient(kind, n_vertices))
        .plethystic_exp()?;
    let closed = expand_at_infinity(&closed, floor)?;
    let p = capped_product(&product_factors(kind, n_vertices, j_max), cap, floor);
    let p1 = capped_product(&product_factors(kind, n_vertices, j_max + 1), cap, floor);
    Ok(compare(&closed, &p, &p1, floor))
}

/// Compares the sum form of `E(y)` with `prod_{j <= j_max} (1 - L^{-j-1/2} y)`.
pub fn check_e_product(cap: u32, j_max: u32) -> Result<ProductCheck> {
    let floor = -2 * j_max as i64 + 2 * cap as i64 + 1;
    let closed = expand_at_infinity(&quantum_exp_e(cap), floor)?;
    let f = |j| product_factors(RootKind::RealOdd, 1, j);
    let p = capped_product(&f(j_max), cap, floor);
    let p1 = capped_product(&f(j_max + 1), cap, floor);
    Ok(compare(&closed, &p, &p1, floor))
}
