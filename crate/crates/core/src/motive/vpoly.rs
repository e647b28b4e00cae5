use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in `v` with integer coefficients.
///
/// Stored densely as `v^low * (c[0] + c[1] v + ...)`. The zero polynomial has
/// no coefficients; otherwise the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl VPolynomial {
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        Self::from_dense(exp, vec![c.into()])
    }

    /// The variable `v` itself.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::default();
        }
        coeffs.drain(..lead_zeros);
        VPolynomial {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn max_exp(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.low == 0 && self.coeffs.len() == 1)
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        VPolynomial {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Substitutes `v -> v^n`.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operation needs n >= 1");
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let n = n as usize;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        VPolynomial {
            low: self.low * n as i64,
            coeffs,
        }
    }

    /// Substitutes `v -> -v`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.low + i as i64) % 2 != 0 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        Self::from_dense(self.low, coeffs)
    }

    /// True when every exponent is even.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        // Horner on the dense part, then the v^low factor.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc * rational_pow(x, self.low)
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Integer-coefficient polynomial part after removing the `v^low` factor.
    pub(crate) fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn from_parts(low: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_dense(low, coeffs)
    }

    /// gcd over `Q[v]` of the polynomial parts (ignoring powers of `v`),
    /// normalized to be primitive with positive leading coefficient.
    pub fn gcd_poly(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().with_low(0);
        }
        if other.is_zero() {
            return self.primitive_part().with_low(0);
        }
        let g = dense_gcd(&self.coeffs, &other.coeffs);
        Self::from_dense(0, g)
    }

    fn with_low(mut self, low: i64) -> Self {
        if !self.is_zero() {
            self.low = low;
        }
        self
    }

    /// Divides by its content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Exact quotient over the integers, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = dense_div_exact(&self.coeffs, &d.coeffs)?;
        Some(Self::from_dense(self.low - d.low, q))
    }

    /// Expansion of `self / d` at `v = infinity`, keeping exponents `>= lowest`.
    ///
    /// The leading coefficient of `d` must be `1` or `-1`.
    pub fn div_at_infinity(&self, d: &Self, lowest: i64) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = d.leading_coeff();
        if !lc.abs().is_one() {
            return Err(Error::Invalid(
                "expansion at infinity needs a unit leading coefficient".into(),
            ));
        }
        let mut rem: std::collections::BTreeMap<i64, BigInt> =
            self.terms().map(|(e, c)| (e, c.clone())).collect();
        let dmax = d.max_exp();
        let mut out = Vec::new();
        while let Some((&top, _)) = rem.iter().next_back() {
            let qe = top - dmax;
            if qe < lowest {
                break;
            }
            let c = rem.remove(&top).unwrap();
            let q = &c * &lc; // lc = +-1 so this is c / lc
            for (e, dc) in d.terms() {
                if e == dmax {
                    continue;
                }
                let slot = rem.entry(qe + e).or_insert_with(BigInt::zero);
                *slot -= &q * dc;
                if slot.is_zero() {
                    rem.remove(&(qe + e));
                }
            }
            out.push((qe, q));
        }
        Ok(Self::from_terms(out))
    }
}

pub(crate) fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn dense_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn dense_primitive(a: &[BigInt]) -> Vec<BigInt> {
    let mut c = dense_content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

/// Pseudo-remainder of `a` by `b` (ascending coefficient vectors).
fn dense_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let n = b.len() - 1;
    let lb = &b[n];
    while r.len() > n && !r.is_empty() {
        let m = r.len() - 1;
        let lr = r[m].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[m - n + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (dense_primitive(a), dense_primitive(b))
    } else {
        (dense_primitive(b), dense_primitive(a))
    };
    loop {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = dense_prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        a = b;
        b = dense_primitive(&r);
    }
}

fn dense_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < d.len() {
        return None;
    }
    let n = d.len() - 1;
    let ld = &d[n];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - n];
    for k in (0..q.len()).rev() {
        let top = &r[k + n];
        if top.is_zero() {
            continue;
        }
        let (qc, rem) = top.div_rem(ld);
        if !rem.is_zero() {
            return None;
        }
        for (i, dc) in d.iter().enumerate() {
            r[k + i] -= &qc * dc;
        }
        q[k] = qc;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

impl Zero for VPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for VPolynomial {
    fn one() -> Self {
        Self::monomial(0, 1)
    }
}

impl From<i64> for VPolynomial {
    fn from(c: i64) -> Self {
        Self::monomial(0, c)
    }
}

impl<'a> Add<&'a VPolynomial> for &'a VPolynomial {
    type Output = VPolynomial;
    fn add(self, rhs: &VPolynomial) -> VPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().max(rhs.max_exp());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        VPolynomial::from_dense(low, coeffs)
    }
}

impl<'a> Sub<&'a VPolynomial> for &'a VPolynomial {
    type Output = VPolynomial;
    fn sub(self, rhs: &VPolynomial) -> VPolynomial {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a VPolynomial> for &'a VPolynomial {
    type Output = VPolynomial;
    fn mul(self, rhs: &VPolynomial) -> VPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return VPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        VPolynomial::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &VPolynomial {
    type Output = VPolynomial;
    fn neg(self) -> VPolynomial {
        VPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for VPolynomial {
            type Output = VPolynomial;
            fn $m(self, rhs: VPolynomial) -> VPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for VPolynomial {
    type Output = VPolynomial;
    fn neg(self) -> VPolynomial {
        -&self
    }
}

/// Formats a power of `v` as a power of `L = v^2`.
pub(crate) fn fmt_l_power(e: i64) -> String {
    match e {
        2 => "L".to_string(),
        _ if e % 2 == 0 => format!("L^{}", e / 2),
        _ => format!("L^({}/2)", e),
    }
}

impl fmt::Display for VPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (i, (e, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_l_power(*e))?;
            } else {
                write!(f, "{abs}*{}", fmt_l_power(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VPolynomial({self})")
    }
}

/// `prod_{i<n} (v^{2n} - v^{2i})`, the number of points of `GL_n` with `L = v^2`.
pub fn gl_order(n: u32) -> VPolynomial {
    let n = n as i64;
    (0..n).fold(VPolynomial::one(), |acc, i| {
        &acc * &VPolynomial::from_terms([(2 * n, 1), (2 * i, -1)])
    })
}
