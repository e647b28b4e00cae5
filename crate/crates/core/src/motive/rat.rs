use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::vpoly::{rational_pow, VPolynomial};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Exact element of `Q(v)`, `v = L^(1/2)`, in canonical form.
///
/// Canonical form: numerator and denominator are coprime, the denominator has
/// a nonzero constant term (powers of `v` live in the numerator), a positive
/// leading coefficient, and the pair has joint integer content 1. Zero is
/// `0/1`. Structural equality is therefore equality in `Q(v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MotiveRat {
    num: VPolynomial,
    den: VPolynomial,
}

impl MotiveRat {
    pub fn new(num: VPolynomial, den: VPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: VPolynomial, den: VPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // move v-powers of the denominator up
        let shift = den.min_exp();
        let num = num.shift(-shift);
        let den = den.shift(-shift);
        let g = num.gcd_poly(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.scale_div(&c);
            den = den.scale_div(&c);
        }
        MotiveRat { num, den }
    }

    pub fn from_poly(p: VPolynomial) -> Self {
        MotiveRat {
            num: p,
            den: VPolynomial::one(),
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_poly(VPolynomial::monomial(0, n))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::canonical(
            VPolynomial::monomial(0, q.numer().clone()),
            VPolynomial::monomial(0, q.denom().clone()),
        )
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::from_poly(VPolynomial::v_pow(e))
    }

    /// `L^k = v^{2k}`.
    pub fn l_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    pub fn numer(&self) -> &VPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &VPolynomial {
        &self.den
    }

    /// True when the value is a Laurent polynomial in `v`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(Coefficient::pow(&base, e.unsigned_abs() as u32))
    }

    /// `v -> v^n`. Coprimality survives the substitution, so no gcd is needed.
    pub fn adams(&self, n: u32) -> Self {
        MotiveRat {
            num: self.num.adams(n),
            den: self.den.adams(n),
        }
    }

    /// `v -> -v`.
    pub fn negate_variable(&self) -> Self {
        Self::canonical(self.num.negate_variable(), self.den.negate_variable())
    }

    /// Exact value at a rational point `v = x`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Value with `L = v^2 := q`. Only defined when no odd power of `v` occurs.
    pub fn eval_even(&self, q: &BigRational) -> Result<BigRational> {
        if !self.num.is_even() || !self.den.is_even() {
            return Err(Error::OddPower);
        }
        let half = |p: &VPolynomial| -> BigRational {
            p.terms()
                .map(|(e, c)| BigRational::from_integer(c.clone()) * rational_pow(q, e / 2))
                .fold(BigRational::zero(), |a, b| a + b)
        };
        let d = half(&self.den);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(half(&self.num) / d)
    }

    /// Expansion at `v = infinity` as a Laurent polynomial, truncated below `lowest`.
    pub fn expand_at_infinity(&self, lowest: i64) -> Result<VPolynomial> {
        self.num.div_at_infinity(&self.den, lowest)
    }

    fn to_terms(p: &VPolynomial) -> Vec<(i64, String)> {
        p.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    fn from_terms(t: &[(i64, String)]) -> std::result::Result<VPolynomial, String> {
        let mut out = Vec::with_capacity(t.len());
        for (e, c) in t {
            let c: BigInt = c.parse().map_err(|_| format!("bad coefficient {c:?}"))?;
            out.push((*e, c));
        }
        Ok(VPolynomial::from_terms(out))
    }
}

/// `(-v)^{-d} x`, the virtual normalization for a space of dimension `d`.
pub fn vir_normalize(x: &MotiveRat, d: i64) -> MotiveRat {
    let sign = if d % 2 == 0 { 1 } else { -1 };
    x * &MotiveRat::from_poly(VPolynomial::monomial(-d, sign))
}

impl VPolynomial {
    fn scale_div(&self, c: &BigInt) -> VPolynomial {
        VPolynomial::from_parts(
            self.min_exp(),
            self.dense().iter().map(|x| x / c).collect(),
        )
    }
}

impl Default for MotiveRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for MotiveRat {
    fn zero() -> Self {
        MotiveRat {
            num: VPolynomial::zero(),
            den: VPolynomial::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for MotiveRat {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<VPolynomial> for MotiveRat {
    fn from(p: VPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for MotiveRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a MotiveRat> for &'a MotiveRat {
    type Output = MotiveRat;
    fn add(self, rhs: &MotiveRat) -> MotiveRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return MotiveRat::canonical(&self.num + &rhs.num, self.den.clone());
        }
        MotiveRat::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a MotiveRat> for &'a MotiveRat {
    type Output = MotiveRat;
    fn sub(self, rhs: &MotiveRat) -> MotiveRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MotiveRat> for &'a MotiveRat {
    type Output = MotiveRat;
    fn mul(self, rhs: &MotiveRat) -> MotiveRat {
        if self.is_zero() || rhs.is_zero() {
            return MotiveRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return MotiveRat::from_poly(&self.num * &rhs.num);
        }
        MotiveRat::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a MotiveRat> for &'a MotiveRat {
    type Output = MotiveRat;
    /// Panics on division by zero; use [`MotiveRat::try_div`] to handle it.
    fn div(self, rhs: &MotiveRat) -> MotiveRat {
        self.try_div(rhs).expect("division by zero MotiveRat")
    }
}

impl Neg for &MotiveRat {
    type Output = MotiveRat;
    fn neg(self) -> MotiveRat {
        MotiveRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for MotiveRat {
    type Output = MotiveRat;
    fn neg(self) -> MotiveRat {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for MotiveRat {
            type Output = MotiveRat;
            fn $m(self, rhs: MotiveRat) -> MotiveRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MotiveRat> for MotiveRat {
            type Output = MotiveRat;
            fn $m(self, rhs: &MotiveRat) -> MotiveRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<'a> AddAssign<&'a MotiveRat> for MotiveRat {
    fn add_assign(&mut self, rhs: &MotiveRat) {
        *self = &*self + rhs;
    }
}

impl<'a> SubAssign<&'a MotiveRat> for MotiveRat {
    fn sub_assign(&mut self, rhs: &MotiveRat) {
        *self = &*self - rhs;
    }
}

impl Coefficient for MotiveRat {
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }

    fn div_int(&self, n: i64) -> Self {
        MotiveRat::canonical(self.num.clone(), self.den.scale(&BigInt::from(n)))
    }

    fn adams(&self, n: u32) -> Self {
        MotiveRat::adams(self, n)
    }
}

impl fmt::Display for MotiveRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let n = if self.num.terms().count() > 1 {
            format!("({n})")
        } else {
            n
        };
        write!(f, "{n}/({})", self.den)
    }
}

impl fmt::Debug for MotiveRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotiveRat({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct MotiveRatRepr {
    num: Vec<(i64, String)>,
    den: Vec<(i64, String)>,
}

impl Serialize for MotiveRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MotiveRatRepr {
            num: Self::to_terms(&self.num),
            den: Self::to_terms(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MotiveRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = MotiveRatRepr::deserialize(d)?;
        let num = Self::from_terms(&r.num).map_err(D::Error::custom)?;
        let den = Self::from_terms(&r.den).map_err(D::Error::custom)?;
        MotiveRat::new(num, den).map_err(D::Error::custom)
    }
}
