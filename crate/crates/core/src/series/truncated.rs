use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

type Terms<C> = BTreeMap<Vec<u32>, C>;

/// Multivariate power series truncated above a weighted total degree.
///
/// Variable `i` has weight `weights[i] >= 1`; a monomial survives iff its
/// weighted degree is at most `cap`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    vars: Vec<String>,
    weights: Vec<u32>,
    cap: u32,
    terms: Terms<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(vars: Vec<String>, weights: Vec<u32>, cap: u32) -> Self {
        assert_eq!(vars.len(), weights.len(), "one weight per variable");
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        TruncatedSeries {
            vars,
            weights,
            cap,
            terms: Terms::new(),
        }
    }

    /// The zero series in `y0, ..., y{n-1}`, all of weight 1.
    pub fn zero_y(n: usize, cap: u32) -> Self {
        Self::zero((0..n).map(|i| format!("y{i}")).collect(), vec![1; n], cap)
    }

    /// A series with no terms but the same variables and cap as `self`.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.vars.clone(), self.weights.clone(), self.cap)
    }

    pub fn one_like(&self) -> Self {
        self.zero_like().with_term(vec![0; self.nvars()], C::one())
    }

    pub fn one_y(n: usize, cap: u32) -> Self {
        Self::zero_y(n, cap).one_like()
    }

    /// Adds `c * y^exp` (dropped if above the cap).
    pub fn with_term(mut self, exp: Vec<u32>, c: C) -> Self {
        self.add_term(exp, c);
        self
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: C) {
        assert_eq!(exp.len(), self.nvars(), "exponent length");
        if c.is_zero() || self.degree_of(&exp) > self.cap {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree_of(&self, exp: &[u32]) -> u32 {
        exp.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.vars == other.vars && self.weights == other.weights && self.cap == other.cap,
            "series shape mismatch: {:?}/{} vs {:?}/{}",
            self.vars,
            self.cap,
            other.vars,
            other.cap
        );
    }

    /// Same series with a smaller cap.
    pub fn truncate(&self, cap: u32) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.weights.clone(), cap.min(self.cap));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Self::from_terms_of(self, mul_terms(&self.terms, &other.terms, &self.weights, self.cap))
    }

    fn from_terms_of(like: &Self, terms: Terms<C>) -> Self {
        TruncatedSeries {
            vars: like.vars.clone(),
            weights: like.weights.clone(),
            cap: like.cap,
            terms,
        }
    }

    /// Homogeneous components by weighted degree, `0..=cap`.
    fn graded(&self) -> Vec<Terms<C>> {
        let mut out = vec![Terms::new(); self.cap as usize + 1];
        for (e, c) in &self.terms {
            out[self.degree_of(e) as usize].insert(e.clone(), c.clone());
        }
        out
    }

    fn from_graded(like: &Self, parts: Vec<Terms<C>>) -> Self {
        let mut terms = Terms::new();
        for p in parts {
            terms.extend(p);
        }
        Self::from_terms_of(like, terms)
    }

    fn require_constant(&self, one: bool) -> Result<()> {
        let c = self.constant_term();
        let ok = if one { c == C::one() } else { c.is_zero() };
        if ok {
            Ok(())
        } else {
            Err(Error::ConstantTerm {
                expected: if one { "1" } else { "0" },
            })
        }
    }

    /// Multiplicative inverse; the constant term must be 1.
    pub fn inverse(&self) -> Result<Self> {
        self.require_constant(true)?;
        let f = self.graded();
        let mut g: Vec<Terms<C>> = Vec::with_capacity(f.len());
        g.push(f[0].clone());
        for d in 1..f.len() {
            let mut acc = Terms::new();
            for j in 1..=d {
                accumulate(&mut acc, mul_terms(&f[j], &g[d - j], &self.weights, self.cap), true);
            }
            g.push(acc);
        }
        Ok(Self::from_graded(self, g))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self^k` for any integer `k`; negative powers need constant term 1.
    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// `exp(F)` for `F` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant(false)?;
        let f = self.graded();
        let mut g: Vec<Terms<C>> = Vec::with_capacity(f.len());
        g.push(BTreeMap::from([(vec![0; self.nvars()], C::one())]));
        for d in 1..f.len() {
            // d G_d = sum_j j F_j G_{d-j}
            let mut acc = Terms::new();
            for j in 1..=d {
                if f[j].is_empty() {
                    continue;
                }
                let prod = mul_terms(&f[j], &g[d - j], &self.weights, self.cap);
                accumulate(&mut acc, scale_terms(prod, &C::from_i64(j as i64)), false);
            }
            g.push(div_terms(acc, d as i64));
        }
        Ok(Self::from_graded(self, g))
    }

    /// `log(G)` for `G` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.require_constant(true)?;
        let g = self.graded();
        let mut l: Vec<Terms<C>> = Vec::with_capacity(g.len());
        l.push(Terms::new());
        for d in 1..g.len() {
            // d L_d = d G_d - sum_{j<d} j L_j G_{d-j}
            let mut acc = scale_terms(g[d].clone(), &C::from_i64(d as i64));
            for j in 1..d {
                if l[j].is_empty() {
                    continue;
                }
                let prod = mul_terms(&l[j], &g[d - j], &self.weights, self.cap);
                accumulate(&mut acc, scale_terms(prod, &C::from_i64(j as i64)), true);
            }
            l.push(div_terms(acc, d as i64));
        }
        Ok(Self::from_graded(self, l))
    }

    /// `psi_n`: Adams operation on coefficients and `y -> y^n`.
    pub fn adams(&self, n: u32) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let e2: Vec<u32> = e.iter().map(|x| x * n).collect();
            if out.degree_of(&e2) <= self.cap {
                out.add_term(e2, c.adams(n));
            }
        }
        out
    }

    /// Plethystic exponential `exp(sum_n psi_n(F) / n)`.
    pub fn plethystic_exp(&self) -> Result<Self> {
        self.require_constant(false)?;
        let mut arg = self.zero_like();
        for n in 1..=self.cap.max(1) {
            let p = self.adams(n);
            if p.is_zero() {
                continue;
            }
            for (e, c) in p.terms {
                arg.add_term(e, c.div_int(n as i64));
            }
        }
        arg.exp()
    }

    /// Inverse of [`plethystic_exp`](Self::plethystic_exp):
    /// `sum_n mu(n)/n psi_n(log G)`.
    pub fn plethystic_log(&self) -> Result<Self> {
        let l = self.log()?;
        let mut out = self.zero_like();
        for n in 1..=self.cap.max(1) {
            let mu = moebius(n);
            if mu == 0 {
                continue;
            }
            for (e, c) in l.adams(n).terms {
                out.add_term(e, c.div_int(n as i64 * mu));
            }
        }
        Ok(out)
    }

    /// Substitutes `y_i -> factors[i] * y_i`.
    pub fn scale_variables(&self, factors: &[C]) -> Self {
        assert_eq!(factors.len(), self.nvars());
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut k = c.clone();
            for (f, &x) in factors.iter().zip(e) {
                if x > 0 {
                    k = k * &f.pow(x);
                }
            }
            out.add_term(e.clone(), k);
        }
        out
    }

    /// Re-expresses every monomial through `f` in a series with new variables.
    pub fn change_variables<F>(&self, vars: Vec<String>, weights: Vec<u32>, cap: u32, f: F) -> Result<Self>
    where
        F: Fn(&[u32]) -> Result<Vec<u32>>,
    {
        let mut out = Self::zero(vars, weights, cap);
        for (e, c) in &self.terms {
            out.add_term(f(e)?, c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn try_map_coeffs<D: Coefficient, F>(&self, f: F) -> Result<TruncatedSeries<D>>
    where
        F: Fn(&C) -> Result<D>,
    {
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.weights.clone(), self.cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// First monomial (in term order) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Vec<u32>> {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|e| self.terms.get(*e) != other.terms.get(*e))
            .min()
            .cloned()
    }
}

fn mul_terms<C: Coefficient>(a: &Terms<C>, b: &Terms<C>, weights: &[u32], cap: u32) -> Terms<C> {
    let mut out = Terms::new();
    let deg = |e: &[u32]| -> u32 { e.iter().zip(weights).map(|(x, w)| x * w).sum() };
    for (ea, ca) in a {
        let da = deg(ea);
        if da > cap {
            continue;
        }
        for (eb, cb) in b {
            if da + deg(eb) > cap {
                continue;
            }
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let p = ca.clone() * cb;
            match out.get_mut(&e) {
                Some(x) => *x += &p,
                None => {
                    out.insert(e, p);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn accumulate<C: Coefficient>(acc: &mut Terms<C>, add: Terms<C>, negate: bool) {
    for (e, c) in add {
        let c = if negate { -c } else { c };
        match acc.get_mut(&e) {
            Some(x) => *x += &c,
            None => {
                acc.insert(e, c);
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

fn scale_terms<C: Coefficient>(mut t: Terms<C>, k: &C) -> Terms<C> {
    for c in t.values_mut() {
        *c = c.clone() * k;
    }
    t
}

fn div_terms<C: Coefficient>(mut t: Terms<C>, d: i64) -> Terms<C> {
    for c in t.values_mut() {
        *c = c.div_int(d);
    }
    t
}

pub(crate) fn moebius(mut n: u32) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

impl<C: Coefficient + fmt::Display> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (self.degree_of(e), std::cmp::Reverse((*e).clone())));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x > 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let cs = c.to_string();
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else {
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                write!(f, "{cs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("vars", &self.vars)
            .field("cap", &self.cap)
            .field("terms", &self.terms)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<C> {
    exp: Vec<u32>,
    coeff: C,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr<C> {
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<u32>>,
    cap: u32,
    terms: Vec<TermRepr<C>>,
}

impl<C: Coefficient + Serialize> Serialize for TruncatedSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let weights = (self.weights.iter().any(|&w| w != 1)).then(|| self.weights.clone());
        SeriesRepr {
            vars: self.vars.clone(),
            weights,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coefficient + Deserialize<'de>> Deserialize<'de> for TruncatedSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SeriesRepr::<C>::deserialize(d)?;
        let weights = r.weights.unwrap_or_else(|| vec![1; r.vars.len()]);
        if weights.len() != r.vars.len() || weights.contains(&0) {
            return Err(D::Error::custom("bad weights"));
        }
        let mut out = TruncatedSeries::zero(r.vars, weights, r.cap);
        for t in r.terms {
            if t.exp.len() != out.nvars() {
                return Err(D::Error::custom("exponent length"));
            }
            out.add_term(t.exp, t.coeff);
        }
        Ok(out)
    }
}
