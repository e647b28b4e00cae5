//! Builders for the closed-form generating series.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::motive::{gl_order, MotiveRat, VPolynomial};
use crate::quiver::SigmaPartition;
use crate::roots::{positive_roots, Root, RootKind, StabilityParam};
use crate::scalar::Coefficient;
use crate::Rational;

type MSeries = TruncatedSeries<MotiveRat>;

fn l_minus_one() -> VPolynomial {
    VPolynomial::from_terms([(2, 1), (0, -1)])
}

/// The plethystic argument `c` with `A^alpha = Exp(c y^alpha)`.
///
/// Real odd: `-L^(-1/2) / (1 - L^-1)`; real even: `1 / (1 - L^-1)`;
/// imaginary: `(N - 1 + L) / (1 - L^-1)`.
pub fn root_coefficient(kind: RootKind, n_vertices: usize) -> MotiveRat {
    let num = match kind {
        RootKind::RealOdd => VPolynomial::monomial(1, -1),
        RootKind::RealEven => VPolynomial::monomial(2, 1),
        RootKind::Imaginary => {
            VPolynomial::from_terms([(4, 1), (2, n_vertices as i64 - 1)])
        }
    };
    MotiveRat::new(num, l_minus_one()).expect("nonzero denominator")
}

/// `A^alpha(y)` truncated at total degree `cap`.
pub fn root_factor(root: &Root, cap: u32) -> MSeries {
    let n = root.coords.len();
    MSeries::zero_y(n, cap)
        .with_term(root.coords.clone(), root_coefficient(root.kind, n))
        .plethystic_exp()
        .expect("zero constant term")
}

/// The universal series `A_U^sigma = prod_alpha A^alpha` up to degree `cap`.
///
/// Computed as a single plethystic exponential of the sum of the root terms,
/// which equals the product of the factors because `Exp` is exponential.
pub fn universal_series(sigma: &SigmaPartition, cap: u32) -> MSeries {
    let n = sigma.n();
    let mut arg = MSeries::zero_y(n, cap);
    for r in positive_roots(sigma, cap) {
        arg.add_term(r.coords.clone(), root_coefficient(r.kind, n));
    }
    arg.plethystic_exp().expect("zero constant term")
}

/// Product of [`root_factor`] over the given roots, multiplied in parallel.
pub fn product_of_factors(n: usize, roots: &[Root], cap: u32) -> MSeries {
    roots
        .par_iter()
        .map(|r| root_factor(r, cap))
        .reduce(|| MSeries::one_y(n, cap), |a, b| a.mul(&b))
}

/// `E(y) = sum_n (-v)^{n^2} / [GL_n] y^n` in one variable.
pub fn quantum_exp_e(cap: u32) -> MSeries {
    let mut out = MSeries::zero_y(1, cap);
    for k in 0..=cap {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let num = VPolynomial::monomial((k * k) as i64, sign);
        out.add_term(vec![k], MotiveRat::new(num, gl_order(k)).expect("nonzero"));
    }
    out
}

/// `Z_alpha(y) = A^alpha(-v y0, ...) / A^alpha(-v^-1 y0, ...)`.
pub fn z_alpha(root: &Root, cap: u32) -> MSeries {
    let n = root.coords.len();
    let a = root_factor(root, cap);
    let mut up = vec![MotiveRat::one(); n];
    let mut down = vec![MotiveRat::one(); n];
    up[0] = -MotiveRat::v_pow(1);
    down[0] = -MotiveRat::v_pow(-1);
    a.scale_variables(&up)
        .div(&a.scale_variables(&down))
        .expect("constant term 1")
}

/// `(1 - c y^alpha)^k` in the variables of `like`.
fn binomial_factor(like: &MSeries, exp: &[u32], c: MotiveRat, k: i64) -> MSeries {
    like.one_like()
        .with_term(exp.to_vec(), -c)
        .powi(k)
        .expect("constant term 1")
}

/// The finite product for `Z_alpha(-y0, ...)`, i.e. with the sign `(-1)^{alpha_0}`
/// absorbed into the monomial.
pub fn z_alpha_closed(root: &Root, cap: u32) -> MSeries {
    let n = root.coords.len();
    let a0 = root.coords[0] as i64;
    let like = MSeries::one_y(n, cap);
    let mut out = like.clone();
    let e = &root.coords;
    for i in 0..a0 {
        let f = |shift: i64, k: i64| {
            binomial_factor(&like, e, MotiveRat::v_pow(-a0 + shift + 2 * i), k)
        };
        out = match root.kind {
            RootKind::RealOdd => out.mul(&f(1, 1)),
            RootKind::RealEven => out.mul(&f(2, -1)),
            RootKind::Imaginary => out.mul(&f(2, 1 - n as i64)).mul(&f(4, -1)),
        };
    }
    out
}

/// Substitutes `y0 -> -y0`.
pub fn negate_y0(s: &MSeries) -> MSeries {
    let mut f = vec![MotiveRat::one(); s.nvars()];
    f[0] = -MotiveRat::one();
    s.scale_variables(&f)
}

/// Framed series `Z_zeta = prod_{zeta . alpha < 0} Z_alpha` up to degree `cap`.
pub fn z_zeta(sigma: &SigmaPartition, zeta: &StabilityParam, cap: u32) -> Result<MSeries> {
    if zeta.n() != sigma.n() {
        return Err(Error::LengthMismatch {
            expected: sigma.n(),
            got: zeta.n(),
        });
    }
    let roots = positive_roots(sigma, cap);
    zeta.check_generic(&roots)?;
    let chosen: Vec<&Root> = roots.iter().filter(|r| zeta.is_negative(&r.coords)).collect();
    let n = sigma.n();
    Ok(chosen
        .par_iter()
        .map(|r| z_alpha(r, cap))
        .reduce(|| MSeries::one_y(n, cap), |a, b| a.mul(&b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveSeries {
    Dt,
    Pt,
    ZeroDim,
}

/// Variables `s, T1, ..., T{N-1}` with weights `N, 1, ..., 1`.
pub fn curve_variables(n: usize) -> (Vec<String>, Vec<u32>) {
    let mut vars = vec!["s".to_string()];
    let mut weights = vec![n as u32];
    for i in 1..n {
        vars.push(format!("T{i}"));
        weights.push(1);
    }
    (vars, weights)
}

/// `y^beta -> s^{beta_0} prod_i T_i^{beta_i - beta_0}`.
pub fn to_curve_monomial(beta: &[u32]) -> Result<Vec<u32>> {
    let b0 = beta[0];
    let mut out = vec![b0];
    for &b in &beta[1..] {
        if b < b0 {
            return Err(Error::NotCurveMonomial(beta.to_vec()));
        }
        out.push(b - b0);
    }
    Ok(out)
}

/// Rewrites a `y`-series in the point/curve variables; the cap keeps counting
/// total `y`-degree.
pub fn to_curve_variables(s: &MSeries) -> Result<MSeries> {
    let (vars, weights) = curve_variables(s.nvars());
    s.change_variables(vars, weights, s.cap(), to_curve_monomial)
}

/// DT, PT or point series from the closed infinite products, truncated at
/// total `y`-degree `cap`.
pub fn dtpt_series(sigma: &SigmaPartition, which: CurveSeries, cap: u32) -> MSeries {
    let n = sigma.n();
    let (vars, weights) = curve_variables(n);
    let like = MSeries::zero(vars, weights, cap).one_like();
    let mut out = like.clone();
    let nn = n as u32;
    // (-s)^m T_[a,b] has y-degree N m + (b - a + 1)
    if which != CurveSeries::ZeroDim {
        for a in 1..n {
            for b in a..n {
                let c = (a..=b).filter(|&i| !sigma.is_loop(i)).count();
                let len = (b - a + 1) as u32;
                for m in 1..=cap / nn {
                    if nn * m + len > cap {
                        break;
                    }
                    let mut e = vec![0u32; n];
                    e[0] = m;
                    e[a..=b].iter_mut().for_each(|x| *x = 1);
                    out = out.mul(&curve_block(&like, &e, m, c % 2 == 1));
                }
            }
        }
    }
    if which != CurveSeries::Pt {
        for m in 1..=cap / nn {
            let mut e = vec![0u32; n];
            e[0] = m;
            out = out.mul(&imaginary_block(&like, &e, m, n));
        }
    }
    out
}

fn signed_power(m: u32, shift: i64) -> MotiveRat {
    // L^{shift/2} (-1)^m
    let sign = if m % 2 == 0 { 1 } else { -1 };
    MotiveRat::from_poly(VPolynomial::monomial(shift, sign))
}

fn curve_block(like: &MSeries, e: &[u32], m: u32, odd: bool) -> MSeries {
    let mut out = like.clone();
    let m_i = m as i64;
    for i in 0..m_i {
        out = if odd {
            out.mul(&binomial_factor(like, e, signed_power(m, -m_i + 1 + 2 * i), 1))
        } else {
            out.mul(&binomial_factor(like, e, signed_power(m, -m_i + 2 + 2 * i), -1))
        };
    }
    out
}

fn imaginary_block(like: &MSeries, e: &[u32], m: u32, n: usize) -> MSeries {
    let mut out = like.clone();
    let m_i = m as i64;
    for i in 0..m_i {
        out = out
            .mul(&binomial_factor(like, e, signed_power(m, -m_i + 2 + 2 * i), 1 - n as i64))
            .mul(&binomial_factor(like, e, signed_power(m, -m_i + 4 + 2 * i), -1));
    }
    out
}

/// The same series through the framed product at the DT or PT chamber,
/// followed by the change to point/curve variables.
pub fn dtpt_via_framed(sigma: &SigmaPartition, which: CurveSeries, cap: u32) -> Result<MSeries> {
    let n = sigma.n();
    let framed = match which {
        CurveSeries::Dt => z_zeta(sigma, &StabilityParam::dt(n), cap)?,
        CurveSeries::Pt => z_zeta(sigma, &StabilityParam::pt(n), cap)?,
        CurveSeries::ZeroDim => {
            let im: Vec<Root> = positive_roots(sigma, cap)
                .into_iter()
                .filter(|r| r.kind == RootKind::Imaginary)
                .collect();
            im.iter()
                .fold(MSeries::one_y(n, cap), |acc, r| acc.mul(&z_alpha(r, cap)))
        }
    };
    to_curve_variables(&framed)
}

/// `v -> 1`.
pub fn euler_specialize(s: &MSeries) -> Result<TruncatedSeries<Rational>> {
    let one = Rational::one();
    s.try_map_coeffs(|c| c.eval(&one))
}

/// `prod_{n >= 1} (1 - (-s)^n)^{-n N}` in the variable `s` of weight `N`.
pub fn macmahon_power(n: usize, cap: u32) -> TruncatedSeries<Rational> {
    let like = TruncatedSeries::<Rational>::zero(vec!["s".into()], vec![n as u32], cap).one_like();
    let mut out = like.clone();
    for m in 1..=cap / n as u32 {
        let sign = if m % 2 == 0 { -1 } else { 1 };
        let f = like
            .clone()
            .with_term(vec![m], Rational::from_i64(sign))
            .powi(-(m as i64) * n as i64)
            .expect("constant term 1");
        out = out.mul(&f);
    }
    out
}

/// Drops the `T` variables (sets them to zero) of a series in `s, T1, ...`.
pub fn restrict_to_points<C: Coefficient>(s: &TruncatedSeries<C>) -> TruncatedSeries<C> {
    let mut out = TruncatedSeries::zero(vec![s.vars()[0].clone()], vec![s.weights()[0]], s.cap());
    for (e, c) in s.terms() {
        if e[1..].iter().all(|x| x.is_zero()) {
            out.add_term(vec![e[0]], c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::positive_roots;

    fn rat(n: &[(i64, i64)], d: &[(i64, i64)]) -> MotiveRat {
        MotiveRat::new(
            VPolynomial::from_terms(n.iter().copied()),
            VPolynomial::from_terms(d.iter().copied()),
        )
        .unwrap()
    }

    fn conifold() -> SigmaPartition {
        SigmaPartition::parse(1, 1, "01").unwrap()
    }

    #[test]
    fn root_coefficients() {
        let d = [(2, 1), (0, -1)];
        assert_eq!(root_coefficient(RootKind::RealOdd, 2), rat(&[(1, -1)], &d));
        assert_eq!(root_coefficient(RootKind::RealEven, 2), rat(&[(2, 1)], &d));
        assert_eq!(
            root_coefficient(RootKind::Imaginary, 2),
            rat(&[(4, 1), (2, 1)], &d)
        );
        assert_eq!(root_coefficient(RootKind::Imaginary, 1), rat(&[(4, 1)], &d));
    }

    #[test]
    fn conifold_universal_coefficient() {
        let a = universal_series(&conifold(), 4);
        assert_eq!(a.constant_term(), MotiveRat::one());
        let l1 = VPolynomial::from_terms([(2, 1), (0, -1)]);
        let expect = MotiveRat::new(VPolynomial::v_pow(6), &l1 * &l1).unwrap();
        assert_eq!(a.coeff(&[1, 1]), expect);
    }

    #[test]
    fn universal_equals_product_of_factors() {
        for s in [conifold(), SigmaPartition::special(2, 1).unwrap()] {
            let roots = positive_roots(&s, 4);
            assert_eq!(universal_series(&s, 4), product_of_factors(s.n(), &roots, 4));
        }
    }

    #[test]
    fn c3_first_coefficient() {
        let s = SigmaPartition::parse(1, 0, "0").unwrap();
        let a = universal_series(&s, 3);
        assert_eq!(a.coeff(&[1]), rat(&[(4, 1)], &[(2, 1), (0, -1)]));
    }

    #[test]
    fn e_series_matches_odd_factor() {
        let e = quantum_exp_e(6);
        assert_eq!(e.coeff(&[1]), rat(&[(1, -1)], &[(2, 1), (0, -1)]));
        let odd = MSeries::zero_y(1, 6)
            .with_term(vec![1], root_coefficient(RootKind::RealOdd, 1))
            .plethystic_exp()
            .unwrap();
        assert_eq!(e, odd);
        // v^4 / ((v^4 - 1)(v^4 - v^2))
        assert_eq!(
            e.coeff(&[2]),
            rat(&[(4, 1)], &[(8, 1), (6, -1), (4, -1), (2, 1)])
        );
    }

    #[test]
    fn z_alpha_small_cases() {
        let s = conifold();
        let r = Root::from_coords(&s, &[1, 0]).unwrap();
        // odd, alpha_0 = 1: Z(-y0) = 1 - y^alpha
        let z = negate_y0(&z_alpha(&r, 4));
        assert_eq!(z, MSeries::one_y(2, 4).with_term(vec![1, 0], -MotiveRat::one()));
        let r = Root::from_coords(&s, &[0, 1]).unwrap();
        assert_eq!(z_alpha(&r, 4), MSeries::one_y(2, 4));
        let s20 = SigmaPartition::parse(2, 0, "00").unwrap();
        let r = Root::from_coords(&s20, &[1, 0]).unwrap();
        let z = negate_y0(&z_alpha(&r, 3));
        // (1 - v y)^-1
        assert_eq!(z.coeff(&[2, 0]), MotiveRat::v_pow(2));
        assert_eq!(z, z_alpha_closed(&r, 3));
    }

    #[test]
    fn z_alpha_is_laurent() {
        let s = SigmaPartition::special(2, 1).unwrap();
        for r in positive_roots(&s, 6) {
            let z = z_alpha(&r, 6);
            assert!(z.terms().all(|(_, c)| c.is_laurent()), "{r:?}");
            assert_eq!(negate_y0(&z), z_alpha_closed(&r, 6), "{r:?}");
        }
    }

    #[test]
    fn points_series_first_coefficient() {
        let z = dtpt_series(&conifold(), CurveSeries::ZeroDim, 4);
        let expect = MotiveRat::from_poly(VPolynomial::from_terms([(1, -1), (3, -1)]));
        assert_eq!(z.coeff(&[1, 0]), expect);
        let e = euler_specialize(&z).unwrap();
        assert_eq!(e.coeff(&[1, 0]), Rational::from_i64(-2));
    }

    #[test]
    fn dt_is_points_times_pt() {
        let s = SigmaPartition::special(2, 1).unwrap();
        let dt = dtpt_series(&s, CurveSeries::Dt, 6);
        let pt = dtpt_series(&s, CurveSeries::Pt, 6);
        let pts = dtpt_series(&s, CurveSeries::ZeroDim, 6);
        assert_eq!(dt, pts.mul(&pt));
        assert_eq!(restrict_to_points(&pt).len(), 1);
    }

    #[test]
    fn closed_products_match_framed_route() {
        for s in [conifold(), SigmaPartition::special(2, 1).unwrap()] {
            for which in [CurveSeries::Dt, CurveSeries::Pt, CurveSeries::ZeroDim] {
                assert_eq!(
                    dtpt_series(&s, which, 6),
                    dtpt_via_framed(&s, which, 6).unwrap(),
                    "{s} {which:?}"
                );
            }
        }
    }

    #[test]
    fn ncdt_and_empty_chambers() {
        let s = conifold();
        let all = z_zeta(&s, &StabilityParam::ncdt(2), 4).unwrap();
        let roots = positive_roots(&s, 4);
        let expect = roots
            .iter()
            .fold(MSeries::one_y(2, 4), |acc, r| acc.mul(&z_alpha(r, 4)));
        assert_eq!(all, expect);
        let pos = StabilityParam::from_ints(&[1, 1], &[0, 0]).unwrap();
        assert_eq!(z_zeta(&s, &pos, 4).unwrap(), MSeries::one_y(2, 4));
        let bad = StabilityParam::from_ints(&[1, -1], &[0, 0]).unwrap();
        assert_eq!(
            z_zeta(&s, &bad, 4),
            Err(Error::NotGeneric { root: vec![1, 1] })
        );
    }

    #[test]
    fn specialization_at_one_needs_no_pole() {
        let a = universal_series(&conifold(), 2);
        assert_eq!(euler_specialize(&a), Err(Error::Pole));
    }
}
