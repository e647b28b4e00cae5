//! Check records and the comparison of the product formula with point counts.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::count::CountProblem;
use crate::error::{Error, Result};
use crate::motive::{gl_order, MotiveRat, VPolynomial};
use crate::quiver::QuiverWithCut;
use crate::series::universal_series;
use crate::MotiveSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub model: String,
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub expected: String,
    pub actual: String,
    pub status: Status,
    pub elapsed_ms: u128,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{status} {} {} {}", self.check, self.model, self.subject)?;
        if let Some(p) = self.prime {
            write!(f, " p={p}")?;
        }
        write!(f, " expected={} actual={} ({} ms)", self.expected, self.actual, self.elapsed_ms)
    }
}

/// `A_alpha (-v)^{-(chi(alpha, alpha) + 2 d_C(alpha))} [GL_alpha]`, the class
/// the product formula predicts for `R(J_C, alpha)`.
pub fn predicted_class(q: &QuiverWithCut, universal: &MotiveSeries, alpha: &[u32]) -> Result<MotiveRat> {
    let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
    let shift = q.euler_form(&a, &a)? + 2 * q.d_cut(&a)?;
    let sign = if shift.rem_euclid(2) == 0 { 1 } else { -1 };
    let g = alpha.iter().fold(VPolynomial::one(), |acc, &k| &acc * &gl_order(k));
    Ok(universal.coeff(alpha) * MotiveRat::from_poly(VPolynomial::monomial(-shift, sign)) * MotiveRat::from_poly(g))
}

/// The predicted number of `F_p`-points, which must be an integer.
pub fn predicted_count(q: &QuiverWithCut, universal: &MotiveSeries, alpha: &[u32], p: u64) -> Result<BigInt> {
    let x = predicted_class(q, universal, alpha)?.eval_even(&BigRational::from_integer(p.into()))?;
    if !x.is_integer() {
        return Err(Error::Invalid(format!("non-integral prediction {x}")));
    }
    Ok(x.to_integer())
}

fn model_label(q: &QuiverWithCut) -> String {
    q.sigma().to_string()
}

fn alpha_label(alpha: &[u32]) -> String {
    let parts: Vec<String> = alpha.iter().map(|x| x.to_string()).collect();
    format!("alpha=({})", parts.join(","))
}

/// Compares the prediction with the brute-force count for one `alpha` and `p`.
pub fn theorem_a_check(
    q: &QuiverWithCut,
    universal: &MotiveSeries,
    alpha: &[u32],
    p: u64,
    budget: u64,
) -> CheckRecord {
    let start = Instant::now();
    let expected = predicted_count(q, universal, alpha, p);
    let actual = CountProblem::new(q, alpha).and_then(|c| c.count(p, budget));
    let (status, actual_s) = match (&expected, &actual) {
        (_, Err(Error::BudgetExceeded { estimate, .. })) => {
            (Status::Skipped, format!("search space {estimate:.3e} over budget"))
        }
        (Ok(e), Ok(a)) => (
            if *e == BigInt::from(*a) { Status::Pass } else { Status::Fail },
            a.to_string(),
        ),
        (_, Ok(a)) => (Status::Fail, a.to_string()),
        (_, Err(e)) => (Status::Fail, e.to_string()),
    };
    CheckRecord {
        check: "thm-a".into(),
        model: model_label(q),
        subject: alpha_label(alpha),
        prime: Some(p),
        expected: match expected {
            Ok(e) => e.to_string(),
            Err(e) => e.to_string(),
        },
        actual: actual_s,
        status,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// All `alpha` with `1 <= |alpha| <= max_degree` on `n` vertices.
pub fn dimension_vectors(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_degree, &mut Vec::new(), &mut out);
    out.sort_by_key(|a| a.iter().sum::<u32>());
    out
}

/// Runs [`theorem_a_check`] over all `alpha` up to `max_degree` and the given primes.
pub fn theorem_a_suite(q: &QuiverWithCut, max_degree: u32, primes: &[u64], budget: u64) -> Vec<CheckRecord> {
    let universal = universal_series(q.sigma(), max_degree);
    let mut out = Vec::new();
    for alpha in dimension_vectors(q.n(), max_degree) {
        for &p in primes {
            out.push(theorem_a_check(q, &universal, &alpha, p, budget));
        }
    }
    out
}
