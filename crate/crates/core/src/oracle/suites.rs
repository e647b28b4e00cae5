//! Identity suites reported as [`CheckRecord`]s.

use std::time::Instant;

use super::nilpotent::SpecialQuiver;
use super::nsigma::verify_factorization;
use super::partitions::{partitions_of, PartitionTuple};
use super::verify::{CheckRecord, Status};
use crate::error::Result;
use crate::quiver::SigmaPartition;
use crate::roots::{positive_roots, simple_reflection, Root, RootKind, StabilityParam};
use crate::series::{check_e_product, check_root_factor_product, dtpt_series, dtpt_via_framed, CurveSeries};

fn record(check: &str, model: String, subject: String, expected: String, actual: String, ok: bool, start: Instant) -> CheckRecord {
    CheckRecord {
        check: check.into(),
        model,
        subject,
        prime: None,
        expected,
        actual,
        status: if ok { Status::Pass } else { Status::Fail },
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn mismatch_label(m: &Option<Vec<u32>>) -> String {
    match m {
        None => "equal".into(),
        Some(e) => format!("differs at {e:?}"),
    }
}

/// Dimension tables against linear algebra for block pairs with at most
/// `max_boxes` boxes, and the closed `T - B` for tuples with fewer boxes.
pub fn appendix(sigma: &SigmaPartition, max_boxes: u32) -> Result<Vec<CheckRecord>> {
    let q = SpecialQuiver::new(sigma)?;
    let n = q.n();
    let start = Instant::now();
    let (mut pairs, mut dims_bad, mut dif_bad) = (0usize, Vec::new(), Vec::new());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for s1 in 1..max_boxes {
                        for s2 in 1..=max_boxes - s1 {
                            for pi in partitions_of(s1) {
                                for rho in partitions_of(s2) {
                                    let (ab, cd) = ((a, b), (c, d));
                                    let (t, bd) = q.linear_algebra_dims(ab, cd, &pi, &rho);
                                    let tables = (q.t_dim(ab, cd, &pi, &rho) as usize, q.b_dim(ab, cd, &pi, &rho) as usize);
                                    let label = format!("[{a},{b}]{pi} [{c},{d}]{rho}");
                                    if (t, bd) != tables {
                                        dims_bad.push(label.clone());
                                    }
                                    if q.dif_table(ab, cd, &pi, &rho) != t as i64 - bd as i64 {
                                        dif_bad.push(label);
                                    }
                                    pairs += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = vec![
        record(
            "appendix-dims",
            sigma.to_string(),
            format!("{pairs} block pairs"),
            "tables".into(),
            dims_bad.first().map_or("equal".into(), |l| format!("{} mismatches, first {l}", dims_bad.len())),
            dims_bad.is_empty(),
            start,
        ),
        record(
            "appendix-dif",
            sigma.to_string(),
            format!("{pairs} block pairs"),
            "exceptional cases".into(),
            dif_bad.first().map_or("equal".into(), |l| format!("{} mismatches, first {l}", dif_bad.len())),
            dif_bad.is_empty(),
            start,
        ),
    ];
    let start = Instant::now();
    let mut bad = Vec::new();
    let tuples = PartitionTuple::all_up_to_boxes(n, max_boxes.saturating_sub(1));
    for t in &tuples {
        let (tt, bb) = q.tuple_dims(t);
        let la = 2 * (tt as i64 - bb as i64);
        if la != q.difference_doubled(t) || la != q.pairwise_difference_doubled(t) {
            bad.push(t.to_string());
        }
    }
    out.push(record(
        "appendix-difference",
        sigma.to_string(),
        format!("{} tuples", tuples.len()),
        "closed form".into(),
        bad.first().map_or("equal".into(), |l| format!("{} mismatches, first {l}", bad.len())),
        bad.is_empty(),
        start,
    ));
    Ok(out)
}

/// `A_U = I(y') N(y)` and the partition sum for `N`, to `degree`.
pub fn factorization(sigma: &SigmaPartition, degree: u32) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let c = verify_factorization(sigma, degree)?;
    Ok(vec![
        record(
            "factorization",
            sigma.to_string(),
            format!("degree {degree}"),
            "I(y') N(y)".into(),
            mismatch_label(&c.universal_mismatch),
            c.universal_mismatch.is_none(),
            start,
        ),
        record(
            "n-sigma-partitions",
            sigma.to_string(),
            format!("degree {degree}"),
            "closed N".into(),
            mismatch_label(&c.partition_mismatch),
            c.partition_mismatch.is_none(),
            start,
        ),
    ])
}

/// `Z_DT = Z_0 Z_PT`, and the closed products against the framed route.
pub fn dtpt(sigma: &SigmaPartition, degree: u32) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let dt = dtpt_via_framed(sigma, CurveSeries::Dt, degree)?;
    let pt = dtpt_via_framed(sigma, CurveSeries::Pt, degree)?;
    let pts = dtpt_via_framed(sigma, CurveSeries::ZeroDim, degree)?;
    let split = dt.first_difference(&pts.mul(&pt));
    let mut out = vec![record(
        "dt-points-pt",
        sigma.to_string(),
        format!("degree {degree}"),
        "Z_0 Z_PT".into(),
        mismatch_label(&split),
        split.is_none(),
        start,
    )];
    for (which, name) in [(CurveSeries::Dt, "dt"), (CurveSeries::Pt, "pt"), (CurveSeries::ZeroDim, "points")] {
        let start = Instant::now();
        let framed = dtpt_via_framed(sigma, which, degree)?;
        let m = dtpt_series(sigma, which, degree).first_difference(&framed);
        out.push(record(
            "closed-vs-framed",
            sigma.to_string(),
            format!("{name} degree {degree}"),
            "framed product".into(),
            mismatch_label(&m),
            m.is_none(),
            start,
        ));
    }
    Ok(out)
}

/// Sum and product forms of the root factors on `n` vertices and of `E(y)`.
pub fn qseries(n: usize, degree: u32, j_max: u32) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for kind in [RootKind::RealOdd, RootKind::RealEven, RootKind::Imaginary] {
        let start = Instant::now();
        let c = check_root_factor_product(kind, n, degree, j_max)?;
        out.push(record(
            "qseries",
            format!("N={n}"),
            format!("{kind:?} to y^{degree}, j <= {j_max}"),
            "product".into(),
            format!("mismatch {:?}, stable {}", c.mismatch, c.stable),
            c.passed(),
            start,
        ));
    }
    let start = Instant::now();
    let c = check_e_product(degree, j_max)?;
    out.push(record(
        "qseries",
        "E(y)".into(),
        format!("to y^{degree}, j <= {j_max}"),
        "product".into(),
        format!("mismatch {:?}, stable {}", c.mismatch, c.stable),
        c.passed(),
        start,
    ));
    Ok(out)
}

/// Reflections of the positive roots to `degree`, parity under flips, and
/// genericity of the DT and PT chambers.
pub fn reflection(sigma: &SigmaPartition, degree: u32) -> Vec<CheckRecord> {
    let n = sigma.n();
    let roots = positive_roots(sigma, degree);
    let mut out = Vec::new();
    for k in 0..n {
        let start = Instant::now();
        let flipped = sigma.flip(k).ok();
        let mut problems = Vec::new();
        for r in &roots {
            let a: Vec<i64> = r.coords.iter().map(|&x| x as i64).collect();
            let img = simple_reflection(k, &a);
            if simple_reflection(k, &img) != a {
                problems.push(format!("{a:?} not fixed by s_k^2"));
            }
            let is_ek = a.iter().enumerate().all(|(i, &x)| x == (i == k) as i64);
            if is_ek && n > 1 {
                continue;
            }
            let pos: Option<Vec<u32>> = img.iter().map(|&x| u32::try_from(x).ok()).collect();
            let Some(image) = pos.as_deref().and_then(|c| Root::from_coords(sigma, c)) else {
                problems.push(format!("s_k {a:?} = {img:?} not a positive root"));
                continue;
            };
            if let (Some(f), true) = (&flipped, r.is_real()) {
                let there = Root::from_coords(f, &image.coords).map(|x| x.kind);
                if there != Some(r.kind) {
                    problems.push(format!("parity of {a:?} changes"));
                }
            }
        }
        out.push(record(
            "reflection",
            sigma.to_string(),
            format!("s_{k} on {} roots to degree {degree}", roots.len()),
            "bijection, parity kept".into(),
            problems.first().cloned().unwrap_or_else(|| "ok".into()),
            problems.is_empty(),
            start,
        ));
    }
    for (name, zeta) in [("zeta_DT", StabilityParam::dt(n)), ("zeta_PT", StabilityParam::pt(n))] {
        let start = Instant::now();
        let hit = zeta.first_orthogonal(&roots).map(|r| r.coords.clone());
        out.push(record(
            "generic",
            sigma.to_string(),
            format!("{name} to degree {degree}"),
            "no orthogonal root".into(),
            hit.as_ref().map_or("ok".into(), |c| format!("orthogonal to {c:?}")),
            hit.is_none(),
            start,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_the_conifold() {
        let s = SigmaPartition::special(1, 1).unwrap();
        let mut all = appendix(&s, 3).unwrap();
        all.extend(factorization(&s, 3).unwrap());
        all.extend(dtpt(&s, 4).unwrap());
        all.extend(qseries(2, 4, 16).unwrap());
        all.extend(reflection(&s, 4));
        for r in &all {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn appendix_needs_the_special_partition() {
        let s = SigmaPartition::parse(1, 1, "01").unwrap();
        assert!(appendix(&s, 2).is_err());
    }
}
