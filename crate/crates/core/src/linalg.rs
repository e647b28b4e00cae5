//! Exact Gaussian elimination over a [`Field`].

use crate::scalar::Field;

/// Rank of a dense row-major matrix. Rows may have any common length.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one() / m[r][c].clone();
        for x in m[r][c..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                let t = f.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Dimension of the solution space of `A x = 0` with `ncols` unknowns.
pub fn nullity<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    ncols - rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;
    use num_rational::BigRational;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn rank_over_rationals() {
        assert_eq!(rank(&q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank::<BigRational>(&[]), 0);
        assert_eq!(nullity(&q(&[&[0, 0, 0]]), 3), 3);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let rows = [[1i64, 1], [1, -1]];
        let f2: Vec<Vec<Fp<2>>> = rows.iter().map(|r| r.iter().map(|&x| Fp::new(x)).collect()).collect();
        let f3: Vec<Vec<Fp<3>>> = rows.iter().map(|r| r.iter().map(|&x| Fp::new(x)).collect()).collect();
        assert_eq!(rank(&f2), 1);
        assert_eq!(rank(&f3), 2);
    }
}
