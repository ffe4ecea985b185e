//! Small integer-matrix helpers. Matrices are lists of rows.

use itertools::Itertools;
use num_integer::Integer;

use crate::linalg::{Field, Matrix};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    Matrix::from_i64_rows(Field::Rational, m).map_or(0, |x| x.rank())
}

/// Gcd of all maximal minors of a tall matrix (`rows >= cols`); 1 iff the columns span a saturated sublattice.
pub fn maximal_minor_gcd(m: &[Vec<i64>]) -> i64 {
    let cols = m.first().map_or(0, Vec::len);
    (0..m.len())
        .combinations(cols)
        .map(|rows| det_i64(&rows.iter().map(|&i| m[i].clone()).collect::<Vec<_>>()))
        .fold(0i64, |g, d| g.gcd(&d))
}

/// Z-basis of `{x ∈ Z^cols : m·x = 0}` by unimodular column reduction.
pub fn integer_kernel(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let rows = m.len();
    // Columns of [m; I] as vectors of length rows + cols.
    let mut work: Vec<Vec<i64>> = (0..cols)
        .map(|j| {
            let mut v: Vec<i64> = m.iter().map(|r| r[j]).collect();
            v.extend((0..cols).map(|k| i64::from(k == j)));
            v
        })
        .collect();
    let mut pivot = 0;
    for i in 0..rows {
        loop {
            let best = (pivot..cols).filter(|&j| work[j][i] != 0).min_by_key(|&j| work[j][i].abs());
            let Some(b) = best else { break };
            work.swap(pivot, b);
            let mut done = true;
            for j in pivot + 1..cols {
                if work[j][i] != 0 {
                    let q = Integer::div_floor(&work[j][i], &work[pivot][i]);
                    for k in 0..rows + cols {
                        work[j][k] -= q * work[pivot][k];
                    }
                    if work[j][i] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
        if pivot == cols {
            break;
        }
    }
    work[pivot..].iter().map(|v| v[rows..].to_vec()).collect()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    if det_i64(m).abs() != 1 {
        return None;
    }
    let inv = Matrix::from_i64_rows(Field::Rational, m).ok()?.inverse()?;
    let n = m.len();
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let r = inv.get(i, j).as_rational()?;
            if !r.is_integer() {
                return None;
            }
            *x = i64::try_from(r.to_integer()).ok()?;
        }
    }
    Some(out)
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(det_i64(&[vec![2, 1], vec![7, 4]]), 1);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    }

    #[test]
    fn kernel_is_annihilated_and_saturated() {
        let m = vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]];
        let k = integer_kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &m {
                assert_eq!(r.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
        let t: Vec<Vec<i64>> = (0..4).map(|i| k.iter().map(|v| v[i]).collect()).collect();
        assert_eq!(maximal_minor_gcd(&t), 1);
    }

    #[test]
    fn torsion_detected() {
        assert_eq!(maximal_minor_gcd(&[vec![2], vec![4]]), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![1, 0], vec![-2, 1]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(mat_mul_i64(&m, &inv), vec![vec![1, 0], vec![0, 1]]);
    }
}
