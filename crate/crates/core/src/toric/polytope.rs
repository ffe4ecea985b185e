//! Lattice points of rational polyhedra `{m ∈ Z^d : A·m ≥ b}`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

fn dot_rational(row: &[i64], v: &[BigRational]) -> BigRational {
    row.iter()
        .zip(v)
        .fold(BigRational::zero(), |acc, (&a, x)| acc + x * BigRational::from(BigInt::from(a)))
}

fn submatrix(a: &[Vec<i64>], rows: &[usize]) -> Matrix {
    let picked: Vec<Vec<i64>> = rows.iter().map(|&i| a[i].clone()).collect();
    Matrix::from_i64_rows(Field::Rational, &picked).expect("rectangular")
}

fn to_rationals(v: &[Scalar]) -> Vec<BigRational> {
    v.iter().map(|s| s.as_rational().expect("rational field").clone()).collect()
}

/// Errors with [`Error::Unbounded`] if the recession cone `{A·v ≥ 0}` is nonzero.
pub fn check_bounded(a: &[Vec<i64>], dim: usize) -> Result<()> {
    if dim == 0 {
        return Ok(());
    }
    let full = if a.is_empty() { 0 } else { submatrix(a, &(0..a.len()).collect::<Vec<_>>()).rank() };
    if full < dim {
        return Err(Error::Unbounded("constraints do not determine a pointed region".into()));
    }
    // Extreme rays of a pointed cone lie on dim-1 independent tight constraints.
    for rows in (0..a.len()).combinations(dim - 1) {
        let kernel = if rows.is_empty() {
            vec![vec![Scalar::one(Field::Rational)]]
        } else {
            let (r, k) = submatrix(a, &rows).rank_and_kernel();
            if r != dim - 1 {
                continue;
            }
            k
        };
        let v = to_rationals(&kernel[0]);
        for sign in [1i64, -1] {
            let s = BigRational::from(BigInt::from(sign));
            if a.iter().all(|row| !(dot_rational(row, &v) * &s).is_negative()) {
                return Err(Error::Unbounded(format!("recession direction {v:?}")));
            }
        }
    }
    Ok(())
}

/// Vertices of the (pointed) polyhedron, without duplicates.
pub fn vertices(a: &[Vec<i64>], b: &[i64], dim: usize) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for rows in (0..a.len()).combinations(dim) {
        let m = submatrix(a, &rows);
        let rhs: Vec<Scalar> = rows.iter().map(|&i| Scalar::from_i64(Field::Rational, b[i])).collect();
        if m.rank() != dim {
            continue;
        }
        let Some(x) = m.solve(&rhs) else { continue };
        let x = to_rationals(&x);
        let feasible = a
            .iter()
            .zip(b)
            .all(|(row, &bi)| dot_rational(row, &x) >= BigRational::from(BigInt::from(bi)));
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// All lattice points, sorted lexicographically.
pub fn lattice_points(a: &[Vec<i64>], b: &[i64], dim: usize) -> Result<Vec<Vec<i64>>> {
    if dim == 0 {
        return Ok(if b.iter().all(|&x| x <= 0) { vec![Vec::new()] } else { Vec::new() });
    }
    check_bounded(a, dim)?;
    let verts = vertices(a, b, dim);
    if verts.is_empty() {
        return Ok(Vec::new());
    }
    let ranges: Vec<std::ops::RangeInclusive<i64>> = (0..dim)
        .map(|k| {
            let lo = verts.iter().map(|v| v[k].floor()).min().expect("nonempty");
            let hi = verts.iter().map(|v| v[k].ceil()).max().expect("nonempty");
            lo.to_integer().to_i64().expect("small")..=hi.to_integer().to_i64().expect("small")
        })
        .collect();
    let mut out: Vec<Vec<i64>> = ranges
        .into_iter()
        .multi_cartesian_product()
        .filter(|m| {
            a.iter()
                .zip(b)
                .all(|(row, &bi)| row.iter().zip(m).map(|(x, y)| x * y).sum::<i64>() >= bi)
        })
        .collect();
    out.sort();
    Ok(out)
}
