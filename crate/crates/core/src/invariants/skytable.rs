use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{quiver_tensor, QuiverRep, WeightQuiver};
use crate::sheaves::{normalize_point, Recognition};

/// Largest `p^{d²}` searched by [`table_equivalence`].
pub const PGL_SEARCH_LIMIT: u64 = 1_000_000;

/// One entry of a skyscraper multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SkyEntry {
    Point(Vec<Scalar>),
    /// A sum of shifted simples, the outcome when the product in `A` vanishes.
    Decomposable,
}

impl fmt::Display for SkyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkyEntry::Point(a) => {
                write!(f, "[{}]", a.iter().map(Scalar::to_string).collect::<Vec<_>>().join(":"))
            }
            SkyEntry::Decomposable => write!(f, "dec"),
        }
    }
}

/// Row `i`, column `j` is `k([a_i]) ⋆ k([a_j])`, computed by the quiver tensor and recognition.
pub fn skyscraper_table(a: &Algebra, points: &[Vec<Scalar>]) -> Result<Vec<Vec<SkyEntry>>> {
    let quiver = Arc::new(WeightQuiver::algebra(a, a.dim())?);
    let reps = points
        .iter()
        .map(|p| {
            let p = normalize_point(p).ok_or_else(|| Error::InvalidSheaf("skyscraper at zero".into()))?;
            QuiverRep::point(quiver.clone(), &p)
        })
        .collect::<Result<Vec<_>>>()?;
    reps.par_iter()
        .map(|x| {
            reps.iter()
                .map(|y| {
                    let prod = quiver_tensor(x, y)?;
                    match Recognition::of(&prod) {
                        Recognition::Skyscraper(p) => Ok(SkyEntry::Point(p)),
                        Recognition::Simples(s) if !s.is_empty() => Ok(SkyEntry::Decomposable),
                        _ => Err(Error::Unsupported("skyscraper product not recognized".into())),
                    }
                })
                .collect()
        })
        .collect()
}

/// The table predicted directly from `μ_A`.
pub fn skyscraper_table_direct(a: &Algebra, points: &[Vec<Scalar>]) -> Result<Vec<Vec<SkyEntry>>> {
    points
        .iter()
        .map(|x| {
            points
                .iter()
                .map(|y| Ok(normalize_point(&a.multiply(x, y)?).map_or(SkyEntry::Decomposable, SkyEntry::Point)))
                .collect()
        })
        .collect()
}

/// Every point of `P^{d-1}(F_p)`, normalized, in lexicographic order.
pub fn projective_points(field: Field, d: usize) -> Result<Vec<Vec<Scalar>>> {
    let p = field.order().ok_or_else(|| Error::Unsupported("point enumeration needs a prime field".into()))?;
    let total = p.checked_pow(d as u32).filter(|&t| t <= PGL_SEARCH_LIMIT).ok_or_else(|| {
        Error::EnumerationBound(format!("{p}^{d} vectors exceed the bound {PGL_SEARCH_LIMIT}"))
    })?;
    let mut out = Vec::new();
    for mut n in 0..total {
        let mut v = vec![Scalar::zero(field); d];
        for slot in v.iter_mut().rev() {
            *slot = Scalar::from_i64(field, (n % p) as i64);
            n /= p;
        }
        if let Some(w) = normalize_point(&v) {
            if w == v {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Searches `PGL_d(F_p)` for `g` with `g·T₁(x, y) = T₂(g·x, g·y)` on all points, where
/// both tables are indexed by [`projective_points`]. Returns the first `g` in
/// lexicographic order of entries.
pub fn table_equivalence(
    field: Field,
    d: usize,
    t1: &[Vec<SkyEntry>],
    t2: &[Vec<SkyEntry>],
) -> Result<Option<Matrix>> {
    let p = field.order().ok_or_else(|| Error::Unsupported("search needs a prime field".into()))?;
    let total = p.checked_pow((d * d) as u32).filter(|&t| t <= PGL_SEARCH_LIMIT).ok_or_else(|| {
        Error::EnumerationBound(format!("{p}^{} matrices exceed the bound {PGL_SEARCH_LIMIT}", d * d))
    })?;
    let points = projective_points(field, d)?;
    let index: HashMap<Vec<Scalar>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let matrix = |mut n: u64| -> Matrix {
        let mut data = vec![Scalar::zero(field); d * d];
        for slot in data.iter_mut().rev() {
            *slot = Scalar::from_i64(field, (n % p) as i64);
            n /= p;
        }
        Matrix::new(field, d, d, data).expect("shape")
    };
    let act = |g: &Matrix, x: &[Scalar]| -> usize {
        let y = normalize_point(&g.apply(x).expect("shape")).expect("invertible");
        index[&y]
    };
    let found = (0..total).into_par_iter().find_first(|&n| {
        let g = matrix(n);
        if g.determinant().map_or(true, |det| det.is_zero()) {
            return false;
        }
        let image: Vec<usize> = points.iter().map(|x| act(&g, x)).collect();
        (0..points.len()).all(|i| {
            (0..points.len()).all(|j| match (&t1[i][j], &t2[image[i]][image[j]]) {
                (SkyEntry::Decomposable, SkyEntry::Decomposable) => true,
                (SkyEntry::Point(z), SkyEntry::Point(w)) => index[w] == act(&g, z),
                _ => false,
            })
        })
    });
    Ok(found.map(matrix))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_over_f3() {
        let f3 = Field::Prime(3);
        let a = Algebra::preset("k2", f3).unwrap();
        let pts = projective_points(f3, 2).unwrap();
        assert_eq!(pts.len(), 4);
        let t = skyscraper_table(&a, &pts).unwrap();
        assert_eq!(t, skyscraper_table_direct(&a, &pts).unwrap());
        let e0 = pts.iter().position(|p| p == &a.element(&[1, 0]).unwrap()).unwrap();
        let e1 = pts.iter().position(|p| p == &a.element(&[0, 1]).unwrap()).unwrap();
        let dec: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| t[i][j] == SkyEntry::Decomposable)
            .collect();
        assert_eq!(dec, {
            let mut v = vec![(e0, e1), (e1, e0)];
            v.sort();
            v
        });
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let a = Algebra::preset("dual2", Field::Rational).unwrap();
        let eps = a.element(&[0, 1]).unwrap();
        let t = skyscraper_table(&a, &[eps]).unwrap();
        assert_eq!(t[0][0], SkyEntry::Decomposable);
    }

    #[test]
    fn equivalence_search_separates_algebras() {
        let f3 = Field::Prime(3);
        let pts = projective_points(f3, 2).unwrap();
        let k2 = skyscraper_table_direct(&Algebra::preset("k2", f3).unwrap(), &pts).unwrap();
        let dual = skyscraper_table_direct(&Algebra::preset("dual2", f3).unwrap(), &pts).unwrap();
        assert!(table_equivalence(f3, 2, &k2, &dual).unwrap().is_none());
        assert!(table_equivalence(f3, 2, &k2, &k2).unwrap().is_some());
    }
}
