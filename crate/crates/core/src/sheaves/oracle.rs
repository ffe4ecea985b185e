use std::collections::BTreeMap;

use super::cech::cech_cohomology;
use super::complex::LineBundleComplex;
use super::expr::SheafExpr;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// A named sheaf on `Pⁿ` as a complex of line bundles; skyscrapers use Koszul resolutions.
pub fn complex_of_expr(field: Field, n: usize, e: &SheafExpr) -> Result<LineBundleComplex> {
    match e {
        SheafExpr::LineBundle(d) => Ok(LineBundleComplex::line_bundle(field, vec![n], vec![*d])),
        SheafExpr::TwistedCotangentSimple(i) => {
            if *i > n {
                return Err(Error::InvalidSheaf(format!("Omega({i}) on P^{n}")));
            }
            Ok(LineBundleComplex::twisted_cotangent(field, n, *i)?.shift(*i as i64))
        }
        SheafExpr::Skyscraper(a) => {
            if a.len() != n + 1 {
                return Err(Error::InvalidSheaf(format!("point with {} coordinates on P^{n}", a.len())));
            }
            LineBundleComplex::skyscraper_resolution(a)
        }
        SheafExpr::Shift(k, e) => Ok(complex_of_expr(field, n, e)?.shift(*k)),
        SheafExpr::Sum(a, b) => complex_of_expr(field, n, a)?.direct_sum(&complex_of_expr(field, n, b)?),
    }
}

/// The graph closure of multiplication on `P¹ = P(k²)`: `[O(-1,-1,-1) → O]` with
/// section `x₁y₁z₀ - x₀y₀z₁`, in degrees `-1, 0`.
pub fn p1_multiplication_kernel(field: Field) -> Result<LineBundleComplex> {
    let one = Scalar::one(field);
    let section = vec![(vec![0, 1, 0, 1, 1, 0], one.clone()), (vec![1, 0, 1, 0, 0, 1], -one)];
    LineBundleComplex::new(
        field,
        vec![1, 1, 1],
        BTreeMap::from([(-1, vec![vec![-1, -1, -1]]), (0, vec![vec![0, 0, 0]])]),
        BTreeMap::from([(-1, vec![vec![section]])]),
    )
}

/// Vertexwise cohomology of `π₃*(π₁*e₁ ⊗ π₂*e₂ ⊗ K)(-χ)` for `χ ∈ {0, 1}`.
pub fn fm_oracle_p1(field: Field, e1: &SheafExpr, e2: &SheafExpr) -> Result<Vec<BTreeMap<i64, usize>>> {
    let c1 = complex_of_expr(field, 1, e1)?;
    let c2 = complex_of_expr(field, 1, e2)?;
    let on_target = LineBundleComplex::line_bundle(field, vec![1], vec![0]);
    let pulled = c1.boxtimes(&c2)?.boxtimes(&on_target)?;
    let total = pulled.tensor(&p1_multiplication_kernel(field)?)?;
    (0..=1).map(|chi| cech_cohomology(&total, &[0, 0, -chi])).collect()
}
