use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::{polytope, CoxGrading, Fan};
use crate::error::{Error, Result};
use crate::linalg::{CochainComplex, Field, Matrix, Scalar};

/// Ray subsets `V` whose full subcomplex of the fan has nonzero reduced cohomology.
#[derive(Clone, Debug)]
pub struct SupportTable {
    /// `(V, [(q, dim H̃^q)])`, sorted by `V`.
    entries: Vec<(Vec<usize>, Vec<(i64, usize)>)>,
}

impl SupportTable {
    pub fn new(fan: &Fan) -> SupportTable {
        let n = fan.n_rays();
        let entries = (0..=n)
            .flat_map(|k| (0..n).combinations(k))
            .filter_map(|v| {
                let dims = reduced_cohomology(fan, &v);
                (!dims.is_empty()).then_some((v, dims))
            })
            .collect();
        SupportTable { entries }
    }

    pub fn entries(&self) -> &[(Vec<usize>, Vec<(i64, usize)>)] {
        &self.entries
    }
}

/// Reduced cohomology of the subcomplex of the fan's simplicial complex spanned by `vertices`.
/// The empty simplex sits in degree -1.
pub fn reduced_cohomology(fan: &Fan, vertices: &[usize]) -> Vec<(i64, usize)> {
    let field = Field::Rational;
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for k in 1..=vertices.len() {
        let layer: Vec<Vec<usize>> = vertices.iter().copied().combinations(k).filter(|s| fan.is_cone(s)).collect();
        if layer.is_empty() {
            break;
        }
        faces.push(layer);
    }
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (k, layer) in faces.iter().enumerate() {
        terms.insert(k as i64 - 1, layer.len());
        if let Some(next) = faces.get(k + 1) {
            let index: BTreeMap<&Vec<usize>, usize> = layer.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut d = Matrix::zeros(field, next.len(), layer.len());
            for (row, tau) in next.iter().enumerate() {
                for pos in 0..tau.len() {
                    let sigma: Vec<usize> = tau.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &x)| x).collect();
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    d.set(row, index[&sigma], Scalar::from_i64(field, sign));
                }
            }
            diffs.insert(k as i64 - 1, d);
        }
    }
    let complex = CochainComplex::new(field, terms, diffs).expect("simplicial coboundary squares to zero");
    complex.cohomology_dims().into_iter().collect()
}

pub(crate) fn cohomology_with_table(fan: &Fan, table: &SupportTable, a: &[i64]) -> Result<Vec<usize>> {
    let n = fan.n_rays();
    let dim = fan.lattice_rank;
    if a.len() != n {
        return Err(Error::Dimension(format!("{} divisor coefficients for {n} rays", a.len())));
    }
    let contributions: Vec<Result<Vec<usize>>> = table
        .entries
        .par_iter()
        .map(|(v, dims)| {
            // ⟨m,u_ρ⟩ ≤ -a_ρ - 1 on V, ⟨m,u_ρ⟩ ≥ -a_ρ off V.
            let mut rows = Vec::with_capacity(n);
            let mut rhs = Vec::with_capacity(n);
            for (rho, u) in fan.rays.iter().enumerate() {
                if v.contains(&rho) {
                    rows.push(u.iter().map(|x| -x).collect());
                    rhs.push(a[rho] + 1);
                } else {
                    rows.push(u.clone());
                    rhs.push(-a[rho]);
                }
            }
            let count = polytope::lattice_points(&rows, &rhs, dim)?.len();
            let mut h = vec![0; dim + 1];
            for &(q, d) in dims {
                let p = (q + 1) as usize;
                if p <= dim {
                    h[p] += d * count;
                }
            }
            Ok(h)
        })
        .collect();
    let mut total = vec![0; dim + 1];
    for c in contributions {
        for (t, x) in total.iter_mut().zip(c?) {
            *t += x;
        }
    }
    Ok(total)
}

/// `dim H^p(X, O(D))` for `p = 0..=dim X`, with `D = Σ a_ρ D_ρ`.
pub fn line_bundle_cohomology(fan: &Fan, a: &[i64]) -> Result<Vec<usize>> {
    fan.require_smooth_complete()?;
    cohomology_with_table(fan, &SupportTable::new(fan), a)
}

/// Euler characteristic of `O(χ)`.
pub fn euler_characteristic(g: &CoxGrading, chi: &[i64]) -> Result<i64> {
    let h = g.cohomology_of_class(chi)?;
    Ok(h.iter().enumerate().map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) }).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_cohomology() {
        let p1 = Fan::projective_space(1);
        for d in 0..5 {
            assert_eq!(line_bundle_cohomology(&p1, &[d, 0]).unwrap(), vec![d as usize + 1, 0]);
        }
        assert_eq!(line_bundle_cohomology(&p1, &[-2, 0]).unwrap(), vec![0, 1]);
        assert_eq!(line_bundle_cohomology(&p1, &[-1, 0]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn p2_canonical() {
        let p2 = Fan::projective_space(2);
        assert_eq!(line_bundle_cohomology(&p2, &[-3, 0, 0]).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn reduced_cohomology_of_p1_boundary() {
        let p1 = Fan::projective_space(1);
        assert_eq!(reduced_cohomology(&p1, &[]), vec![(-1, 1)]);
        assert_eq!(reduced_cohomology(&p1, &[0, 1]), vec![(0, 1)]);
        assert!(reduced_cohomology(&p1, &[0]).is_empty());
    }

    #[test]
    fn divisor_length_checked() {
        assert!(line_bundle_cohomology(&Fan::projective_space(1), &[1]).is_err());
    }
}
