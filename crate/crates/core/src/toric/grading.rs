use std::sync::OnceLock;

use itertools::Itertools;

use super::cohomology::{self, SupportTable};
use super::lattice::{det_i64, integer_kernel, mat_mul_i64, maximal_minor_gcd, unimodular_inverse};
use super::{polytope, Fan};
use crate::error::{Error, Result};

/// A weight `χ`, in coordinates of the class group `Z^r`.
pub type WeightVector = Vec<i64>;

/// The map `φ*: Z^n → Z^r` sending a monomial exponent to its degree, with `M = ker φ*`.
#[derive(Clone, Debug)]
pub struct CoxGrading {
    fan: Fan,
    /// `n × r`; row `ρ` is the weight of the variable `x_ρ`.
    grading: Vec<Vec<i64>>,
    /// `n × rank M`; columns span `M ⊂ Z^n` (row `ρ` is the ray `u_ρ`).
    kernel_basis: Vec<Vec<i64>>,
    /// Rays whose weights form the standard basis of `Z^r`.
    anchor: Vec<usize>,
    support: OnceLock<SupportTable>,
}

impl PartialEq for CoxGrading {
    fn eq(&self, other: &Self) -> bool {
        self.fan == other.fan && self.grading == other.grading
    }
}

impl CoxGrading {
    pub fn new(fan: &Fan) -> Result<CoxGrading> {
        let report = fan.validate();
        if !report.complete {
            return Err(Error::InvalidFan(format!(
                "fan is not complete (cones {:?})",
                report.unmatched_cones
            )));
        }
        let n = fan.n_rays();
        let dim = fan.lattice_rank;
        if maximal_minor_gcd(&fan.rays) != 1 {
            return Err(Error::Unsupported("class group has torsion".into()));
        }
        fan.require_smooth_complete()?;
        let r = n - dim;

        // Left kernel of the ray matrix: w with Σ w_ρ u_ρ = 0.
        let transpose: Vec<Vec<i64>> = (0..dim).map(|k| fan.rays.iter().map(|u| u[k]).collect()).collect();
        let basis = integer_kernel(&transpose, n);
        debug_assert_eq!(basis.len(), r);
        let raw: Vec<Vec<i64>> = (0..n).map(|i| basis.iter().map(|w| w[i]).collect()).collect();

        // Normalize so the weights of the anchor rays become the standard basis.
        let mut subsets: Vec<Vec<usize>> = (0..n).combinations(r).collect();
        subsets.sort_by(|a, b| b.iter().rev().cmp(a.iter().rev()));
        let (anchor, inv) = subsets
            .into_iter()
            .find_map(|t| {
                let block: Vec<Vec<i64>> = t.iter().map(|&i| raw[i].clone()).collect();
                (det_i64(&block).abs() == 1).then(|| unimodular_inverse(&block).map(|inv| (t, inv)))?
            })
            .ok_or_else(|| Error::Unsupported("no unimodular set of ray weights".into()))?;
        let grading = if r == 0 { vec![Vec::new(); n] } else { mat_mul_i64(&raw, &inv) };

        Ok(CoxGrading {
            fan: fan.clone(),
            grading,
            kernel_basis: fan.rays.clone(),
            anchor,
            support: OnceLock::new(),
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn n(&self) -> usize {
        self.grading.len()
    }

    pub fn weight_rank(&self) -> usize {
        self.anchor.len()
    }

    pub fn lattice_rank(&self) -> usize {
        self.fan.lattice_rank
    }

    pub fn grading(&self) -> &[Vec<i64>] {
        &self.grading
    }

    pub fn kernel_basis(&self) -> &[Vec<i64>] {
        &self.kernel_basis
    }

    pub fn anchor(&self) -> &[usize] {
        &self.anchor
    }

    /// `φ*(u) = Σ u_ρ · weight(x_ρ)`.
    pub fn degree(&self, u: &[i64]) -> WeightVector {
        (0..self.weight_rank())
            .map(|k| u.iter().zip(&self.grading).map(|(x, row)| x * row[k]).sum())
            .collect()
    }

    pub fn check_weight(&self, chi: &[i64]) -> Result<()> {
        if chi.len() != self.weight_rank() {
            return Err(Error::Dimension(format!(
                "weight of length {} for a class group of rank {}",
                chi.len(),
                self.weight_rank()
            )));
        }
        Ok(())
    }

    /// A torus-invariant divisor of class `χ`, supported on the anchor rays.
    pub fn divisor_of_class(&self, chi: &[i64]) -> Result<Vec<i64>> {
        self.check_weight(chi)?;
        let mut a = vec![0; self.n()];
        for (k, &i) in self.anchor.iter().enumerate() {
            a[i] = chi[k];
        }
        Ok(a)
    }

    /// Exponent vectors `u ≥ 0` with `φ*(u) = χ`, sorted lexicographically.
    pub fn monomials_of_degree(&self, chi: &[i64]) -> Result<Vec<Vec<i64>>> {
        let a = self.divisor_of_class(chi)?;
        let rhs: Vec<i64> = a.iter().map(|x| -x).collect();
        let points = polytope::lattice_points(&self.kernel_basis, &rhs, self.lattice_rank())?;
        let mut out: Vec<Vec<i64>> = points
            .iter()
            .map(|m| {
                self.kernel_basis
                    .iter()
                    .zip(&a)
                    .map(|(u, ai)| ai + u.iter().zip(m).map(|(x, y)| x * y).sum::<i64>())
                    .collect()
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn support_table(&self) -> &SupportTable {
        self.support.get_or_init(|| SupportTable::new(&self.fan))
    }

    /// `dim H^p(X, O(D))` for `D = Σ a_ρ D_ρ`, for `p = 0..=dim X`.
    pub fn cohomology_of_divisor(&self, a: &[i64]) -> Result<Vec<usize>> {
        cohomology::cohomology_with_table(&self.fan, self.support_table(), a)
    }

    pub fn cohomology_of_class(&self, chi: &[i64]) -> Result<Vec<usize>> {
        let a = self.divisor_of_class(chi)?;
        self.cohomology_of_divisor(&a)
    }

    pub fn h0(&self, chi: &[i64]) -> Result<usize> {
        Ok(self.monomials_of_degree(chi)?.len())
    }
}

pub fn cox_grading(fan: &Fan) -> Result<CoxGrading> {
    CoxGrading::new(fan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space_sum_map() {
        for n in 1..=4 {
            let g = cox_grading(&Fan::projective_space(n)).unwrap();
            assert_eq!(g.weight_rank(), 1);
            assert!(g.grading().iter().all(|r| r == &vec![1]));
        }
    }

    #[test]
    fn hirzebruch_weights() {
        let g = cox_grading(&Fan::hirzebruch(2)).unwrap();
        assert_eq!(g.grading(), &[vec![1, 0], vec![-2, 1], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn p1xp1_weights() {
        let g = cox_grading(&Fan::p1xp1()).unwrap();
        assert_eq!(g.grading(), &[vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn kernel_is_annihilated() {
        for fan in [Fan::blowup_p2(), Fan::hirzebruch(2), Fan::projective_space(3)] {
            let g = cox_grading(&fan).unwrap();
            for k in 0..g.lattice_rank() {
                let col: Vec<i64> = g.kernel_basis().iter().map(|r| r[k]).collect();
                assert!(g.degree(&col).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn monomials_small_cases() {
        let p1 = cox_grading(&Fan::projective_space(1)).unwrap();
        assert_eq!(p1.monomials_of_degree(&[1]).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let f2 = cox_grading(&Fan::hirzebruch(2)).unwrap();
        assert_eq!(
            f2.monomials_of_degree(&[1, 0]).unwrap(),
            vec![vec![0, 0, 1, 0], vec![1, 0, 0, 0]]
        );
        let p2 = cox_grading(&Fan::projective_space(2)).unwrap();
        assert_eq!(p2.monomials_of_degree(&[2]).unwrap().len(), 6);
        assert!(p2.monomials_of_degree(&[-1]).unwrap().is_empty());
    }

    #[test]
    fn incomplete_fan_rejected() {
        let mut f = Fan::projective_space(2);
        f.max_cones.pop();
        assert!(matches!(cox_grading(&f), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn non_smooth_fan_rejected() {
        // Weighted projective plane P(1,1,2).
        let f = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -2]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert!(cox_grading(&f).is_err());
    }
}
