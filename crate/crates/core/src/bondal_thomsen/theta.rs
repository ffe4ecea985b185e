use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::cells::{dot_int, torus_pieces, Q};
use crate::toric::{CoxGrading, WeightVector};

/// Image of the floor map, with the sign convention applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaCollection {
    pub weights: BTreeSet<WeightVector>,
    /// `+1`: `Θ = im F`. `-1`: the negated collection.
    pub convention_sign: i64,
}

impl ThetaCollection {
    pub fn negated(&self) -> ThetaCollection {
        ThetaCollection {
            weights: self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect(),
            convention_sign: -self.convention_sign,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weights in descending lexicographic order.
    pub fn sorted_desc(&self) -> Vec<WeightVector> {
        self.weights.iter().rev().cloned().collect()
    }
}

/// Coordinatewise floor of `B·t`.
pub fn floor_vector(g: &CoxGrading, t: &[Q]) -> Vec<i64> {
    g.kernel_basis()
        .iter()
        .map(|u| dot_int(u, t).floor().to_integer().to_i64().expect("small"))
        .collect()
}

/// The floor map `F(t) = φ*(⌊B·t⌋)`.
pub fn floor_map(g: &CoxGrading, t: &[Q]) -> WeightVector {
    g.degree(&floor_vector(g, t))
}

/// Exact image of the floor map over all faces of the hyperplane arrangement.
pub fn theta_exact(g: &CoxGrading) -> ThetaCollection {
    let pieces = torus_pieces(g.kernel_basis(), g.lattice_rank());
    let weights = pieces.values().map(|(p, _)| floor_map(g, &p.barycenter)).collect();
    ThetaCollection { weights, convention_sign: 1 }
}

/// Image of the floor map on the grid `k / (2D)`, `0 ≤ k < 2D`, in each coordinate.
pub fn theta_sampled(g: &CoxGrading, denominator: u32) -> BTreeSet<WeightVector> {
    let steps = 2 * i64::from(denominator);
    (0..g.lattice_rank())
        .map(|_| 0..steps)
        .multi_cartesian_product()
        .map(|ks| {
            let floor: Vec<i64> = g
                .kernel_basis()
                .iter()
                .map(|u| Integer::div_floor(&u.iter().zip(&ks).map(|(a, k)| a * k).sum::<i64>(), &steps))
                .collect();
            g.degree(&floor)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{cox_grading, Fan};

    #[test]
    fn p1_theta() {
        let g = cox_grading(&Fan::projective_space(1)).unwrap();
        let expected: BTreeSet<_> = [vec![0], vec![-1]].into_iter().collect();
        assert_eq!(theta_exact(&g).weights, expected);
        assert_eq!(theta_sampled(&g, 7), expected);
    }

    #[test]
    fn p2_sampled() {
        let g = cox_grading(&Fan::projective_space(2)).unwrap();
        let expected: BTreeSet<_> = [vec![0], vec![-1], vec![-2]].into_iter().collect();
        assert_eq!(theta_sampled(&g, 12), expected);
    }

    #[test]
    fn coarse_sample_is_subset() {
        for fan in [Fan::hirzebruch(2), Fan::blowup_p2(), Fan::p1xp1()] {
            let g = cox_grading(&fan).unwrap();
            let exact = theta_exact(&g).weights;
            assert!(theta_sampled(&g, 2).is_subset(&exact));
        }
    }

    #[test]
    fn negation_flips_sign() {
        let g = cox_grading(&Fan::projective_space(2)).unwrap();
        let t = theta_exact(&g);
        let n = t.negated();
        assert_eq!(n.convention_sign, -1);
        assert!(n.weights.contains(&vec![2]));
        assert_eq!(n.negated(), t);
    }
}
