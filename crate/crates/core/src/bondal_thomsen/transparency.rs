use serde::Serialize;

use super::theta::{theta_exact, ThetaCollection};
use crate::error::Result;
use crate::toric::{cox_grading, CoxGrading, Fan, WeightVector};

/// A nonvanishing higher cohomology group `H^degree(O(to - from))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtWitness {
    pub from: WeightVector,
    pub to: WeightVector,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomMismatch {
    pub from: WeightVector,
    pub to: WeightVector,
    pub h0: usize,
    pub monomials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransparencyReport {
    pub weights: Vec<WeightVector>,
    pub strong_exceptional: bool,
    pub ext_witnesses: Vec<ExtWitness>,
    pub hom_equality: bool,
    pub hom_mismatches: Vec<HomMismatch>,
    pub cardinality: usize,
    pub expected_cardinality: usize,
    pub cardinality_ok: bool,
    /// All checks pass: transparent up to fullness.
    pub transparent_up_to_fullness: bool,
}

pub fn transparency_check_graded(g: &CoxGrading, weights: &[WeightVector]) -> Result<TransparencyReport> {
    let mut ext_witnesses = Vec::new();
    let mut hom_mismatches = Vec::new();
    for from in weights {
        g.check_weight(from)?;
        for to in weights {
            let diff: WeightVector = to.iter().zip(from).map(|(a, b)| a - b).collect();
            let h = g.cohomology_of_class(&diff)?;
            for (p, &d) in h.iter().enumerate().skip(1) {
                if d != 0 {
                    ext_witnesses.push(ExtWitness { from: from.clone(), to: to.clone(), degree: p, dim: d });
                }
            }
            let monomials = g.monomials_of_degree(&diff)?.len();
            if h[0] != monomials {
                hom_mismatches.push(HomMismatch { from: from.clone(), to: to.clone(), h0: h[0], monomials });
            }
        }
    }
    let mut distinct = weights.to_vec();
    distinct.sort();
    distinct.dedup();
    let expected = g.fan().max_cones.len();
    let strong = ext_witnesses.is_empty();
    let hom = hom_mismatches.is_empty();
    let card = distinct.len() == expected;
    Ok(TransparencyReport {
        weights: weights.to_vec(),
        strong_exceptional: strong,
        ext_witnesses,
        hom_equality: hom,
        hom_mismatches,
        cardinality: distinct.len(),
        expected_cardinality: expected,
        cardinality_ok: card,
        transparent_up_to_fullness: strong && hom && card,
    })
}

pub fn transparency_check(fan: &Fan, weights: &[WeightVector]) -> Result<TransparencyReport> {
    transparency_check_graded(&cox_grading(fan)?, weights)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BondalRuanReport {
    pub theta: ThetaCollection,
    pub direct: TransparencyReport,
    pub negated: TransparencyReport,
    pub bondal_ruan_type: bool,
}

pub fn is_bondal_ruan_type(fan: &Fan) -> Result<BondalRuanReport> {
    let g = cox_grading(fan)?;
    let theta = theta_exact(&g);
    let direct = transparency_check_graded(&g, &theta.sorted_desc())?;
    let negated = transparency_check_graded(&g, &theta.negated().sorted_desc())?;
    let verdict = direct.transparent_up_to_fullness || negated.transparent_up_to_fullness;
    Ok(BondalRuanReport { theta, direct, negated, bondal_ruan_type: verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_beilinson_pair_passes() {
        let r = transparency_check(&Fan::projective_space(1), &[vec![0], vec![1]]).unwrap();
        assert!(r.transparent_up_to_fullness);
    }

    #[test]
    fn p1_gap_two_fails() {
        let r = transparency_check(&Fan::projective_space(1), &[vec![0], vec![2]]).unwrap();
        assert!(!r.strong_exceptional);
        assert_eq!(
            r.ext_witnesses,
            vec![ExtWitness { from: vec![2], to: vec![0], degree: 1, dim: 1 }]
        );
    }

    #[test]
    fn hirzebruch_negative_section_obstructs() {
        // (-2,1) is the class of the (-2)-curve C, and H^1(O(C)) = 1.
        let s = vec![vec![0, 0], vec![1, 0], vec![-2, 1], vec![-1, 1]];
        let r = transparency_check(&Fan::hirzebruch(2), &s).unwrap();
        assert!(r.hom_equality && r.cardinality_ok);
        assert!(r.ext_witnesses.contains(&ExtWitness { from: vec![0, 0], to: vec![-2, 1], degree: 1, dim: 1 }));
    }

    #[test]
    fn hirzebruch_standard_collection_passes() {
        let s = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let r = transparency_check(&Fan::hirzebruch(2), &s).unwrap();
        assert!(r.transparent_up_to_fullness, "{r:?}");
    }

    #[test]
    fn projective_spaces_are_bondal_ruan() {
        for n in 1..=3 {
            assert!(is_bondal_ruan_type(&Fan::projective_space(n)).unwrap().bondal_ruan_type);
        }
        assert!(!is_bondal_ruan_type(&Fan::hirzebruch(2)).unwrap().bondal_ruan_type);
    }
}
