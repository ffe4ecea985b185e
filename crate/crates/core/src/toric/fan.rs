use std::collections::BTreeMap;

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::lattice::{det_i64, rank_i64};
use crate::error::{Error, Result};

/// Simplicial fan in `Z^lattice_rank`, given by rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fan {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// Outcome of [`Fan::validate`]. Offending items are listed by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub smooth: bool,
    pub complete: bool,
    pub non_primitive_rays: Vec<usize>,
    pub non_smooth_cones: Vec<usize>,
    /// Maximal cones owning a facet not shared by exactly one other cone on the opposite side.
    pub unmatched_cones: Vec<usize>,
    pub rays_span: bool,
}

impl FanReport {
    pub fn is_ok(&self) -> bool {
        self.smooth && self.complete
    }
}

impl Fan {
    /// Checks shapes and indices only; geometric conditions live in [`Fan::validate`].
    pub fn new(lattice_rank: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let fan = Fan { lattice_rank, rays, max_cones };
        fan.check_shape()?;
        Ok(fan)
    }

    pub fn from_json(text: &str) -> Result<Fan> {
        let fan: Fan = serde_json::from_str(text).map_err(|e| Error::InvalidFan(e.to_string()))?;
        fan.check_shape()?;
        Ok(fan)
    }

    fn check_shape(&self) -> Result<()> {
        if let Some(i) = self.rays.iter().position(|r| r.len() != self.lattice_rank) {
            return Err(Error::InvalidFan(format!("ray {i} has the wrong length")));
        }
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.iter().any(|&i| i >= self.rays.len()) {
                return Err(Error::InvalidFan(format!("cone {c} refers to a missing ray")));
            }
            if cone.iter().duplicates().next().is_some() {
                return Err(Error::InvalidFan(format!("cone {c} repeats a ray")));
            }
        }
        Ok(())
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    /// `P^n`: rays `e_1..e_n, -Σe_i`.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let max_cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan { lattice_rank: n, rays, max_cones }
    }

    /// Hirzebruch surface `F_a`: rays `(1,0), (0,1), (-1,a), (0,-1)`.
    pub fn hirzebruch(a: i64) -> Fan {
        Fan {
            lattice_rank: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        }
    }

    /// Blow-up of `P^2` at a torus-fixed point.
    pub fn blowup_p2() -> Fan {
        Fan {
            lattice_rank: 2,
            rays: vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        }
    }

    /// Product fan; rays of `self` come first.
    pub fn product(&self, other: &Fan) -> Fan {
        let (a, b) = (self.lattice_rank, other.lattice_rank);
        let mut rays: Vec<Vec<i64>> = self
            .rays
            .iter()
            .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, b)).collect())
            .collect();
        rays.extend(
            other
                .rays
                .iter()
                .map(|r| std::iter::repeat_n(0, a).chain(r.iter().copied()).collect()),
        );
        let shift = self.rays.len();
        let max_cones = self
            .max_cones
            .iter()
            .cartesian_product(&other.max_cones)
            .map(|(c1, c2)| c1.iter().copied().chain(c2.iter().map(|&i| i + shift)).collect())
            .collect();
        Fan { lattice_rank: a + b, rays, max_cones }
    }

    pub fn p1xp1() -> Fan {
        Fan::projective_space(1).product(&Fan::projective_space(1))
    }

    pub const PRESETS: [&'static str; 6] = ["p1", "p2", "p3", "p1xp1", "f2", "blp2"];

    pub fn preset(name: &str) -> Option<Fan> {
        Some(match name {
            "p1" => Fan::projective_space(1),
            "p2" => Fan::projective_space(2),
            "p3" => Fan::projective_space(3),
            "p1xp1" => Fan::p1xp1(),
            "f2" => Fan::hirzebruch(2),
            "blp2" => Fan::blowup_p2(),
            _ => return None,
        })
    }

    pub fn validate(&self) -> FanReport {
        let n = self.lattice_rank;
        let mut report = FanReport::default();
        report.non_primitive_rays = self
            .rays
            .iter()
            .enumerate()
            .filter(|(_, r)| r.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1)
            .map(|(i, _)| i)
            .collect();
        for (c, cone) in self.max_cones.iter().enumerate() {
            let full = cone.len() == n;
            let unimodular = full && {
                let m: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
                det_i64(&m).abs() == 1
            };
            if !unimodular {
                report.non_smooth_cones.push(c);
            }
        }
        report.smooth = report.non_primitive_rays.is_empty() && report.non_smooth_cones.is_empty();
        report.rays_span = rank_i64(&self.rays) == n;

        // Each facet must be shared by exactly two full cones lying on opposite sides.
        let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != n {
                continue;
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            for skip in 0..n {
                let facet: Vec<usize> = sorted.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| i).collect();
                facets.entry(facet).or_default().push((c, sorted[skip]));
            }
        }
        let mut unmatched = Vec::new();
        for (facet, owners) in &facets {
            let ok = owners.len() == 2 && {
                let side = |apex: usize| {
                    let mut m: Vec<Vec<i64>> = facet.iter().map(|&i| self.rays[i].clone()).collect();
                    m.push(self.rays[apex].clone());
                    det_i64(&m).signum()
                };
                let (s1, s2) = (side(owners[0].1), side(owners[1].1));
                s1 != 0 && s1 == -s2
            };
            if !ok {
                unmatched.extend(owners.iter().map(|o| o.0));
            }
        }
        unmatched.extend(
            self.max_cones
                .iter()
                .enumerate()
                .filter(|(_, c)| c.len() != n)
                .map(|(i, _)| i),
        );
        unmatched.sort_unstable();
        unmatched.dedup();
        report.complete = report.rays_span && unmatched.is_empty() && !self.max_cones.is_empty();
        report.unmatched_cones = unmatched;
        report
    }

    /// Errors unless the fan is smooth and complete.
    pub fn require_smooth_complete(&self) -> Result<()> {
        let report = self.validate();
        if !report.complete {
            return Err(Error::InvalidFan(format!(
                "fan is not complete (cones {:?})",
                report.unmatched_cones
            )));
        }
        if !report.smooth {
            return Err(Error::InvalidFan(format!(
                "fan is not smooth (rays {:?}, cones {:?})",
                report.non_primitive_rays, report.non_smooth_cones
            )));
        }
        Ok(())
    }

    /// Whether `subset` spans a cone of the fan (is contained in a maximal cone).
    pub fn is_cone(&self, subset: &[usize]) -> bool {
        self.max_cones.iter().any(|c| subset.iter().all(|i| c.contains(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_is_smooth_and_complete() {
        let r = Fan::projective_space(2).validate();
        assert!(r.smooth && r.complete);
    }

    #[test]
    fn removing_a_cone_breaks_completeness() {
        let mut f = Fan::projective_space(2);
        f.max_cones.pop();
        let r = f.validate();
        assert!(r.smooth);
        assert!(!r.complete);
        assert!(!r.unmatched_cones.is_empty());
    }

    #[test]
    fn blowup_has_unimodular_cones() {
        let f = Fan::blowup_p2();
        for cone in &f.max_cones {
            let m: Vec<Vec<i64>> = cone.iter().map(|&i| f.rays[i].clone()).collect();
            assert_eq!(det_i64(&m).abs(), 1);
        }
        assert!(f.validate().is_ok());
    }

    #[test]
    fn non_primitive_ray_flagged() {
        let f = Fan::new(1, vec![vec![2], vec![-1]], vec![vec![0], vec![1]]).unwrap();
        let r = f.validate();
        assert_eq!(r.non_primitive_rays, vec![0]);
        assert!(!r.smooth);
    }

    #[test]
    fn json_rejects_unknown_fields() {
        let text = r#"{"lattice_rank":1,"rays":[[1],[-1]],"max_cones":[[0],[1]],"extra":1}"#;
        assert!(Fan::from_json(text).is_err());
        let ok = r#"{ "lattice_rank": 1, "rays": [[1],[-1]], "max_cones": [[0],[1]] }"#;
        assert_eq!(Fan::from_json(ok).unwrap().rays, Fan::projective_space(1).rays);
    }

    #[test]
    fn product_and_hirzebruch_complete() {
        assert!(Fan::p1xp1().validate().is_ok());
        assert!(Fan::hirzebruch(2).validate().is_ok());
        assert!(Fan::projective_space(3).validate().is_ok());
    }
}
