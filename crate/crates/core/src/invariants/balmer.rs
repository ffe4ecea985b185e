use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::k0::{class_of, K0Class};
use crate::error::Result;
use crate::quiver::{quiver_tensor, rhom_dims, QuiverRep, WeightQuiver};

/// The prime `⟨S_j : j ≠ i⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalmerPrime {
    pub index: usize,
    pub generator_complement: Vec<usize>,
}

impl fmt::Display for BalmerPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generator_complement.iter().map(|j| format!("S_{j}")).collect();
        write!(f, "P_{} = <{}>", self.index, gens.join(", "))
    }
}

/// The `d` primes; there are no specializations between them.
pub fn balmer_primes(d: usize) -> Vec<BalmerPrime> {
    (0..d)
        .map(|i| BalmerPrime { index: i, generator_complement: (0..d).filter(|&j| j != i).collect() })
        .collect()
}

/// Outcome of checking the spectrum hypotheses on the simples of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalmerHypotheses {
    /// The classes of the simples form the standard basis of `K⁰`.
    pub generation: bool,
    /// `Hom(S_i, S_i) = k` in degree 0 and `Ext^*(S_i, S_i) = 0` otherwise.
    pub exceptional: bool,
    /// `S_i ⊗ S_i ≅ S_i`.
    pub idempotent: bool,
    /// `S_i ⊗ S_j = 0` for `i ≠ j`.
    pub orthogonal: bool,
}

impl BalmerHypotheses {
    pub fn all(&self) -> bool {
        self.generation && self.exceptional && self.idempotent && self.orthogonal
    }
}

pub fn verify_balmer_hypotheses(quiver: &Arc<WeightQuiver>) -> Result<BalmerHypotheses> {
    let d = quiver.n_vertices();
    let simples = (0..d).map(|i| QuiverRep::simple(quiver.clone(), i, 0)).collect::<Result<Vec<_>>>()?;
    let generation = simples.iter().enumerate().all(|(i, s)| class_of(s) == K0Class::basis(d, i));
    let mut exceptional = true;
    let mut idempotent = true;
    let mut orthogonal = true;
    for (i, s) in simples.iter().enumerate() {
        exceptional &= rhom_dims(s, s)? == BTreeMap::from([(0, 1)]);
        for (j, t) in simples.iter().enumerate() {
            let prod = quiver_tensor(s, t)?;
            if i == j {
                // A representation supported at one vertex is determined by its value there.
                idempotent &= prod.cohomology_dims() == s.cohomology_dims() && prod.total_dims() == s.total_dims();
            } else {
                orthogonal &= prod.is_zero();
            }
        }
    }
    Ok(BalmerHypotheses { generation, exceptional, idempotent, orthogonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    #[test]
    fn three_primes() {
        let p = balmer_primes(3);
        assert_eq!(p.len(), 3);
        assert_eq!(p[1].to_string(), "P_1 = <S_0, S_2>");
    }

    #[test]
    fn hypotheses_hold_for_small_algebras() {
        for name in ["k2", "dual3", "msq"] {
            let a = Algebra::preset(name, Field::Rational).unwrap();
            let quiver = Arc::new(WeightQuiver::algebra(&a, a.dim()).unwrap());
            assert!(verify_balmer_hypotheses(&quiver).unwrap().all(), "{name}");
        }
    }
}
