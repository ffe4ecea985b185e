use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::Result;
use crate::quiver::{quiver_tensor, QuiverRep, WeightQuiver};

/// A class in `K⁰`, in the basis of simple representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Class {
    pub coordinates: Vec<i64>,
}

impl K0Class {
    pub fn basis(d: usize, i: usize) -> K0Class {
        let mut coordinates = vec![0; d];
        coordinates[i] = 1;
        K0Class { coordinates }
    }

    pub fn unit(d: usize) -> K0Class {
        K0Class { coordinates: vec![1; d] }
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        K0Class { coordinates: self.coordinates.iter().zip(&rhs.coordinates).map(|(a, b)| a + b).collect() }
    }
}

/// The ring structure: `v_i · v_j = δ_ij v_i`, i.e. pointwise product.
impl Mul for &K0Class {
    type Output = K0Class;
    fn mul(self, rhs: &K0Class) -> K0Class {
        K0Class { coordinates: self.coordinates.iter().zip(&rhs.coordinates).map(|(a, b)| a * b).collect() }
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Euler characteristic at each vertex.
pub fn class_of(v: &QuiverRep) -> K0Class {
    K0Class { coordinates: v.euler_vector() }
}

/// `[S_i ⊗ S_j]` for all pairs of simples, computed by the quiver tensor.
pub fn k0_multiplication_table(quiver: &Arc<WeightQuiver>) -> Result<Vec<Vec<K0Class>>> {
    let d = quiver.n_vertices();
    let simples = (0..d).map(|i| QuiverRep::simple(quiver.clone(), i, 0)).collect::<Result<Vec<_>>>()?;
    simples
        .iter()
        .map(|s| simples.iter().map(|t| Ok(class_of(&quiver_tensor(s, t)?))).collect())
        .collect()
}

/// Whether the table is the idempotent diagonal `v_i v_j = δ_ij v_i`.
pub fn is_idempotent_diagonal(table: &[Vec<K0Class>]) -> bool {
    let d = table.len();
    table.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, c)| {
            let expected = if i == j { K0Class::basis(d, i) } else { K0Class { coordinates: vec![0; d] } };
            *c == expected
        })
    })
}

/// Checks `[V ⊗ W] = [V]·[W]`.
pub fn class_is_multiplicative(v: &QuiverRep, w: &QuiverRep) -> Result<bool> {
    Ok(class_of(&quiver_tensor(v, w)?) == &class_of(v) * &class_of(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::{Field, Scalar};
    use crate::quiver::unit_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn simples_and_points() {
        let a = Algebra::product_algebra(Field::Rational, 3);
        let quiver = Arc::new(WeightQuiver::algebra(&a, 3).unwrap());
        assert_eq!(class_of(&QuiverRep::simple(quiver.clone(), 1, 0).unwrap()), K0Class::basis(3, 1));
        let one = Scalar::one(Field::Rational);
        let p = QuiverRep::point(quiver.clone(), &[one.clone(), one.clone(), one]).unwrap();
        assert_eq!(class_of(&p), K0Class::unit(3));
        assert_eq!(class_of(&unit_rep(quiver.clone())), K0Class::unit(3));
        assert_eq!(class_of(&QuiverRep::simple(quiver, 2, 1).unwrap()).coordinates, vec![0, 0, -1]);
    }

    #[test]
    fn table_is_idempotent_diagonal() {
        for d in 1..=4 {
            let a = Algebra::product_algebra(Field::Rational, d);
            let quiver = Arc::new(WeightQuiver::algebra(&a, d).unwrap());
            assert!(is_idempotent_diagonal(&k0_multiplication_table(&quiver).unwrap()));
        }
    }

    #[test]
    fn multiplicative_on_random_pairs() {
        let a = Algebra::product_algebra(Field::Prime(5), 3);
        let quiver = Arc::new(WeightQuiver::algebra(&a, 3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let v = QuiverRep::random(quiver.clone(), &mut rng, 2).unwrap();
            let w = QuiverRep::random(quiver.clone(), &mut rng, 2).unwrap();
            assert!(class_is_multiplicative(&v, &w).unwrap());
        }
    }
}
