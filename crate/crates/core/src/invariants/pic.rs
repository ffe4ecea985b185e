use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::quiver::{Exponent, QuiverRep};
use crate::sheaves::normalize_point;

/// Largest algebra, by element count, that [`pic_group_order_fp`] enumerates.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// An invertible object: a shift and one invertible algebra element per consecutive
/// pair of vertices, modulo one global scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicElement {
    pub shift: i64,
    pub arrow_tuple: Vec<Vec<Scalar>>,
}

fn normalize_tuple(tuple: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let Some(first) = tuple.first() else { return tuple };
    let Some(lead) = first.iter().find(|x| !x.is_zero()).and_then(Scalar::inv) else { return tuple };
    tuple.into_iter().map(|a| a.iter().map(|x| x * &lead).collect()).collect()
}

impl PicElement {
    /// The element of `V ⊗ W` predicted from those of `V` and `W`.
    pub fn compose(&self, other: &PicElement, a: &Algebra) -> Result<PicElement> {
        let tuple = self
            .arrow_tuple
            .iter()
            .zip(&other.arrow_tuple)
            .map(|(x, y)| a.multiply(x, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(PicElement { shift: self.shift + other.shift, arrow_tuple: normalize_tuple(tuple) })
    }
}

impl fmt::Display for PicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrow_tuple
            .iter()
            .map(|a| format!("({})", a.iter().map(Scalar::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "shift {}, arrows [{}]", self.shift, parts.join(", "))
    }
}

fn unit_exponent(n: usize, g: usize) -> Exponent {
    let mut u = vec![0; n];
    u[g] = 1;
    u
}

/// Recognizes `k[i] ← k[i] ← ⋯` with invertible arrow elements on the quiver of `a`.
pub fn pic_classify(a: &Algebra, v: &QuiverRep) -> Option<PicElement> {
    let q = v.quiver();
    if q.n_generators() != a.dim() {
        return None;
    }
    let dims = v.cohomology_dims();
    let degree = *dims.first()?.keys().next()?;
    if dims.iter().any(|h| h.len() != 1 || h.get(&degree) != Some(&1)) {
        return None;
    }
    let scalar = |i: usize, j: usize, k: usize| -> Option<Scalar> {
        let m = v.action(i, j, k).on_cohomology(degree).ok()?;
        Some(m.get(0, 0).clone())
    };
    let mut tuple = Vec::new();
    for l in 0..q.n_vertices().saturating_sub(1) {
        let elem = (0..a.dim())
            .map(|g| scalar(l, l + 1, q.basis_index(l, l + 1, &unit_exponent(a.dim(), g))?))
            .collect::<Option<Vec<_>>>()?;
        if !a.is_invertible(&elem).ok()? {
            return None;
        }
        tuple.push(elem);
    }
    // Composites must be products of their factors.
    for (i, j) in q.hom_pairs() {
        for k in 0..q.hom_dim(i, j) {
            if let Some((mid, b, c)) = q.factorization(i, j, k) {
                if scalar(i, j, k)? != &scalar(i, mid, b)? * &scalar(mid, j, c)? {
                    return None;
                }
            }
        }
    }
    Some(PicElement { shift: -degree, arrow_tuple: normalize_tuple(tuple) })
}

/// `|(A^×)^{d-1} / k^×|` over a prime field, by enumerating `A`.
pub fn pic_group_order_fp(a: &Algebra) -> Result<BigUint> {
    let p = a.field().order().ok_or_else(|| Error::Unsupported("Picard count needs a prime field".into()))?;
    let elements = a.all_elements(ENUMERATION_LIMIT)?;
    let units = elements
        .par_iter()
        .map(|x| a.is_invertible(x).map(usize::from))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    if a.dim() == 1 {
        return Ok(BigUint::from(1u32));
    }
    let total = BigUint::from(units).pow(a.dim() as u32 - 1);
    Ok(total / BigUint::from(p - 1))
}

/// The unit count `|A^×|`.
pub fn unit_count_fp(a: &Algebra) -> Result<usize> {
    let elements = a.all_elements(ENUMERATION_LIMIT)?;
    Ok(elements.iter().filter(|x| a.is_invertible(x).unwrap_or(false)).count())
}

/// The representation of a tuple of invertible elements, for testing and the CLI.
pub fn pic_representative(a: &Algebra, point: &[Scalar], shift: i64) -> Result<QuiverRep> {
    let quiver = std::sync::Arc::new(crate::quiver::WeightQuiver::algebra(a, a.dim())?);
    if normalize_point(point).is_none() {
        return Err(Error::InvalidSheaf("zero element".into()));
    }
    Ok(QuiverRep::point(quiver, point)?.shift(shift))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Field;
    use crate::quiver::{quiver_tensor, unit_rep, WeightQuiver};

    fn elem(a: &Algebra, v: &[i64]) -> Vec<Scalar> {
        a.element(v).unwrap()
    }

    #[test]
    fn unit_rep_is_trivial() {
        let a = Algebra::preset("dual3", Field::Rational).unwrap();
        let quiver = Arc::new(WeightQuiver::algebra(&a, 3).unwrap());
        let p = pic_classify(&a, &unit_rep(quiver)).unwrap();
        assert_eq!(p.shift, 0);
        assert_eq!(p.arrow_tuple, vec![elem(&a, &[1, 0, 0]); 2]);
    }

    #[test]
    fn skyscraper_at_unit_element() {
        let a = Algebra::preset("k2", Field::Rational).unwrap();
        let v = pic_representative(&a, &elem(&a, &[2, 3]), -1).unwrap();
        let p = pic_classify(&a, &v).unwrap();
        assert_eq!(p.shift, -1);
        assert_eq!(p.arrow_tuple, vec![normalize_point(&elem(&a, &[2, 3])).unwrap()]);
    }

    #[test]
    fn simples_and_non_units_are_rejected() {
        let a = Algebra::preset("k2", Field::Rational).unwrap();
        let quiver = Arc::new(WeightQuiver::algebra(&a, 2).unwrap());
        assert!(pic_classify(&a, &QuiverRep::simple(quiver, 0, 0).unwrap()).is_none());
        let v = pic_representative(&a, &elem(&a, &[1, 0]), 0).unwrap();
        assert!(pic_classify(&a, &v).is_none());
    }

    #[test]
    fn classification_composes() {
        let a = Algebra::preset("dual2", Field::Prime(5)).unwrap();
        let x = pic_representative(&a, &elem(&a, &[2, 1]), 1).unwrap();
        let y = pic_representative(&a, &elem(&a, &[3, 4]), 2).unwrap();
        let px = pic_classify(&a, &x).unwrap();
        let py = pic_classify(&a, &y).unwrap();
        let pxy = pic_classify(&a, &quiver_tensor(&x, &y).unwrap()).unwrap();
        assert_eq!(pxy, px.compose(&py, &a).unwrap());
    }

    #[test]
    fn group_orders_distinguish_k2_from_dual_numbers() {
        let f3 = Field::Prime(3);
        assert_eq!(unit_count_fp(&Algebra::preset("k2", f3).unwrap()).unwrap(), 4);
        assert_eq!(pic_group_order_fp(&Algebra::preset("k2", f3).unwrap()).unwrap(), BigUint::from(2u32));
        assert_eq!(pic_group_order_fp(&Algebra::preset("dual2", f3).unwrap()).unwrap(), BigUint::from(3u32));
        let f5 = Field::Prime(5);
        let a = pic_group_order_fp(&Algebra::preset("dual3", f5).unwrap()).unwrap();
        let b = pic_group_order_fp(&Algebra::preset("msq", f5).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, BigUint::from(2500u32));
        assert_eq!(pic_group_order_fp(&Algebra::product_algebra(f5, 1)).unwrap(), BigUint::from(1u32));
        assert!(pic_group_order_fp(&Algebra::preset("k2", Field::Rational).unwrap()).is_err());
    }
}
