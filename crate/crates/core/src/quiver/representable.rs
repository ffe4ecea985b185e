use std::collections::BTreeMap;
use std::sync::Arc;

use super::rep::QuiverRep;
use super::{Exponent, WeightQuiver};
use crate::error::{Error, Result};
use crate::linalg::{ChainMap, CochainComplex, Field, Matrix, Scalar};
use crate::toric::WeightVector;

/// A linear combination of monomials.
pub type Poly = Vec<(Exponent, Scalar)>;

/// A bounded complex of representable functors `h_a = Hom(−, a)`.
///
/// The differential from degree `d` has one polynomial per (target summand, source
/// summand); an entry from `h_a` to `h_b` is a morphism `a → b` acting by postcomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentableComplex {
    pub terms: BTreeMap<i64, Vec<WeightVector>>,
    pub diffs: BTreeMap<i64, Vec<Vec<Poly>>>,
}

fn hom_list(q: &WeightQuiver, i: usize, j: usize) -> Vec<Exponent> {
    if i == j {
        vec![vec![0; q.n_generators()]]
    } else {
        q.hom_basis(i, j).to_vec()
    }
}

fn hom_index(q: &WeightQuiver, i: usize, j: usize, u: &[u32]) -> Option<usize> {
    if i == j {
        u.iter().all(|&e| e == 0).then_some(0)
    } else {
        q.basis_index(i, j, u)
    }
}

impl RepresentableComplex {
    /// `h_a` in degree 0.
    pub fn single(a: WeightVector) -> RepresentableComplex {
        RepresentableComplex { terms: BTreeMap::from([(0, vec![a])]), diffs: BTreeMap::new() }
    }

    /// Two-term complex `h_a → h_b` in degrees `-1, 0` with the given morphism.
    pub fn two_term(a: WeightVector, b: WeightVector, phi: Poly) -> RepresentableComplex {
        RepresentableComplex {
            terms: BTreeMap::from([(-1, vec![a]), (0, vec![b])]),
            diffs: BTreeMap::from([(-1, vec![vec![phi]])]),
        }
    }

    pub fn weights(&self) -> impl Iterator<Item = &WeightVector> {
        self.terms.values().flatten()
    }

    fn locate(&self, q: &WeightQuiver) -> Result<BTreeMap<i64, Vec<usize>>> {
        self.terms
            .iter()
            .map(|(&d, ws)| {
                let idx = ws
                    .iter()
                    .map(|w| {
                        q.vertex_index(w).ok_or_else(|| {
                            Error::InvalidQuiver(format!("summand h_{w:?} is not representable on this quiver"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((d, idx))
            })
            .collect()
    }

    /// The representation `χ ↦ ⊕ Hom(χ, a)`.
    pub fn evaluate(&self, quiver: &Arc<WeightQuiver>) -> Result<QuiverRep> {
        let q = quiver.as_ref();
        let field: Field = q.field();
        let summands = self.locate(q)?;
        let nv = q.n_vertices();
        // offsets[χ][d][s]: position of summand s of degree d inside V(χ)^d.
        let mut offsets: Vec<BTreeMap<i64, Vec<usize>>> = vec![BTreeMap::new(); nv];
        let mut values = Vec::with_capacity(nv);
        for (chi, off_chi) in offsets.iter_mut().enumerate() {
            let mut terms = BTreeMap::new();
            for (&d, idx) in &summands {
                let mut off = 0;
                let mut offs = Vec::new();
                for &a in idx {
                    offs.push(off);
                    off += q.hom_dim(chi, a) * usize::from(chi == a || q.hom_dim(chi, a) > 0);
                }
                off_chi.insert(d, offs);
                terms.insert(d, off);
            }
            let mut diffs = BTreeMap::new();
            for (&d, rows) in &self.diffs {
                let (Some(src), Some(tgt)) = (summands.get(&d), summands.get(&(d + 1))) else {
                    if rows.iter().flatten().any(|p| !p.is_empty()) {
                        return Err(Error::InvalidComplex(format!("differential from degree {d} has no endpoint")));
                    }
                    continue;
                };
                if rows.len() != tgt.len() || rows.iter().any(|r| r.len() != src.len()) {
                    return Err(Error::InvalidComplex(format!("differential from degree {d} has the wrong shape")));
                }
                let mut m = Matrix::zeros(field, terms[&(d + 1)], terms[&d]);
                for (r, row) in rows.iter().enumerate() {
                    for (c, phi) in row.iter().enumerate() {
                        let (a, b) = (src[c], tgt[r]);
                        for (k, beta) in hom_list(q, chi, a).iter().enumerate() {
                            if chi != a && q.hom_dim(chi, a) == 0 {
                                break;
                            }
                            for (u, coef) in phi {
                                let total: Exponent = beta.iter().zip(u).map(|(x, y)| x + y).collect();
                                let t = hom_index(q, chi, b, &total).ok_or_else(|| {
                                    Error::InvalidComplex(format!(
                                        "entry {a}→{b} of the differential in degree {d} has the wrong degree"
                                    ))
                                })?;
                                m.add_to(off_chi[&(d + 1)][r] + t, off_chi[&d][c] + k, coef);
                            }
                        }
                    }
                }
                diffs.insert(d, m);
            }
            values.push(CochainComplex::new(field, terms, diffs)?);
        }
        let vals = values.clone();
        QuiverRep::from_fn(quiver.clone(), values, |i, j, alpha| {
            let u = &q.hom_basis(i, j)[alpha];
            let mut comps = BTreeMap::new();
            for (&d, idx) in &summands {
                let mut m = Matrix::zeros(field, vals[i].dim(d), vals[j].dim(d));
                for (s, &a) in idx.iter().enumerate() {
                    if j != a && q.hom_dim(j, a) == 0 {
                        continue;
                    }
                    for (k, beta) in hom_list(q, j, a).iter().enumerate() {
                        let total: Exponent = beta.iter().zip(u).map(|(x, y)| x + y).collect();
                        let t = hom_index(q, i, a, &total)
                            .ok_or_else(|| Error::InvalidQuiver(format!("composite {i}→{j}→{a} is not a basis element")))?;
                        m.set(offsets[i][&d][s] + t, offsets[j][&d][s] + k, Scalar::one(field));
                    }
                }
                comps.insert(d, m);
            }
            ChainMap::new(vals[j].clone(), vals[i].clone(), comps)
        })
    }

    /// Left Kan extension along a vertex inclusion: the same presentation read on the larger quiver.
    pub fn kan_extend(&self, small: &WeightQuiver, big: &Arc<WeightQuiver>) -> Result<QuiverRep> {
        self.locate(small)?;
        if small.vertices().iter().any(|w| big.vertex_index(w).is_none()) {
            return Err(Error::InvalidQuiver("the larger quiver does not contain the smaller one".into()));
        }
        self.evaluate(big)
    }
}
