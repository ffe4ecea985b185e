//! Weight quivers and their representations in complexes.
//!
//! Morphisms `χ₁ → χ₂` are monomials of degree `χ₂ − χ₁` in a polynomial ring with
//! graded generators; composition is multiplication. A representation assigns a
//! complex to each vertex and lets `α: χ₁ → χ₂` act `V(χ₂) → V(χ₁)`.

mod ext;
mod rep;
mod representable;

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::toric::{CoxGrading, WeightVector};

pub use ext::{rhom, rhom_dims};
pub use rep::{
    decompose_zero_arrow, transferred_arrows_vanish, quiver_tensor, tensor_associator, tensor_braiding, unit_rep, QuiverRep, RepMorphism,
};
pub use representable::{Poly, RepresentableComplex};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    Toric,
    Algebra { commutative: bool },
}

/// A finite weight quiver with a comultiplication on its morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightQuiver {
    field: Field,
    flavor: Flavor,
    vertices: Vec<WeightVector>,
    /// `Δ(x_g)` as `(a, b, c)` meaning `c · x_a ⊗ x_b`.
    gen_comult: Vec<Vec<(usize, usize, Scalar)>>,
    gen_counit: Vec<Scalar>,
    homs: BTreeMap<(usize, usize), Vec<Exponent>>,
    index: BTreeMap<(usize, usize), HashMap<Exponent, usize>>,
    /// For each non-identity basis morphism `α: i → j`, a factorization `α = γ∘β`
    /// through some `k` as `(k, β ∈ Hom(i,k), γ ∈ Hom(k,j))`, or `None` for arrows.
    factor: BTreeMap<(usize, usize), Vec<Option<(usize, usize, usize)>>>,
}

fn add_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl WeightQuiver {
    fn assemble(
        field: Field,
        flavor: Flavor,
        vertices: Vec<WeightVector>,
        gen_comult: Vec<Vec<(usize, usize, Scalar)>>,
        gen_counit: Vec<Scalar>,
        homs: BTreeMap<(usize, usize), Vec<Exponent>>,
    ) -> Result<WeightQuiver> {
        let n = gen_counit.len();
        for (&(i, j), basis) in &homs {
            if i == j {
                if basis.iter().any(|u| u.iter().any(|&e| e > 0)) {
                    return Err(Error::InvalidQuiver(format!("vertex {i} has non-scalar endomorphisms")));
                }
            } else if homs.get(&(j, i)).is_some_and(|b| !b.is_empty()) && !basis.is_empty() {
                return Err(Error::InvalidQuiver(format!("vertices {i} and {j} have morphisms both ways")));
            }
        }
        let homs: BTreeMap<(usize, usize), Vec<Exponent>> =
            homs.into_iter().filter(|((i, j), b)| i != j && !b.is_empty()).collect();
        let index = homs
            .iter()
            .map(|(&k, b)| (k, b.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect()))
            .collect::<BTreeMap<_, HashMap<_, _>>>();
        let mut factor = BTreeMap::new();
        for (&(i, j), basis) in &homs {
            let fs = basis
                .iter()
                .map(|u| {
                    (0..vertices.len()).filter(|&k| k != i && k != j).find_map(|k| {
                        let (left, right) = (homs.get(&(i, k))?, index.get(&(k, j))?);
                        left.iter().enumerate().find_map(|(b, v)| {
                            if v.iter().zip(u).all(|(x, y)| x <= y) {
                                let rest: Exponent = u.iter().zip(v).map(|(x, y)| x - y).collect();
                                right.get(&rest).map(|&g| (k, b, g))
                            } else {
                                None
                            }
                        })
                    })
                })
                .collect();
            factor.insert((i, j), fs);
        }
        debug_assert!(homs.values().flatten().all(|u| u.len() == n));
        Ok(WeightQuiver { field, flavor, vertices, gen_comult, gen_counit, homs, index, factor })
    }

    /// The quiver on `S` with morphisms the monomials of the Cox ring.
    pub fn toric(g: &CoxGrading, s: &[WeightVector], field: Field) -> Result<WeightQuiver> {
        let sorted: Vec<&WeightVector> = s.iter().sorted().collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidQuiver("duplicate weights".into()));
        }
        let mut homs = BTreeMap::new();
        for (i, a) in s.iter().enumerate() {
            g.check_weight(a)?;
            for (j, b) in s.iter().enumerate() {
                let diff: WeightVector = b.iter().zip(a).map(|(x, y)| x - y).collect();
                let monos = g.monomials_of_degree(&diff)?;
                let basis: Vec<Exponent> =
                    monos.into_iter().map(|u| u.into_iter().map(|e| e as u32).collect()).collect();
                homs.insert((i, j), basis);
            }
        }
        let n = g.n();
        let comult = (0..n).map(|k| vec![(k, k, Scalar::one(field))]).collect();
        WeightQuiver::assemble(field, Flavor::Toric, s.to_vec(), comult, vec![Scalar::one(field); n], homs)
    }

    /// The quiver with vertices `0..depth` and `Hom(i, j) = Sym^{j−i} A^∨`.
    pub fn algebra(a: &Algebra, depth: usize) -> Result<WeightQuiver> {
        if depth == 0 {
            return Err(Error::InvalidQuiver("depth must be at least 1".into()));
        }
        let d = a.dim();
        let mut homs = BTreeMap::new();
        for i in 0..depth {
            for j in i..depth {
                let basis = (0..d)
                    .combinations_with_replacement(j - i)
                    .map(|m| {
                        let mut u = vec![0u32; d];
                        for g in m {
                            u[g] += 1;
                        }
                        u
                    })
                    .collect();
                homs.insert((i, j), basis);
            }
        }
        let flavor = Flavor::Algebra { commutative: a.is_commutative() };
        let vertices = (0..depth as i64).map(|i| vec![i]).collect();
        WeightQuiver::assemble(a.field(), flavor, vertices, a.dual_comultiplication(), a.unit().to_vec(), homs)
    }

    /// The full subquiver on the given vertex indices, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Result<WeightQuiver> {
        if keep.iter().any(|&k| k >= self.vertices.len()) || keep.iter().duplicates().next().is_some() {
            return Err(Error::InvalidQuiver("restriction to a non-subset of vertices".into()));
        }
        let mut homs = BTreeMap::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if let Some(basis) = self.homs.get(&(i, j)) {
                    homs.insert((a, b), basis.clone());
                }
            }
        }
        WeightQuiver::assemble(
            self.field,
            self.flavor.clone(),
            keep.iter().map(|&k| self.vertices[k].clone()).collect(),
            self.gen_comult.clone(),
            self.gen_counit.clone(),
            homs,
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    /// Whether the tensor product of representations is symmetric.
    pub fn is_cocommutative(&self) -> bool {
        match self.flavor {
            Flavor::Toric => true,
            Flavor::Algebra { commutative } => commutative,
        }
    }

    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_generators(&self) -> usize {
        self.gen_counit.len()
    }

    pub fn vertex_index(&self, w: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v == w)
    }

    /// Basis of `Hom(i, j)` for `i ≠ j`; empty when there are no morphisms.
    pub fn hom_basis(&self, i: usize, j: usize) -> &[Exponent] {
        self.homs.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        if i == j {
            1
        } else {
            self.hom_basis(i, j).len()
        }
    }

    /// Pairs `(i, j)`, `i ≠ j`, with nonzero morphism spaces.
    pub fn hom_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.homs.keys().copied()
    }

    pub fn basis_index(&self, i: usize, j: usize, u: &[u32]) -> Option<usize> {
        self.index.get(&(i, j))?.get(u).copied()
    }

    /// `γ ∘ β` for `β` the `b`-th basis element of `Hom(i,k)` and `γ` the `c`-th of `Hom(k,j)`.
    pub fn compose(&self, i: usize, k: usize, j: usize, b: usize, c: usize) -> Option<usize> {
        let u = add_exp(&self.hom_basis(i, k)[b], &self.hom_basis(k, j)[c]);
        self.basis_index(i, j, &u)
    }

    pub fn factorization(&self, i: usize, j: usize, a: usize) -> Option<(usize, usize, usize)> {
        self.factor.get(&(i, j))?[a]
    }

    /// Basis morphisms that do not factor through another vertex.
    pub fn arrows(&self) -> Vec<(usize, usize, usize)> {
        self.factor
            .iter()
            .flat_map(|(&(i, j), fs)| fs.iter().enumerate().filter(|(_, f)| f.is_none()).map(move |(a, _)| (i, j, a)))
            .collect()
    }

    /// Counit of a basis morphism: the product of generator counits.
    pub fn counit(&self, i: usize, j: usize, a: usize) -> Scalar {
        let u = &self.hom_basis(i, j)[a];
        u.iter()
            .enumerate()
            .fold(Scalar::one(self.field), |acc, (g, &e)| acc * self.gen_counit[g].pow(e))
    }

    fn poly_mul(
        &self,
        p: &BTreeMap<(Exponent, Exponent), Scalar>,
        g: usize,
    ) -> BTreeMap<(Exponent, Exponent), Scalar> {
        let mut out: BTreeMap<(Exponent, Exponent), Scalar> = BTreeMap::new();
        for ((l, r), c) in p {
            for (a, b, k) in &self.gen_comult[g] {
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                l2[*a] += 1;
                r2[*b] += 1;
                let e = out.entry((l2, r2)).or_insert_with(|| Scalar::zero(self.field));
                *e = &*e + &(c * k);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `Δ(α) = Σ c · α' ⊗ α''` with `α', α''` basis elements of the same `Hom(i, j)`.
    pub fn comult(&self, i: usize, j: usize, a: usize) -> Vec<(usize, usize, Scalar)> {
        let u = &self.hom_basis(i, j)[a];
        if self.flavor == Flavor::Toric {
            return vec![(a, a, Scalar::one(self.field))];
        }
        let n = self.n_generators();
        let mut p = BTreeMap::from([((vec![0; n], vec![0; n]), Scalar::one(self.field))]);
        for (g, &e) in u.iter().enumerate() {
            for _ in 0..e {
                p = self.poly_mul(&p, g);
            }
        }
        p.into_iter()
            .map(|((l, r), c)| {
                let li = self.basis_index(i, j, &l).expect("comultiplication is homogeneous");
                let ri = self.basis_index(i, j, &r).expect("comultiplication is homogeneous");
                (li, ri, c)
            })
            .collect()
    }

    /// Checks `(Δ⊗id)Δ = (id⊗Δ)Δ` and `(ε⊗id)Δ = id = (id⊗ε)Δ` on every generator.
    pub fn check_coalgebra(&self) -> Result<()> {
        let n = self.n_generators();
        let field = self.field;
        for g in 0..n {
            let mut left: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (a, b, c) in &self.gen_comult[g] {
                for (x, y, c2) in &self.gen_comult[*a] {
                    let e = left.entry((*x, *y, *b)).or_insert_with(|| Scalar::zero(field));
                    *e = &*e + &(c * c2);
                }
                for (x, y, c2) in &self.gen_comult[*b] {
                    let e = right.entry((*a, *x, *y)).or_insert_with(|| Scalar::zero(field));
                    *e = &*e + &(c * c2);
                }
            }
            left.retain(|_, c| !c.is_zero());
            right.retain(|_, c| !c.is_zero());
            if left != right {
                return Err(Error::InvalidQuiver(format!("comultiplication not coassociative on generator {g}")));
            }
            let mut l = vec![Scalar::zero(field); n];
            let mut r = vec![Scalar::zero(field); n];
            for (a, b, c) in &self.gen_comult[g] {
                l[*b] = &l[*b] + &(c * &self.gen_counit[*a]);
                r[*a] = &r[*a] + &(c * &self.gen_counit[*b]);
            }
            let delta: Vec<Scalar> =
                (0..n).map(|k| if k == g { Scalar::one(field) } else { Scalar::zero(field) }).collect();
            if l != delta || r != delta {
                return Err(Error::InvalidQuiver(format!("counit fails on generator {g}")));
            }
        }
        Ok(())
    }

    /// Checks associativity of composition on every composable basis triple.
    pub fn check_associative(&self) -> Result<()> {
        let v = self.n_vertices();
        for i in 0..v {
            for j in 0..v {
                for k in 0..v {
                    for l in 0..v {
                        if i == j || j == k || k == l {
                            continue;
                        }
                        let (hij, hjk, hkl) = (self.hom_basis(i, j), self.hom_basis(j, k), self.hom_basis(k, l));
                        if hij.is_empty() || hjk.is_empty() || hkl.is_empty() {
                            continue;
                        }
                        for a in 0..hij.len() {
                            for b in 0..hjk.len() {
                                for c in 0..hkl.len() {
                                    let ab = self.compose(i, j, k, a, b);
                                    let bc = self.compose(j, k, l, b, c);
                                    let lhs = ab.and_then(|ab| self.compose(i, k, l, ab, c));
                                    let rhs = bc.and_then(|bc| self.compose(i, j, l, a, bc));
                                    if lhs != rhs || lhs.is_none() {
                                        return Err(Error::InvalidQuiver(format!(
                                            "composition not associative on {i}→{j}→{k}→{l}"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
