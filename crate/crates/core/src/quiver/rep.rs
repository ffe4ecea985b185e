use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;

use super::WeightQuiver;
use crate::error::{Error, Result};
use crate::linalg::{random_scalar, ChainMap, CochainComplex, Matrix, Retract, Scalar};

/// A representation: a complex at each vertex and, for each basis morphism
/// `α: i → j`, a chain map `V(j) → V(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    quiver: Arc<WeightQuiver>,
    values: Vec<CochainComplex>,
    actions: BTreeMap<(usize, usize), Vec<ChainMap>>,
}

fn same_quiver(a: &Arc<WeightQuiver>, b: &Arc<WeightQuiver>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::InvalidQuiver("representations over different quivers".into()))
    }
}

impl QuiverRep {
    pub fn new(
        quiver: Arc<WeightQuiver>,
        values: Vec<CochainComplex>,
        actions: BTreeMap<(usize, usize), Vec<ChainMap>>,
    ) -> Result<QuiverRep> {
        let rep = QuiverRep::from_parts_unchecked(quiver, values, actions)?;
        rep.check_relations()?;
        Ok(rep)
    }

    /// Checks shapes but not the composition relations.
    pub(crate) fn from_parts_unchecked(
        quiver: Arc<WeightQuiver>,
        values: Vec<CochainComplex>,
        actions: BTreeMap<(usize, usize), Vec<ChainMap>>,
    ) -> Result<QuiverRep> {
        if values.len() != quiver.n_vertices() {
            return Err(Error::InvalidQuiver(format!(
                "{} values for {} vertices",
                values.len(),
                quiver.n_vertices()
            )));
        }
        for v in &values {
            quiver.field().check(v.field())?;
        }
        let pairs: Vec<(usize, usize)> = quiver.hom_pairs().collect();
        if actions.len() != pairs.len() || pairs.iter().any(|p| !actions.contains_key(p)) {
            return Err(Error::InvalidQuiver("actions must be given for exactly the nonzero hom spaces".into()));
        }
        for (&(i, j), maps) in &actions {
            if maps.len() != quiver.hom_dim(i, j) {
                return Err(Error::InvalidQuiver(format!("wrong number of actions for Hom({i},{j})")));
            }
            for f in maps {
                if f.source() != &values[j] || f.target() != &values[i] {
                    return Err(Error::InvalidQuiver(format!("action of a morphism {i}→{j} has wrong endpoints")));
                }
            }
        }
        Ok(QuiverRep { quiver, values, actions })
    }

    /// Builds every action from a function of `(i, j, basis index)`.
    pub fn from_fn(
        quiver: Arc<WeightQuiver>,
        values: Vec<CochainComplex>,
        mut f: impl FnMut(usize, usize, usize) -> Result<ChainMap>,
    ) -> Result<QuiverRep> {
        let mut actions = BTreeMap::new();
        for (i, j) in quiver.hom_pairs() {
            let maps = (0..quiver.hom_dim(i, j)).map(|a| f(i, j, a)).collect::<Result<Vec<_>>>()?;
            actions.insert((i, j), maps);
        }
        QuiverRep::new(quiver, values, actions)
    }

    /// Builds the actions of arrows from `f` and of composites by composition.
    pub fn from_arrows(
        quiver: Arc<WeightQuiver>,
        values: Vec<CochainComplex>,
        mut f: impl FnMut(usize, usize, usize) -> Result<ChainMap>,
    ) -> Result<QuiverRep> {
        fn act(
            q: &WeightQuiver,
            memo: &mut HashMap<(usize, usize, usize), ChainMap>,
            f: &mut dyn FnMut(usize, usize, usize) -> Result<ChainMap>,
            key: (usize, usize, usize),
        ) -> Result<ChainMap> {
            if let Some(m) = memo.get(&key) {
                return Ok(m.clone());
            }
            let (i, j, a) = key;
            let m = match q.factorization(i, j, a) {
                None => f(i, j, a)?,
                Some((k, b, c)) => {
                    let first = act(q, memo, f, (k, j, c))?;
                    act(q, memo, f, (i, k, b))?.compose(&first)?
                }
            };
            memo.insert(key, m.clone());
            Ok(m)
        }
        let mut memo = HashMap::new();
        let mut actions = BTreeMap::new();
        for (i, j) in quiver.hom_pairs() {
            let maps = (0..quiver.hom_dim(i, j))
                .map(|a| act(&quiver, &mut memo, &mut f, (i, j, a)))
                .collect::<Result<Vec<_>>>()?;
            actions.insert((i, j), maps);
        }
        QuiverRep::new(quiver, values, actions)
    }

    pub fn zero(quiver: Arc<WeightQuiver>) -> QuiverRep {
        let field = quiver.field();
        let values = vec![CochainComplex::zero(field); quiver.n_vertices()];
        let z = CochainComplex::zero(field);
        QuiverRep::from_fn(quiver, values, |_, _, _| Ok(ChainMap::zero(&z, &z))).expect("zero representation")
    }

    /// `k` in the given degree at vertex `i`, zero elsewhere.
    pub fn simple(quiver: Arc<WeightQuiver>, vertex: usize, degree: i64) -> Result<QuiverRep> {
        if vertex >= quiver.n_vertices() {
            return Err(Error::InvalidQuiver(format!("no vertex {vertex}")));
        }
        let field = quiver.field();
        let values: Vec<CochainComplex> = (0..quiver.n_vertices())
            .map(|v| if v == vertex { CochainComplex::concentrated(field, degree, 1) } else { CochainComplex::zero(field) })
            .collect();
        let vals = values.clone();
        QuiverRep::from_fn(quiver, values, |i, j, _| Ok(ChainMap::zero(&vals[j], &vals[i])))
    }

    /// One-dimensional in degree 0 everywhere; a monomial `x^u` acts by `Π λ_g^{u_g}`.
    pub fn point(quiver: Arc<WeightQuiver>, lambda: &[Scalar]) -> Result<QuiverRep> {
        if lambda.len() != quiver.n_generators() {
            return Err(Error::Dimension(format!(
                "point with {} coordinates for {} generators",
                lambda.len(),
                quiver.n_generators()
            )));
        }
        let field = quiver.field();
        let k = CochainComplex::concentrated(field, 0, 1);
        let values = vec![k.clone(); quiver.n_vertices()];
        let q = quiver.clone();
        QuiverRep::from_fn(quiver, values, |i, j, a| {
            let u = &q.hom_basis(i, j)[a];
            let s = u
                .iter()
                .zip(lambda)
                .fold(Scalar::one(field), |acc, (&e, l)| acc * l.pow(e));
            ChainMap::new(k.clone(), k.clone(), BTreeMap::from([(0, Matrix::new(field, 1, 1, vec![s])?)]))
        })
    }

    pub fn quiver(&self) -> &Arc<WeightQuiver> {
        &self.quiver
    }

    pub fn values(&self) -> &[CochainComplex] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &CochainComplex {
        &self.values[v]
    }

    /// The action `V(j) → V(i)` of the `a`-th basis morphism `i → j`.
    pub fn action(&self, i: usize, j: usize, a: usize) -> &ChainMap {
        &self.actions[&(i, j)][a]
    }

    pub fn actions(&self) -> &BTreeMap<(usize, usize), Vec<ChainMap>> {
        &self.actions
    }

    pub fn cohomology_dims(&self) -> Vec<BTreeMap<i64, usize>> {
        self.values.iter().map(CochainComplex::cohomology_dims).collect()
    }

    /// Euler characteristic of each vertex value.
    pub fn euler_vector(&self) -> Vec<i64> {
        self.values.iter().map(CochainComplex::euler_characteristic).collect()
    }

    pub fn total_dims(&self) -> Vec<usize> {
        self.values.iter().map(CochainComplex::total_dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CochainComplex::is_zero)
    }

    /// Every vertex value is acyclic.
    pub fn is_acyclic(&self) -> bool {
        self.values.iter().all(CochainComplex::is_acyclic)
    }

    pub fn has_zero_arrows(&self) -> bool {
        self.actions.values().flatten().all(ChainMap::is_zero)
    }

    /// Checks `V(γ∘β) = V(β)∘V(γ)` for every composable pair of basis morphisms.
    pub fn check_relations(&self) -> Result<()> {
        let q = &self.quiver;
        for (i, k) in q.hom_pairs() {
            for j in (0..q.n_vertices()).filter(|&j| j != k && q.hom_dim(k, j) > 0) {
                for b in 0..q.hom_dim(i, k) {
                    for c in 0..q.hom_dim(k, j) {
                        let a = q.compose(i, k, j, b, c).ok_or_else(|| {
                            Error::RelationViolated(format!("composite {i}→{k}→{j} is not a basis element"))
                        })?;
                        let composite = self.action(i, k, b).compose(self.action(k, j, c))?;
                        if &composite != self.action(i, j, a) {
                            return Err(Error::RelationViolated(format!(
                                "composite through {k} of morphisms {i}→{k} #{b} and {k}→{j} #{c} differs from #{a}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shift(&self, n: i64) -> QuiverRep {
        QuiverRep {
            quiver: self.quiver.clone(),
            values: self.values.iter().map(|v| v.shift(n)).collect(),
            actions: self
                .actions
                .iter()
                .map(|(&k, maps)| (k, maps.iter().map(|f| f.shift(n)).collect()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep> {
        same_quiver(&self.quiver, &other.quiver)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        let mut actions = BTreeMap::new();
        for (&k, maps) in &self.actions {
            let sums = maps.iter().zip(&other.actions[&k]).map(|(f, g)| f.direct_sum(g)).collect::<Result<_>>()?;
            actions.insert(k, sums);
        }
        let rep = QuiverRep::from_parts_unchecked(self.quiver.clone(), values, actions)?;
        debug_assert!(rep.check_relations().is_ok());
        Ok(rep)
    }

    /// Forgets all vertices outside `keep`; the result lives on the full subquiver.
    pub fn restrict(&self, keep: &[usize]) -> Result<QuiverRep> {
        let sub = Arc::new(self.quiver.restrict(keep)?);
        let values = keep.iter().map(|&k| self.values[k].clone()).collect();
        let actions = sub
            .hom_pairs()
            .map(|(a, b)| ((a, b), self.actions[&(keep[a], keep[b])].clone()))
            .collect();
        let rep = QuiverRep::from_parts_unchecked(sub, values, actions)?;
        debug_assert!(rep.check_relations().is_ok());
        Ok(rep)
    }

    /// Restriction to the vertices with the given weights.
    pub fn restrict_to_weights(&self, weights: &[Vec<i64>]) -> Result<QuiverRep> {
        let keep = weights
            .iter()
            .map(|w| {
                self.quiver
                    .vertex_index(w)
                    .ok_or_else(|| Error::InvalidQuiver(format!("weight {w:?} is not a vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.restrict(&keep)
    }

    /// Transports along degreewise invertible matrices `p[v][d]`, which become the
    /// new bases: entries are replaced by `p⁻¹ · (−) · p`.
    pub fn change_basis(&self, p: &[BTreeMap<i64, Matrix>]) -> Result<QuiverRep> {
        let field = self.quiver.field();
        let get = |v: usize, d: i64| -> Matrix {
            p[v].get(&d).cloned().unwrap_or_else(|| Matrix::identity(field, self.values[v].dim(d)))
        };
        let mut inverses: Vec<BTreeMap<i64, Matrix>> = Vec::new();
        let mut values = Vec::new();
        for (v, c) in self.values.iter().enumerate() {
            let mut inv = BTreeMap::new();
            for &d in c.terms().keys() {
                let m = get(v, d)
                    .inverse()
                    .ok_or_else(|| Error::Dimension(format!("basis change at vertex {v} degree {d} is singular")))?;
                inv.insert(d, m);
            }
            let mut diffs = BTreeMap::new();
            for &d in c.terms().keys() {
                if c.dim(d + 1) > 0 {
                    diffs.insert(d, inv[&(d + 1)].mul(&c.differential(d))?.mul(&get(v, d))?);
                }
            }
            values.push(CochainComplex::new(field, c.terms().clone(), diffs)?);
            inverses.push(inv);
        }
        let mut actions = BTreeMap::new();
        for (&(i, j), maps) in &self.actions {
            let mut out = Vec::new();
            for f in maps {
                let mut comps = BTreeMap::new();
                for &d in values[j].terms().keys() {
                    if values[i].dim(d) > 0 {
                        comps.insert(d, inverses[i][&d].mul(&f.component(d))?.mul(&get(j, d))?);
                    }
                }
                out.push(ChainMap::new(values[j].clone(), values[i].clone(), comps)?);
            }
            actions.insert((i, j), out);
        }
        QuiverRep::new(self.quiver.clone(), values, actions)
    }

    /// A seeded random representation with total vertex dimensions at most `max_dim`:
    /// a sum of shifted points, simples and contractible two-term pieces, in a random basis.
    pub fn random<R: Rng>(quiver: Arc<WeightQuiver>, rng: &mut R, max_dim: usize) -> Result<QuiverRep> {
        let field = quiver.field();
        let nv = quiver.n_vertices();
        let mut rep = QuiverRep::zero(quiver.clone());
        let pieces = rng.gen_range(1..=max_dim.max(1));
        for _ in 0..pieces {
            let shift = rng.gen_range(-1..=1);
            let piece = match rng.gen_range(0..3) {
                0 => {
                    let lambda: Vec<Scalar> = (0..quiver.n_generators()).map(|_| random_scalar(field, rng)).collect();
                    QuiverRep::point(quiver.clone(), &lambda)?
                }
                1 => QuiverRep::simple(quiver.clone(), rng.gen_range(0..nv), 0)?,
                _ => {
                    let lambda: Vec<Scalar> = (0..quiver.n_generators()).map(|_| random_scalar(field, rng)).collect();
                    let p = QuiverRep::point(quiver.clone(), &lambda)?;
                    RepMorphism::identity(&p).cone()?
                }
            }
            .shift(shift);
            let bigger = rep.direct_sum(&piece)?;
            if bigger.total_dims().iter().all(|&d| d <= max_dim) {
                rep = bigger;
            }
        }
        let p: Vec<BTreeMap<i64, Matrix>> = rep
            .values
            .iter()
            .map(|c| c.terms().iter().map(|(&d, &n)| (d, random_invertible(field, n, rng))).collect())
            .collect();
        rep.change_basis(&p)
    }
}

fn random_invertible<R: Rng>(field: crate::linalg::Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::random(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// A natural transformation: chain maps `V(χ) → W(χ)` commuting with all actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: QuiverRep,
    target: QuiverRep,
    components: Vec<ChainMap>,
}

impl RepMorphism {
    pub fn new(source: QuiverRep, target: QuiverRep, components: Vec<ChainMap>) -> Result<RepMorphism> {
        same_quiver(&source.quiver, &target.quiver)?;
        if components.len() != source.values.len() {
            return Err(Error::NotChainMap("one component per vertex required".into()));
        }
        for (v, f) in components.iter().enumerate() {
            if f.source() != &source.values[v] || f.target() != &target.values[v] {
                return Err(Error::NotChainMap(format!("component at vertex {v} has wrong endpoints")));
            }
        }
        for (&(i, j), maps) in &source.actions {
            for (a, alpha) in maps.iter().enumerate() {
                let lhs = components[i].compose(alpha)?;
                let rhs = target.action(i, j, a).compose(&components[j])?;
                if lhs != rhs {
                    return Err(Error::NotChainMap(format!("not natural for morphism {i}→{j} #{a}")));
                }
            }
        }
        Ok(RepMorphism { source, target, components })
    }

    pub fn identity(v: &QuiverRep) -> RepMorphism {
        let components = v.values.iter().map(ChainMap::identity).collect();
        RepMorphism { source: v.clone(), target: v.clone(), components }
    }

    pub fn zero(source: &QuiverRep, target: &QuiverRep) -> Result<RepMorphism> {
        let components = source.values.iter().zip(&target.values).map(|(s, t)| ChainMap::zero(s, t)).collect();
        RepMorphism::new(source.clone(), target.clone(), components)
    }

    pub fn component(&self, v: usize) -> &ChainMap {
        &self.components[v]
    }

    /// Vertexwise mapping cone, with block-diagonal actions.
    pub fn cone(&self) -> Result<QuiverRep> {
        let field = self.source.quiver.field();
        let values: Vec<CochainComplex> = self.components.iter().map(ChainMap::cone).collect();
        let mut actions = BTreeMap::new();
        for (&(i, j), maps) in &self.source.actions {
            let mut out = Vec::new();
            for (a, alpha) in maps.iter().enumerate() {
                let beta = self.target.action(i, j, a);
                let mut comps = BTreeMap::new();
                for &d in values[j].terms().keys() {
                    let (si, sj) = (self.source.values[i].dim(d + 1), self.source.values[j].dim(d + 1));
                    let mut m = Matrix::zeros(field, values[i].dim(d), values[j].dim(d));
                    m.set_block(0, 0, &alpha.component(d + 1));
                    m.set_block(si, sj, &beta.component(d));
                    comps.insert(d, m);
                }
                out.push(ChainMap::new(values[j].clone(), values[i].clone(), comps)?);
            }
            actions.insert((i, j), out);
        }
        let rep = QuiverRep::from_parts_unchecked(self.source.quiver.clone(), values, actions)?;
        debug_assert!(rep.check_relations().is_ok());
        Ok(rep)
    }
}

/// `k` in degree 0 everywhere, morphisms acting by their counit.
pub fn unit_rep(quiver: Arc<WeightQuiver>) -> QuiverRep {
    let q = quiver.clone();
    let field = quiver.field();
    let k = CochainComplex::concentrated(field, 0, 1);
    let values = vec![k.clone(); quiver.n_vertices()];
    QuiverRep::from_fn(quiver, values, |i, j, a| {
        ChainMap::new(k.clone(), k.clone(), BTreeMap::from([(0, Matrix::new(field, 1, 1, vec![q.counit(i, j, a)])?)]))
    })
    .expect("unit representation")
}

/// Vertexwise tensor product; arrows act through the comultiplication.
pub fn quiver_tensor(v: &QuiverRep, w: &QuiverRep) -> Result<QuiverRep> {
    same_quiver(&v.quiver, &w.quiver)?;
    let q = v.quiver.clone();
    let values = v.values.iter().zip(&w.values).map(|(a, b)| a.tensor(b)).collect::<Result<Vec<_>>>()?;
    let vals = values.clone();
    QuiverRep::from_arrows(q.clone(), values, |i, j, a| {
        let mut acc = ChainMap::zero(&vals[j], &vals[i]);
        for (l, r, c) in q.comult(i, j, a) {
            let (f, g) = (v.action(i, j, l), w.action(i, j, r));
            if f.is_zero() || g.is_zero() {
                continue;
            }
            acc = acc.add(&f.tensor(g)?.scale(&c))?;
        }
        Ok(acc)
    })
    .map_err(|e| match e {
        Error::RelationViolated(m) => Error::RelationViolated(format!("tensor product: {m}")),
        other => other,
    })
}

/// The reindexing `(U⊗V)⊗W → U⊗(V⊗W)`; fails unless it commutes with every action.
pub fn tensor_associator(u: &QuiverRep, v: &QuiverRep, w: &QuiverRep) -> Result<RepMorphism> {
    let left = quiver_tensor(&quiver_tensor(u, v)?, w)?;
    let right = quiver_tensor(u, &quiver_tensor(v, w)?)?;
    let components = (0..u.values.len())
        .map(|x| ChainMap::associator(&u.values[x], &v.values[x], &w.values[x]))
        .collect::<Result<Vec<_>>>()?;
    RepMorphism::new(left, right, components)
}

/// The Koszul-signed swap `V⊗W → W⊗V`; fails unless it commutes with every action.
pub fn tensor_braiding(v: &QuiverRep, w: &QuiverRep) -> Result<RepMorphism> {
    let components = (0..v.values.len())
        .map(|x| ChainMap::braiding(&v.values[x], &w.values[x]))
        .collect::<Result<Vec<_>>>()?;
    RepMorphism::new(quiver_tensor(v, w)?, quiver_tensor(w, v)?, components)
}

/// Whether every map transferred to cohomology, `π V(α₁) h V(α₂) ⋯ h V(αₖ) ι` over
/// composable chains of basis morphisms, vanishes; then `v` is quasi-isomorphic to its
/// cohomology with zero arrows.
pub fn transferred_arrows_vanish(v: &QuiverRep) -> bool {
    if v.has_zero_arrows() {
        return true;
    }
    let q = v.quiver();
    let retracts: Vec<Retract> = v.values().iter().map(CochainComplex::retract).collect();
    // (current vertex, whether a morphism was applied, map from the current cochains to
    // the start's cohomology keyed by source degree).
    let mut stack: Vec<(usize, bool, BTreeMap<i64, Matrix>)> =
        (0..q.n_vertices()).map(|i| (i, false, retracts[i].pi.clone())).collect();
    while let Some((i, started, m)) = stack.pop() {
        for j in (0..q.n_vertices()).filter(|&j| j != i) {
            for a in 0..q.hom_dim(i, j) {
                let f = v.action(i, j, a);
                let mut next: BTreeMap<i64, Matrix> = BTreeMap::new();
                for &e in v.value(j).terms().keys() {
                    let left = if started {
                        match (m.get(&(e - 1)), retracts[i].h.get(&e)) {
                            (Some(x), Some(h)) => x.mul(h).expect("shape"),
                            _ => continue,
                        }
                    } else {
                        match m.get(&e) {
                            Some(x) => x.clone(),
                            None => continue,
                        }
                    };
                    let comp = left.mul(&f.component(e)).expect("shape");
                    if !comp.is_zero() {
                        next.insert(e, comp);
                    }
                }
                for (e, x) in &next {
                    if let Some(iota) = retracts[j].iota.get(e) {
                        if !x.mul(iota).expect("shape").is_zero() {
                            return false;
                        }
                    }
                }
                if !next.is_empty() {
                    stack.push((j, true, next));
                }
            }
        }
    }
    true
}

/// Reads a representation with vanishing transferred arrows as a sum of shifted simples `(vertex, shift)`.
pub fn decompose_zero_arrow(v: &QuiverRep) -> Result<Vec<(usize, i64)>> {
    if !transferred_arrows_vanish(v) {
        return Err(Error::Unsupported("representation has a nonzero arrow".into()));
    }
    let mut out = Vec::new();
    for (i, h) in v.cohomology_dims().iter().enumerate() {
        for (&d, &n) in h {
            out.extend(std::iter::repeat_n((i, -d), n));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;
    use crate::toric::{cox_grading, Fan};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    fn beilinson(n: usize, field: Field) -> Arc<WeightQuiver> {
        let g = cox_grading(&Fan::projective_space(n)).unwrap();
        let s: Vec<_> = (0..=n as i64).map(|i| vec![i]).collect();
        Arc::new(WeightQuiver::toric(&g, &s, field).unwrap())
    }

    #[test]
    fn simples_multiply_as_idempotents() {
        let quiver = Arc::new(WeightQuiver::algebra(&Algebra::product_algebra(q(), 3), 3).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let si = QuiverRep::simple(quiver.clone(), i, 0).unwrap();
                let sj = QuiverRep::simple(quiver.clone(), j, 0).unwrap();
                let t = quiver_tensor(&si, &sj).unwrap();
                if i == j {
                    assert_eq!(t, si);
                } else {
                    assert!(t.is_zero());
                }
            }
        }
    }

    #[test]
    fn unit_is_neutral_and_idempotent() {
        let quiver = beilinson(2, q());
        let u = unit_rep(quiver.clone());
        assert_eq!(quiver_tensor(&u, &u).unwrap(), u);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = QuiverRep::random(quiver, &mut rng, 3).unwrap();
        assert_eq!(quiver_tensor(&u, &v).unwrap(), v);
        assert_eq!(quiver_tensor(&v, &u).unwrap(), v);
    }

    #[test]
    fn unit_of_product_algebra_is_all_ones() {
        let quiver = Arc::new(WeightQuiver::algebra(&Algebra::product_algebra(q(), 2), 2).unwrap());
        let u = unit_rep(quiver);
        for f in &u.actions()[&(0, 1)] {
            assert_eq!(f.component(0), Matrix::identity(q(), 1));
        }
    }

    #[test]
    fn skyscraper_product_evaluates_at_product() {
        let a = Algebra::matrix_algebra(q(), 2);
        let quiver = Arc::new(WeightQuiver::algebra(&a, 3).unwrap());
        let x = a.element(&[1, 2, 0, 1]).unwrap();
        let y = a.element(&[3, 0, 1, 1]).unwrap();
        let t = quiver_tensor(&QuiverRep::point(quiver.clone(), &x).unwrap(), &QuiverRep::point(quiver.clone(), &y).unwrap())
            .unwrap();
        let xy = QuiverRep::point(quiver, &a.multiply(&x, &y).unwrap()).unwrap();
        assert_eq!(t, xy);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let quiver = beilinson(1, q());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = QuiverRep::random(quiver, &mut rng, 3).unwrap();
        assert!(RepMorphism::identity(&v).cone().unwrap().is_acyclic());
    }

    #[test]
    fn cone_of_zero_is_sum_with_shift() {
        let quiver = beilinson(1, q());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v = QuiverRep::random(quiver.clone(), &mut rng, 2).unwrap();
        let w = QuiverRep::random(quiver, &mut rng, 2).unwrap();
        let c = RepMorphism::zero(&v, &w).unwrap().cone().unwrap();
        assert_eq!(c, v.shift(1).direct_sum(&w).unwrap());
    }

    #[test]
    fn random_reps_respect_relations_over_fp() {
        let quiver = beilinson(2, Field::prime(5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let v = QuiverRep::random(quiver.clone(), &mut rng, 3).unwrap();
            assert!(v.total_dims().iter().all(|&d| d <= 3));
            v.check_relations().unwrap();
        }
    }

    #[test]
    fn broken_relation_rejected() {
        let quiver = beilinson(1, q());
        let k = CochainComplex::concentrated(q(), 0, 1);
        let values = vec![k.clone(); 2];
        let one = ChainMap::identity(&k);
        let mut actions = BTreeMap::new();
        actions.insert((0, 1), vec![one.clone(), one]);
        // P¹ has no composites, so any choice is valid; use P² with mismatched composites.
        assert!(QuiverRep::new(quiver, values, actions).is_ok());
        let quiver = beilinson(2, q());
        let values = vec![k.clone(); 3];
        let r = QuiverRep::from_fn(quiver, values, |i, j, a| {
            let s = Scalar::from_i64(q(), (i + j + a) as i64 + 1);
            Ok(ChainMap::identity(&k).scale(&s))
        });
        assert!(matches!(r, Err(Error::RelationViolated(_))));
    }

    #[test]
    fn associativity_and_symmetry_on_random_triples() {
        let f5 = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for quiver in [
            beilinson(2, f5),
            Arc::new(WeightQuiver::algebra(&Algebra::truncated_poly(f5, 3), 3).unwrap()),
        ] {
            for _ in 0..3 {
                let u = QuiverRep::random(quiver.clone(), &mut rng, 3).unwrap();
                let v = QuiverRep::random(quiver.clone(), &mut rng, 3).unwrap();
                let w = QuiverRep::random(quiver.clone(), &mut rng, 3).unwrap();
                tensor_associator(&u, &v, &w).unwrap();
                tensor_braiding(&u, &v).unwrap();
            }
        }
    }

    #[test]
    fn noncommutative_tensor_is_not_symmetric() {
        let a = Algebra::matrix_algebra(q(), 2);
        let quiver = Arc::new(WeightQuiver::algebra(&a, 2).unwrap());
        let x = QuiverRep::point(quiver.clone(), &a.element(&[0, 1, 0, 0]).unwrap()).unwrap();
        let y = QuiverRep::point(quiver, &a.element(&[0, 0, 1, 0]).unwrap()).unwrap();
        assert!(tensor_braiding(&x, &y).is_err());
    }

    #[test]
    fn zero_arrow_decomposition() {
        let quiver = beilinson(2, q());
        let s = QuiverRep::simple(quiver.clone(), 1, 1).unwrap();
        assert_eq!(decompose_zero_arrow(&s).unwrap(), vec![(1, -1)]);
        assert!(decompose_zero_arrow(&QuiverRep::zero(quiver.clone())).unwrap().is_empty());
        assert!(decompose_zero_arrow(&unit_rep(quiver)).is_err());
    }

    #[test]
    fn restrict_to_everything_is_identity() {
        let quiver = beilinson(2, q());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let v = QuiverRep::random(quiver, &mut rng, 2).unwrap();
        assert_eq!(v.restrict(&[0, 1, 2]).unwrap(), v);
        assert!(v.restrict(&[0, 5]).is_err());
    }
}
