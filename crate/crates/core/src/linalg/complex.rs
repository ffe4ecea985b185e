use std::collections::BTreeMap;

use super::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// Maps `ι: H → C`, `π: C → H` and `h: C^k → C^{k-1}` with `πι = 1` and
/// `1 - ιπ = dh + hd`, keyed by degree (of the source, for `h`).
#[derive(Clone, Debug)]
pub struct Retract {
    pub iota: BTreeMap<i64, Matrix>,
    pub pi: BTreeMap<i64, Matrix>,
    pub h: BTreeMap<i64, Matrix>,
}

/// Bounded cochain complex of finite-dimensional vector spaces, cohomologically graded.
///
/// Only nonzero terms are stored. A differential is kept for every pair of adjacent
/// nonzero terms; [`CochainComplex::differential`] returns an empty or zero matrix elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    terms: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl CochainComplex {
    pub fn new(field: Field, terms: BTreeMap<i64, usize>, diffs: BTreeMap<i64, Matrix>) -> Result<CochainComplex> {
        let terms: BTreeMap<i64, usize> = terms.into_iter().filter(|&(_, n)| n > 0).collect();
        let dim = |d: i64| terms.get(&d).copied().unwrap_or(0);
        for (&d, m) in &diffs {
            field.check(m.field())?;
            if m.rows() != dim(d + 1) || m.cols() != dim(d) {
                return Err(Error::InvalidComplex(format!(
                    "differential in degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim(d + 1),
                    dim(d)
                )));
            }
        }
        let mut stored = BTreeMap::new();
        for &d in terms.keys() {
            if dim(d + 1) > 0 {
                let m = diffs
                    .get(&d)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(field, dim(d + 1), dim(d)));
                stored.insert(d, m);
            }
        }
        let c = CochainComplex { field, terms, diffs: stored };
        for (&d, m) in &c.diffs {
            if let Some(next) = c.diffs.get(&(d + 1)) {
                if !next.mul(m)?.is_zero() {
                    return Err(Error::InvalidComplex(format!("d∘d != 0 starting in degree {d}")));
                }
            }
        }
        Ok(c)
    }

    pub fn zero(field: Field) -> CochainComplex {
        CochainComplex { field, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// `k^dim` placed in a single degree.
    pub fn concentrated(field: Field, degree: i64, dim: usize) -> CochainComplex {
        let mut terms = BTreeMap::new();
        if dim > 0 {
            terms.insert(degree, dim);
        }
        CochainComplex { field, terms, diffs: BTreeMap::new() }
    }

    /// Two-term complex `k^cols --m--> k^rows` in degrees `degree`, `degree + 1`.
    pub fn two_term(degree: i64, m: Matrix) -> CochainComplex {
        let field = m.field();
        let terms = BTreeMap::from([(degree, m.cols()), (degree + 1, m.rows())]);
        CochainComplex::new(field, terms, BTreeMap::from([(degree, m)])).expect("two-term complex is valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, d: i64) -> usize {
        self.terms.get(&d).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<i64, usize> {
        &self.terms
    }

    pub fn differential(&self, d: i64) -> Matrix {
        self.diffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(d + 1), self.dim(d)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.terms.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn rank_of(&self, d: i64) -> usize {
        self.diffs.get(&d).map_or(0, Matrix::rank)
    }

    /// Nonzero cohomology dimensions.
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&d, &n) in &self.terms {
            let h = n - self.rank_of(d) - self.rank_of(d - 1);
            if h > 0 {
                out.insert(d, h);
            }
        }
        out
    }

    pub fn cohomology_dim(&self, d: i64) -> usize {
        let n = self.dim(d);
        if n == 0 {
            return 0;
        }
        n - self.rank_of(d) - self.rank_of(d - 1)
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().is_empty()
    }

    /// Alternating sum of cohomology dimensions, as a check on [`Self::euler_characteristic`].
    pub fn cohomology_euler(&self) -> i64 {
        self.cohomology_dims()
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Cocycles in degree `d` completing a basis of the coboundaries to one of the cocycles.
    pub fn cohomology_representatives(&self, d: i64) -> Vec<Vec<Scalar>> {
        let n = self.dim(d);
        if n == 0 {
            return Vec::new();
        }
        let (_, cocycles) = self.differential(d).rank_and_kernel();
        let boundary = self.differential(d - 1);
        let mut cols: Vec<Vec<Scalar>> = (0..boundary.cols()).map(|j| boundary.column(j)).collect();
        let base = cols.len();
        cols.extend(cocycles);
        let stacked = Matrix::from_columns(self.field, n, &cols);
        let (_, pivots) = stacked.rref();
        pivots.into_iter().filter(|&p| p >= base).map(|p| cols[p].clone()).collect()
    }

    /// A deformation retract onto cohomology.
    pub fn retract(&self) -> Retract {
        let field = self.field;
        let pick = |n: usize, base: &[Vec<Scalar>], candidates: Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
            let mut cols = base.to_vec();
            cols.extend(candidates);
            let (_, pivots) = Matrix::from_columns(field, n, &cols).rref();
            pivots.into_iter().filter(|&p| p >= base.len()).map(|p| cols[p].clone()).collect()
        };
        let mut out = Retract { iota: BTreeMap::new(), pi: BTreeMap::new(), h: BTreeMap::new() };
        let mut prev: Option<(i64, Vec<Vec<Scalar>>)> = None;
        for (&k, &n) in &self.terms {
            let complement_prev = match &prev {
                Some((d, c)) if *d == k - 1 => c.clone(),
                _ => Vec::new(),
            };
            let dk = self.differential(k - 1);
            let b: Vec<Vec<Scalar>> =
                complement_prev.iter().map(|v| dk.apply(v).expect("shape")).collect();
            let (_, cocycles) = self.differential(k).rank_and_kernel();
            let reps = pick(n, &b, cocycles);
            let mut zb = b.clone();
            zb.extend(reps.iter().cloned());
            let units: Vec<Vec<Scalar>> = (0..n).map(|i| Matrix::identity(field, n).column(i)).collect();
            let c = pick(n, &zb, units);
            let mut all = zb;
            all.extend(c.iter().cloned());
            let inv = Matrix::from_columns(field, n, &all).inverse().expect("adapted basis");
            let (nb, nh) = (b.len(), reps.len());
            out.pi.insert(k, inv.block(nb, 0, nh, n));
            out.iota.insert(k, Matrix::from_columns(field, n, &reps));
            let back = Matrix::from_columns(field, self.dim(k - 1), &complement_prev);
            out.h.insert(k, back.mul(&inv.block(0, 0, nb, n)).expect("shape"));
            prev = Some((k, c));
        }
        out
    }

    /// Coordinates of a cocycle in the basis of [`Self::cohomology_representatives`].
    pub fn cohomology_class(&self, d: i64, reps: &[Vec<Scalar>], v: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim(d);
        let boundary = self.differential(d - 1);
        let mut cols: Vec<Vec<Scalar>> = reps.to_vec();
        cols.extend((0..boundary.cols()).map(|j| boundary.column(j)));
        let m = Matrix::from_columns(self.field, n, &cols);
        let x = m
            .solve(v)
            .ok_or_else(|| Error::InvalidComplex(format!("vector is not a cocycle in degree {d}")))?;
        Ok(x[..reps.len()].to_vec())
    }

    /// `c[n]^d = c^{d+n}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i64) -> CochainComplex {
        let sign = n.rem_euclid(2) == 1;
        CochainComplex {
            field: self.field,
            terms: self.terms.iter().map(|(&d, &k)| (d - n, k)).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&d, m)| (d - n, if sign { m.neg() } else { m.clone() }))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &CochainComplex) -> Result<CochainComplex> {
        self.field.check(other.field)?;
        let mut terms = self.terms.clone();
        for (&d, &k) in &other.terms {
            *terms.entry(d).or_insert(0) += k;
        }
        let mut diffs = BTreeMap::new();
        for &d in terms.keys() {
            if terms.contains_key(&(d + 1)) {
                diffs.insert(d, self.differential(d).direct_sum(&other.differential(d))?);
            }
        }
        CochainComplex::new(self.field, terms, diffs)
    }

    pub fn direct_sum_all(field: Field, parts: &[CochainComplex]) -> Result<CochainComplex> {
        parts.iter().try_fold(CochainComplex::zero(field), |acc, c| acc.direct_sum(c))
    }

    /// Offsets of the `a^p ⊗ b^q` blocks inside `(a⊗b)^d`, ordered by `p` ascending.
    fn tensor_blocks(a: &CochainComplex, b: &CochainComplex, d: i64) -> Vec<(i64, usize)> {
        let mut offset = 0;
        let mut out = Vec::new();
        for (&p, &na) in &a.terms {
            let nb = b.dim(d - p);
            if nb > 0 {
                out.push((p, offset));
                offset += na * nb;
            }
        }
        out
    }

    /// Basis labels `(p, i, j)` of `(a⊗b)^d` in storage order: `e_i ⊗ f_j` with `e_i ∈ a^p`.
    pub fn tensor_basis(a: &CochainComplex, b: &CochainComplex, d: i64) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::new();
        for (p, _) in Self::tensor_blocks(a, b, d) {
            for i in 0..a.dim(p) {
                for j in 0..b.dim(d - p) {
                    out.push((p, i, j));
                }
            }
        }
        out
    }

    /// Tensor product with the Koszul sign `(-1)^p` on the second factor.
    pub fn tensor(&self, other: &CochainComplex) -> Result<CochainComplex> {
        self.field.check(other.field)?;
        let field = self.field;
        let mut terms = BTreeMap::new();
        for (&p, &na) in &self.terms {
            for (&q, &nb) in &other.terms {
                *terms.entry(p + q).or_insert(0) += na * nb;
            }
        }
        let mut diffs = BTreeMap::new();
        for (&d, &n) in &terms {
            let Some(&m) = terms.get(&(d + 1)) else { continue };
            let src = Self::tensor_blocks(self, other, d);
            let tgt: BTreeMap<i64, usize> = Self::tensor_blocks(self, other, d + 1).into_iter().collect();
            let mut diff = Matrix::zeros(field, m, n);
            for &(p, off) in &src {
                let q = d - p;
                if let Some(&toff) = tgt.get(&(p + 1)) {
                    let block = self.differential(p).kron(&Matrix::identity(field, other.dim(q)))?;
                    diff.set_block(toff, off, &block);
                }
                if let Some(&toff) = tgt.get(&p) {
                    let mut block = Matrix::identity(field, self.dim(p)).kron(&other.differential(q))?;
                    if p.rem_euclid(2) == 1 {
                        block = block.neg();
                    }
                    diff.set_block(toff, off, &block);
                }
            }
            diffs.insert(d, diff);
        }
        CochainComplex::new(field, terms, diffs)
    }
}

/// Degreewise linear maps commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(source: CochainComplex, target: CochainComplex, components: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        source.field.check(target.field)?;
        for (&d, m) in &components {
            source.field.check(m.field())?;
            if m.rows() != target.dim(d) || m.cols() != source.dim(d) {
                return Err(Error::NotChainMap(format!(
                    "component in degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(d),
                    source.dim(d)
                )));
            }
        }
        let f = ChainMap { source, target, components: Self::prune(components) };
        let degrees: Vec<i64> = f.source.terms.keys().chain(f.target.terms.keys()).copied().collect();
        for d in degrees {
            let lhs = f.component(d + 1).mul(&f.source.differential(d))?;
            let rhs = f.target.differential(d).mul(&f.component(d))?;
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("square in degree {d} does not commute")));
            }
        }
        Ok(f)
    }

    fn prune(components: BTreeMap<i64, Matrix>) -> BTreeMap<i64, Matrix> {
        components.into_iter().filter(|(_, m)| !m.is_zero()).collect()
    }

    pub fn identity(c: &CochainComplex) -> ChainMap {
        let components = c.terms.iter().map(|(&d, &n)| (d, Matrix::identity(c.field, n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn component(&self, d: i64) -> Matrix {
        self.components
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.field, self.target.dim(d), self.source.dim(d)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::NotChainMap("composition of non-composable maps".into()));
        }
        let mut components = BTreeMap::new();
        for &d in first.source.terms.keys() {
            components.insert(d, self.component(d).mul(&first.component(d))?);
        }
        Ok(ChainMap { source: first.source.clone(), target: self.target.clone(), components: Self::prune(components) })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotChainMap("sum of maps with different endpoints".into()));
        }
        let mut components = BTreeMap::new();
        for &d in self.source.terms.keys() {
            components.insert(d, self.component(d).add(&other.component(d))?);
        }
        Ok(ChainMap { components: Self::prune(components), ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        let components = self.components.iter().map(|(&d, m)| (d, m.scale(s))).collect();
        ChainMap { components: Self::prune(components), ..self.clone() }
    }

    pub fn shift(&self, n: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(n),
            target: self.target.shift(n),
            components: self.components.iter().map(|(&d, m)| (d - n, m.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let mut components = BTreeMap::new();
        for &d in source.terms.keys() {
            components.insert(d, self.component(d).direct_sum(&other.component(d))?);
        }
        ChainMap::new(source, target, components)
    }

    /// `cone^d = source^{d+1} ⊕ target^d`, differential `[[-d_s, 0], [f, d_t]]`.
    pub fn cone(&self) -> CochainComplex {
        let field = self.field();
        let (s, t) = (&self.source, &self.target);
        let mut terms = BTreeMap::new();
        for (&d, &n) in &s.terms {
            *terms.entry(d - 1).or_insert(0) += n;
        }
        for (&d, &n) in &t.terms {
            *terms.entry(d).or_insert(0) += n;
        }
        let mut diffs = BTreeMap::new();
        for (&d, &n) in &terms {
            let Some(&m) = terms.get(&(d + 1)) else { continue };
            let mut diff = Matrix::zeros(field, m, n);
            let (s1, s2) = (s.dim(d + 1), s.dim(d + 2));
            diff.set_block(0, 0, &s.differential(d + 1).neg());
            diff.set_block(s2, 0, &self.component(d + 1));
            diff.set_block(s2, s1, &t.differential(d));
            diffs.insert(d, diff);
        }
        CochainComplex::new(field, terms, diffs).expect("cone of a chain map is a complex")
    }

    /// `f ⊗ g` between the tensor complexes.
    pub fn tensor(&self, other: &ChainMap) -> Result<ChainMap> {
        let source = self.source.tensor(&other.source)?;
        let target = self.target.tensor(&other.target)?;
        let mut components = BTreeMap::new();
        for (&d, &n) in &source.terms {
            let m = target.dim(d);
            if m == 0 {
                continue;
            }
            let src = CochainComplex::tensor_blocks(&self.source, &other.source, d);
            let tgt: BTreeMap<i64, usize> =
                CochainComplex::tensor_blocks(&self.target, &other.target, d).into_iter().collect();
            let mut comp = Matrix::zeros(self.field(), m, n);
            for &(p, off) in &src {
                if let Some(&toff) = tgt.get(&p) {
                    comp.set_block(toff, off, &self.component(p).kron(&other.component(d - p))?);
                }
            }
            components.insert(d, comp);
        }
        ChainMap::new(source, target, components)
    }

    /// The isomorphism `(a⊗b)⊗c → a⊗(b⊗c)`.
    pub fn associator(a: &CochainComplex, b: &CochainComplex, c: &CochainComplex) -> Result<ChainMap> {
        let ab = a.tensor(b)?;
        let bc = b.tensor(c)?;
        let source = ab.tensor(c)?;
        let target = a.tensor(&bc)?;
        let mut components = BTreeMap::new();
        for (&d, &n) in &source.terms {
            let tgt: BTreeMap<(i64, usize, usize), usize> = CochainComplex::tensor_basis(a, &bc, d)
                .into_iter()
                .enumerate()
                .map(|(k, label)| (label, k))
                .collect();
            let bc_index = |q: i64| -> BTreeMap<(i64, usize, usize), usize> {
                CochainComplex::tensor_basis(b, c, q).into_iter().enumerate().map(|(k, l)| (l, k)).collect()
            };
            let mut m = Matrix::zeros(a.field, target.dim(d), n);
            let mut cache: BTreeMap<i64, BTreeMap<(i64, usize, usize), usize>> = BTreeMap::new();
            for (col, (s, x, k)) in CochainComplex::tensor_basis(&ab, c, d).into_iter().enumerate() {
                let (p, i, j) = CochainComplex::tensor_basis(a, b, s)[x];
                let q = d - p;
                let inner = cache.entry(q).or_insert_with(|| bc_index(q));
                let y = inner[&(s - p, j, k)];
                m.set(tgt[&(p, i, y)], col, Scalar::one(a.field));
            }
            components.insert(d, m);
        }
        ChainMap::new(source, target, components)
    }

    /// The symmetry `a⊗b → b⊗a`, `x⊗y ↦ (-1)^{|x||y|} y⊗x`.
    pub fn braiding(a: &CochainComplex, b: &CochainComplex) -> Result<ChainMap> {
        let source = a.tensor(b)?;
        let target = b.tensor(a)?;
        let mut components = BTreeMap::new();
        for (&d, &n) in &source.terms {
            let tgt: BTreeMap<(i64, usize, usize), usize> = CochainComplex::tensor_basis(b, a, d)
                .into_iter()
                .enumerate()
                .map(|(k, label)| (label, k))
                .collect();
            let mut m = Matrix::zeros(a.field, target.dim(d), n);
            for (col, (p, i, j)) in CochainComplex::tensor_basis(a, b, d).into_iter().enumerate() {
                let q = d - p;
                let sign = if (p * q).rem_euclid(2) == 1 { -Scalar::one(a.field) } else { Scalar::one(a.field) };
                m.set(tgt[&(q, j, i)], col, sign);
            }
            components.insert(d, m);
        }
        ChainMap::new(source, target, components)
    }

    /// Matrix of the induced map `H^d(source) → H^d(target)` in representative bases.
    pub fn on_cohomology(&self, d: i64) -> Result<Matrix> {
        let src_reps = self.source.cohomology_representatives(d);
        let tgt_reps = self.target.cohomology_representatives(d);
        let f = self.component(d);
        let mut cols = Vec::with_capacity(src_reps.len());
        for v in &src_reps {
            let image = f.apply(v)?;
            cols.push(self.target.cohomology_class(d, &tgt_reps, &image)?);
        }
        Ok(Matrix::from_columns(self.field(), tgt_reps.len(), &cols))
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        self.cone().is_acyclic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn mat(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(q(), rows).unwrap()
    }

    #[test]
    fn retract_satisfies_homotopy_identities() {
        // k^2 → k^3 → k^1 with cohomology in every degree.
        let d0 = mat(&[vec![1, 0], vec![0, 0], vec![1, 0]]);
        let d1 = mat(&[vec![1, 0, -1]]);
        let c = CochainComplex::new(
            q(),
            BTreeMap::from([(0, 2), (1, 3), (2, 1)]),
            BTreeMap::from([(0, d0), (1, d1)]),
        )
        .unwrap();
        let r = c.retract();
        for k in 0..=2 {
            let n = c.dim(k);
            let pi_iota = r.pi[&k].mul(&r.iota[&k]).unwrap();
            assert_eq!(pi_iota, Matrix::identity(q(), c.cohomology_dim(k)));
            let lhs = Matrix::identity(q(), n).sub(&r.iota[&k].mul(&r.pi[&k]).unwrap()).unwrap();
            let dh = c.differential(k - 1).mul(&r.h[&k]).unwrap();
            let hd = match r.h.get(&(k + 1)) {
                Some(h) => h.mul(&c.differential(k)).unwrap(),
                None => Matrix::zeros(q(), n, n),
            };
            assert_eq!(lhs, dh.add(&hd).unwrap(), "degree {k}");
        }
    }

    #[test]
    fn identity_two_term_is_acyclic() {
        let c = CochainComplex::two_term(0, Matrix::identity(q(), 1));
        assert!(c.is_acyclic());
    }

    #[test]
    fn zero_differentials_keep_dims() {
        let c = CochainComplex::new(q(), BTreeMap::from([(0, 2), (1, 3)]), BTreeMap::new()).unwrap();
        assert_eq!(c.cohomology_dims(), BTreeMap::from([(0, 2), (1, 3)]));
    }

    #[test]
    fn rank_one_two_term() {
        let c = CochainComplex::two_term(0, mat(&[vec![1, 1], vec![1, 1]]));
        assert_eq!(c.cohomology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn d_squared_nonzero_rejected() {
        let terms = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let diffs = BTreeMap::from([(0, mat(&[vec![1]])), (1, mat(&[vec![1]]))]);
        assert!(matches!(CochainComplex::new(q(), terms, diffs), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn wrong_shape_rejected() {
        let terms = BTreeMap::from([(0, 2), (1, 1)]);
        let diffs = BTreeMap::from([(0, mat(&[vec![1]]))]);
        assert!(CochainComplex::new(q(), terms, diffs).is_err());
    }

    #[test]
    fn cone_of_identity_acyclic() {
        let c = CochainComplex::two_term(0, mat(&[vec![1, 0]]));
        assert!(ChainMap::identity(&c).cone().is_acyclic());
        assert!(ChainMap::identity(&c).is_quasi_isomorphism());
    }

    #[test]
    fn cone_of_zero_map() {
        let a = CochainComplex::concentrated(q(), 0, 2);
        let b = CochainComplex::concentrated(q(), 0, 3);
        let cone = ChainMap::zero(&a, &b).cone();
        assert_eq!(cone.cohomology_dims(), BTreeMap::from([(-1, 2), (0, 3)]));
    }

    #[test]
    fn non_commuting_map_rejected() {
        let c = CochainComplex::two_term(0, mat(&[vec![1]]));
        let comps = BTreeMap::from([(0, mat(&[vec![1]]))]);
        assert!(matches!(ChainMap::new(c.clone(), c, comps), Err(Error::NotChainMap(_))));
    }

    #[test]
    fn tensor_unit() {
        let c = CochainComplex::two_term(-1, mat(&[vec![1, 2], vec![2, 4]]));
        let unit = CochainComplex::concentrated(q(), 0, 1);
        let t = c.tensor(&unit).unwrap();
        assert_eq!(t.terms(), c.terms());
        assert_eq!(t.cohomology_dims(), c.cohomology_dims());
    }

    #[test]
    fn shift_moves_degrees() {
        let c = CochainComplex::concentrated(q(), 0, 1);
        assert_eq!(c.shift(1).terms(), &BTreeMap::from([(-1, 1)]));
    }

    #[test]
    fn induced_map_on_cohomology() {
        let a = CochainComplex::two_term(0, mat(&[vec![1, -1]]));
        let f = ChainMap::identity(&a).scale(&Scalar::from_i64(q(), 3));
        let h = f.on_cohomology(0).unwrap();
        assert_eq!(h, mat(&[vec![3]]));
    }

    #[test]
    fn associator_and_braiding_are_chain_isomorphisms() {
        let a = CochainComplex::two_term(-1, mat(&[vec![1, 2]]));
        let b = CochainComplex::two_term(0, mat(&[vec![1], vec![3]])).direct_sum(&CochainComplex::concentrated(q(), 2, 1)).unwrap();
        let c = CochainComplex::two_term(1, mat(&[vec![0]]));
        let alpha = ChainMap::associator(&a, &b, &c).unwrap();
        assert!(alpha.is_quasi_isomorphism());
        let s = ChainMap::braiding(&a, &b).unwrap();
        let back = ChainMap::braiding(&b, &a).unwrap();
        assert_eq!(back.compose(&s).unwrap(), ChainMap::identity(&a.tensor(&b).unwrap()));
    }

    #[test]
    fn braiding_on_odd_classes_has_sign() {
        let a = CochainComplex::concentrated(q(), 1, 1);
        let s = ChainMap::braiding(&a, &a).unwrap();
        assert_eq!(s.component(2), mat(&[vec![-1]]));
    }
}
