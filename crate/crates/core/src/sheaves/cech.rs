use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use itertools::Itertools;

use super::complex::LineBundleComplex;
use crate::error::{Error, Result};
use crate::linalg::{ChainMap, CochainComplex, Field, Matrix, Scalar, SparseEchelon};
use crate::quiver::{QuiverRep, WeightQuiver};

/// Largest truncation bound the engine accepts.
pub const MAX_BOUND: i64 = 48;

/// Alternating Čech basis of one factor `Pⁿ` in one twist: chart sets `I` (bitmask)
/// and Laurent exponents `v` with `Σv = a`, `v_j ≥ 0` off `I`, `v_j ≥ -B` on `I`.
struct FactorBasis {
    elems: Vec<(u32, i64, Vec<i64>)>,
    index: HashMap<(u32, Vec<i64>), usize>,
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factor_basis(n: usize, a: i64, bound: i64, graded: bool) -> FactorBasis {
    let mut elems = Vec::new();
    // A graded factor keeps only polynomial sections: the empty chart set in degree 0.
    let masks = if graded { 0u32..1 } else { 1u32..(1 << (n + 1)) };
    for mask in masks {
        let p = (i64::from(mask.count_ones()) - 1).max(0);
        let lower: Vec<i64> = (0..=n).map(|j| if mask & (1 << j) != 0 { -bound } else { 0 }).collect();
        let rest = a - lower.iter().sum::<i64>();
        if rest < 0 {
            continue;
        }
        for w in compositions(rest, n + 1) {
            let v: Vec<i64> = w.iter().zip(&lower).map(|(x, l)| x + l).collect();
            elems.push((mask, p, v));
        }
    }
    let index = elems.iter().enumerate().map(|(i, (m, _, v))| ((*m, v.clone()), i)).collect();
    FactorBasis { elems, index }
}

/// Per-factor lower bounds `max(0, -a-n)` over the given twists, which make the
/// truncated complex compute `H^*` exactly.
pub fn required_bound(dims: &[usize], twists: &[Vec<i64>]) -> Vec<i64> {
    dims.iter()
        .enumerate()
        .map(|(f, &n)| twists.iter().map(|t| -t[f] - n as i64).max().unwrap_or(0).max(0))
        .collect()
}

struct Block {
    q: i64,
    s: usize,
    bases: Vec<Rc<FactorBasis>>,
    strides: Vec<usize>,
    loc: Vec<(i64, usize)>,
}

/// The Čech double complex of `c ⊗ O(twist)`, totalized with `D = d_c + (-1)^q δ`.
pub(crate) struct CechTotal {
    field: Field,
    terms: BTreeMap<i64, usize>,
    entries: BTreeMap<i64, Vec<(usize, usize, Scalar)>>,
    blocks: Vec<Block>,
    block_of: HashMap<(i64, usize), usize>,
}

struct BasisCache {
    dims: Vec<usize>,
    bound: Vec<i64>,
    graded: Vec<bool>,
    cache: HashMap<(usize, i64), Rc<FactorBasis>>,
}

impl BasisCache {
    fn get(&mut self, f: usize, a: i64) -> Rc<FactorBasis> {
        let (n, b, g) = (self.dims[f], self.bound[f], self.graded[f]);
        self.cache.entry((f, a)).or_insert_with(|| Rc::new(factor_basis(n, a, b, g))).clone()
    }
}

fn split_exponent(dims: &[usize], u: &[u32]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut off = 0;
    for &n in dims {
        out.push(u[off..off + n + 1].iter().map(|&e| i64::from(e)).collect());
        off += n + 1;
    }
    out
}

impl CechTotal {
    fn build(c: &LineBundleComplex, twist: &[i64], cache: &mut BasisCache) -> CechTotal {
        let field = c.field();
        let dims = c.dims().to_vec();
        let mut counters: BTreeMap<i64, usize> = BTreeMap::new();
        let mut blocks = Vec::new();
        let mut block_of = HashMap::new();
        for (&q, summands) in c.terms() {
            for (s, tw) in summands.iter().enumerate() {
                let bases: Vec<Rc<FactorBasis>> =
                    (0..dims.len()).map(|f| cache.get(f, tw[f] + twist[f])).collect();
                let mut strides = vec![1; dims.len()];
                for f in (0..dims.len().saturating_sub(1)).rev() {
                    strides[f] = strides[f + 1] * bases[f + 1].elems.len();
                }
                let mut loc = Vec::new();
                for t in bases.iter().map(|b| 0..b.elems.len()).multi_cartesian_product() {
                    let d = q + t.iter().zip(&bases).map(|(&i, b)| b.elems[i].1).sum::<i64>();
                    let k = counters.entry(d).or_insert(0);
                    loc.push((d, *k));
                    *k += 1;
                }
                if dims.is_empty() {
                    loc.clear();
                }
                block_of.insert((q, s), blocks.len());
                blocks.push(Block { q, s, bases, strides, loc });
            }
        }
        let mut total = CechTotal {
            field,
            terms: counters.into_iter().filter(|(_, n)| *n > 0).collect(),
            entries: BTreeMap::new(),
            blocks,
            block_of,
        };
        total.fill_differential(c, &dims);
        total
    }

    fn position(block: &Block, t: &[usize]) -> usize {
        t.iter().zip(&block.strides).map(|(a, b)| a * b).sum()
    }

    fn fill_differential(&mut self, c: &LineBundleComplex, dims: &[usize]) {
        let field = self.field;
        let mut entries: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
        for block in &self.blocks {
            let tuples = block.bases.iter().map(|b| 0..b.elems.len()).multi_cartesian_product();
            for (pos, t) in tuples.enumerate() {
                let (d, col) = block.loc[pos];
                // Čech differential.
                let mut parity = block.q;
                for f in 0..dims.len() {
                    let (mask, p, v) = &block.bases[f].elems[t[f]];
                    for j in 0..=dims[f] {
                        if mask & (1 << j) != 0 {
                            continue;
                        }
                        let new_mask = mask | (1 << j);
                        let before = i64::from((mask & ((1u32 << j) - 1)).count_ones());
                        let Some(&k) = block.bases[f].index.get(&(new_mask, v.clone())) else { continue };
                        let mut t2 = t.clone();
                        t2[f] = k;
                        let (_, row) = block.loc[Self::position(block, &t2)];
                        let s = if (parity + before).rem_euclid(2) == 0 { Scalar::one(field) } else { -Scalar::one(field) };
                        entries.entry(d).or_default().push((row, col, s));
                    }
                    parity += p;
                }
                // Differential of the complex of line bundles.
                if let Some(targets) = c.terms().get(&(block.q + 1)) {
                    for r in 0..targets.len() {
                        let tb = &self.blocks[self.block_of[&(block.q + 1, r)]];
                        for (u, coef) in c.entry(block.q, r, block.s) {
                            let parts = split_exponent(dims, u);
                            let mut t2 = Vec::with_capacity(dims.len());
                            for f in 0..dims.len() {
                                let (mask, _, v) = &block.bases[f].elems[t[f]];
                                let v2: Vec<i64> = v.iter().zip(&parts[f]).map(|(a, b)| a + b).collect();
                                t2.push(tb.bases[f].index[&(*mask, v2)]);
                            }
                            let (_, row) = tb.loc[Self::position(tb, &t2)];
                            entries.entry(d).or_default().push((row, col, coef.clone()));
                        }
                    }
                }
            }
        }
        self.entries = entries;
    }

    fn dim(&self, d: i64) -> usize {
        self.terms.get(&d).copied().unwrap_or(0)
    }

    fn sparse_rows(&self, d: i64) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.dim(d + 1)];
        for (r, c, s) in self.entries.get(&d).into_iter().flatten() {
            let e = rows[*r].entry(*c).or_insert_with(|| Scalar::zero(self.field));
            *e = &*e + s;
        }
        rows.into_iter().map(|r| r.into_iter().filter(|(_, s)| !s.is_zero()).collect()).collect()
    }

    fn rank(&self, d: i64) -> usize {
        let mut e = SparseEchelon::new(self.dim(d));
        for row in self.sparse_rows(d) {
            e.insert(row);
        }
        e.rank()
    }

    pub(crate) fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> = self.terms.keys().map(|&d| (d, self.rank(d))).collect();
        self.terms
            .iter()
            .map(|(&d, &n)| (d, n - ranks[&d] - ranks.get(&(d - 1)).copied().unwrap_or(0)))
            .filter(|&(_, h)| h > 0)
            .collect()
    }

    pub(crate) fn to_complex(&self) -> Result<CochainComplex> {
        let mut diffs = BTreeMap::new();
        for &d in self.terms.keys() {
            if self.dim(d + 1) == 0 {
                continue;
            }
            let mut m = Matrix::zeros(self.field, self.dim(d + 1), self.dim(d));
            for (r, c, s) in self.entries.get(&d).into_iter().flatten() {
                m.add_to(*r, *c, s);
            }
            diffs.insert(d, m);
        }
        CochainComplex::new(self.field, self.terms.clone(), diffs)
    }

    /// Multiplication by `x^u` into the totalization of a higher twist of the same complex.
    fn multiplication(&self, target: &CechTotal, dims: &[usize], u: &[u32]) -> BTreeMap<i64, Matrix> {
        let parts = split_exponent(dims, u);
        let mut comps: BTreeMap<i64, Matrix> = BTreeMap::new();
        for block in &self.blocks {
            let tb = &target.blocks[target.block_of[&(block.q, block.s)]];
            let tuples = block.bases.iter().map(|b| 0..b.elems.len()).multi_cartesian_product();
            for (pos, t) in tuples.enumerate() {
                let (d, col) = block.loc[pos];
                let mut t2 = Vec::with_capacity(dims.len());
                for f in 0..dims.len() {
                    let (mask, _, v) = &block.bases[f].elems[t[f]];
                    let v2: Vec<i64> = v.iter().zip(&parts[f]).map(|(a, b)| a + b).collect();
                    t2.push(tb.bases[f].index[&(*mask, v2)]);
                }
                let (_, row) = tb.loc[Self::position(tb, &t2)];
                comps
                    .entry(d)
                    .or_insert_with(|| Matrix::zeros(self.field, target.dim(d), self.dim(d)))
                    .set(row, col, Scalar::one(self.field));
            }
        }
        comps
    }
}

fn check_bound(dims: &[usize], c: &LineBundleComplex, twists: &[Vec<i64>], bound: &[i64]) -> Result<()> {
    let all: Vec<Vec<i64>> = c
        .twists()
        .flat_map(|t| twists.iter().map(move |w| t.iter().zip(w).map(|(a, b)| a + b).collect::<Vec<i64>>()))
        .collect();
    let need = required_bound(dims, &all);
    if bound.len() != dims.len() || need.iter().zip(bound).any(|(n, b)| n > b) {
        return Err(Error::Truncation(format!("truncation bound {bound:?} is too small: required {need:?}")));
    }
    if let Some(b) = bound.iter().find(|&&b| b > MAX_BOUND) {
        return Err(Error::Truncation(format!("required bound {b} exceeds the limit {MAX_BOUND}")));
    }
    Ok(())
}

fn auto_bound(c: &LineBundleComplex, twists: &[Vec<i64>]) -> Vec<i64> {
    let all: Vec<Vec<i64>> = c
        .twists()
        .flat_map(|t| twists.iter().map(move |w| t.iter().zip(w).map(|(a, b)| a + b).collect::<Vec<i64>>()))
        .collect();
    required_bound(c.dims(), &all)
}

fn total(c: &LineBundleComplex, twist: &[i64], bound: &[i64], graded: &[bool]) -> Result<CechTotal> {
    if twist.len() != c.dims().len() || graded.len() != c.dims().len() {
        return Err(Error::InvalidSheaf("twist has the wrong number of factors".into()));
    }
    let bound: Vec<i64> = bound.iter().zip(graded).map(|(&b, &g)| if g { 0 } else { b }).collect();
    let projective: Vec<usize> = (0..graded.len()).filter(|&f| !graded[f]).collect();
    let pick = |v: &[i64]| projective.iter().map(|&f| v[f]).collect::<Vec<_>>();
    let sub_dims: Vec<usize> = projective.iter().map(|&f| c.dims()[f]).collect();
    let need = required_bound(&sub_dims, &c.twists().map(|t| pick(&t.iter().zip(twist).map(|(a, b)| a + b).collect::<Vec<_>>())).collect::<Vec<_>>());
    let have = pick(&bound);
    if need.iter().zip(&have).any(|(n, b)| n > b) {
        return Err(Error::Truncation(format!("truncation bound {have:?} is too small: required {need:?}")));
    }
    if let Some(b) = have.iter().find(|&&b| b > MAX_BOUND) {
        return Err(Error::Truncation(format!("required bound {b} exceeds the limit {MAX_BOUND}")));
    }
    let mut cache = BasisCache { dims: c.dims().to_vec(), bound, graded: graded.to_vec(), cache: HashMap::new() };
    Ok(CechTotal::build(c, twist, &mut cache))
}

/// `RΓ(c ⊗ O(twist))` as the totalized, truncated Čech complex.
pub fn cech_rgamma(c: &LineBundleComplex, twist: &[i64]) -> Result<CochainComplex> {
    total(c, twist, &auto_bound(c, &[twist.to_vec()]), &vec![false; twist.len()])?.to_complex()
}

/// As [`cech_rgamma`] with caller-supplied per-factor bounds; too small a bound is an error.
pub fn cech_rgamma_with_bound(c: &LineBundleComplex, twist: &[i64], bound: &[i64]) -> Result<CochainComplex> {
    total(c, twist, bound, &vec![false; twist.len()])?.to_complex()
}

/// Nonzero hypercohomology dimensions of `c ⊗ O(twist)`, by sparse elimination.
pub fn cech_cohomology(c: &LineBundleComplex, twist: &[i64]) -> Result<BTreeMap<i64, usize>> {
    cech_cohomology_graded(c, twist, &vec![false; twist.len()])
}

/// As [`cech_cohomology`], with the flagged factors replaced by their graded coordinate
/// rings: those contribute the polynomial sections of each twist and no higher cohomology.
pub fn cech_cohomology_graded(c: &LineBundleComplex, twist: &[i64], graded: &[bool]) -> Result<BTreeMap<i64, usize>> {
    let bound = auto_bound(c, &[twist.to_vec()]);
    Ok(total(c, twist, &bound, graded)?.cohomology_dims())
}

/// The representation `χ ↦ RΓ(c(-χ))` on a quiver with vertices `[χ]` over `Pⁿ`,
/// morphisms acting by multiplication on Čech cochains.
pub fn cech_rep(quiver: &Arc<WeightQuiver>, c: &LineBundleComplex) -> Result<QuiverRep> {
    if c.dims().len() != 1 || c.dims()[0] + 1 != quiver.n_generators() {
        return Err(Error::InvalidSheaf("complex does not live on the projective space of this quiver".into()));
    }
    if quiver.vertices().iter().any(|v| v.len() != 1) {
        return Err(Error::InvalidQuiver("vertices must be integers".into()));
    }
    let twists: Vec<Vec<i64>> = quiver.vertices().iter().map(|v| vec![-v[0]]).collect();
    let bound = auto_bound(c, &twists);
    check_bound(c.dims(), c, &twists, &bound)?;
    let mut cache = BasisCache { dims: c.dims().to_vec(), bound, graded: vec![false], cache: HashMap::new() };
    let totals: Vec<CechTotal> = twists.iter().map(|t| CechTotal::build(c, t, &mut cache)).collect();
    let values = totals.iter().map(CechTotal::to_complex).collect::<Result<Vec<_>>>()?;
    let vals = values.clone();
    QuiverRep::from_fn(quiver.clone(), values, |i, j, a| {
        let u = &quiver.hom_basis(i, j)[a];
        let comps = totals[j].multiplication(&totals[i], c.dims(), u);
        ChainMap::new(vals[j].clone(), vals[i].clone(), comps)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn q() -> Field {
        Field::Rational
    }

    fn closed_form(n: usize, a: i64) -> BTreeMap<i64, usize> {
        let n64 = n as i64;
        let mut out = BTreeMap::new();
        if a >= 0 {
            out.insert(0, binomial(a + n64, n64) as usize);
        }
        if a < -n64 {
            out.insert(n64, binomial(-a - 1, n64) as usize);
        }
        out
    }

    #[test]
    fn line_bundles_match_closed_form() {
        for n in 1..=2 {
            for a in -4..=4 {
                let c = LineBundleComplex::line_bundle(q(), vec![n], vec![0]);
                assert_eq!(cech_cohomology(&c, &[a]).unwrap(), closed_form(n, a), "P^{n}, O({a})");
                assert_eq!(cech_rgamma(&c, &[a]).unwrap().cohomology_dims(), closed_form(n, a));
            }
        }
    }

    #[test]
    fn o_minus_two_on_p1() {
        let c = LineBundleComplex::line_bundle(q(), vec![1], vec![-2]);
        assert_eq!(cech_cohomology(&c, &[0]).unwrap(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn small_bound_is_reported() {
        let c = LineBundleComplex::line_bundle(q(), vec![1], vec![-3]);
        let err = cech_rgamma_with_bound(&c, &[0], &[0]).unwrap_err();
        assert!(matches!(err, Error::Truncation(m) if m.contains("[2]")));
        assert!(cech_rgamma_with_bound(&c, &[0], &[5]).unwrap().cohomology_dims() == BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn kunneth_on_products() {
        let c = LineBundleComplex::line_bundle(q(), vec![1, 1], vec![0, 0]);
        // H^*(O(-2) ⊠ O(1)) = H^1: 1·2.
        assert_eq!(cech_cohomology(&c, &[-2, 1]).unwrap(), BTreeMap::from([(1, 2)]));
        assert_eq!(cech_cohomology(&c, &[-3, -2]).unwrap(), BTreeMap::from([(2, 2)]));
    }

    #[test]
    fn skyscraper_resolution_has_one_section() {
        let a = vec![Scalar::from_i64(q(), 1), Scalar::from_i64(q(), -1), Scalar::from_i64(q(), 2)];
        let c = LineBundleComplex::skyscraper_resolution(&a).unwrap();
        for t in -3..=3 {
            assert_eq!(cech_cohomology(&c, &[t]).unwrap(), BTreeMap::from([(0, 1)]));
        }
    }

    #[test]
    fn twisted_cotangent_follows_bott() {
        // H^q(P², Ω^1(1-χ)) is k in degree 1 for χ = 1 and zero for χ = 0, 2.
        let c = LineBundleComplex::twisted_cotangent(q(), 2, 1).unwrap();
        assert!(cech_cohomology(&c, &[0]).unwrap().is_empty());
        assert_eq!(cech_cohomology(&c, &[-1]).unwrap(), BTreeMap::from([(1, 1)]));
        assert!(cech_cohomology(&c, &[-2]).unwrap().is_empty());
    }
}
