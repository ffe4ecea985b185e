use std::collections::{BTreeMap, HashMap};

use super::rep::QuiverRep;
use super::WeightQuiver;
use crate::error::{Error, Result};
use crate::linalg::{CochainComplex, Matrix, Scalar};

/// A chain `χ₀ → χ₁ → … → χₙ` of non-identity basis morphisms: start vertex and
/// `(next vertex, basis index)` steps.
type Chain = (usize, Vec<(usize, usize)>);

fn end(c: &Chain) -> usize {
    c.1.last().map_or(c.0, |s| s.0)
}

fn chains(q: &WeightQuiver, starts: &[usize], ends: &[bool]) -> Vec<Chain> {
    let mut out = Vec::new();
    let mut stack: Vec<Chain> = starts.iter().map(|&s| (s, Vec::new())).collect();
    while let Some(c) = stack.pop() {
        let last = end(&c);
        if ends[last] {
            out.push(c.clone());
        }
        for j in 0..q.n_vertices() {
            if j != last {
                for a in 0..q.hom_dim(last, j) {
                    let mut steps = c.1.clone();
                    steps.push((j, a));
                    stack.push((c.0, steps));
                }
            }
        }
    }
    out.sort();
    out
}

/// The complex `RHom(V, W)` from the reduced bar construction, totalized with the
/// internal Hom differential.
pub fn rhom(v: &QuiverRep, w: &QuiverRep) -> Result<CochainComplex> {
    let q = v.quiver();
    if q != w.quiver() {
        return Err(Error::InvalidQuiver("representations over different quivers".into()));
    }
    let field = q.field();
    let starts: Vec<usize> = (0..q.n_vertices()).filter(|&i| !w.value(i).is_zero()).collect();
    let ends: Vec<bool> = (0..q.n_vertices()).map(|i| !v.value(i).is_zero()).collect();
    let all = chains(q, &starts, &ends);

    // Blocks (chain, s, t): maps V(χₙ)^t → W(χ₀)^{t+s}, total degree n + s.
    type Block = (usize, i64, i64);
    let mut blocks: BTreeMap<i64, Vec<(Block, usize, usize)>> = BTreeMap::new();
    for (ci, c) in all.iter().enumerate() {
        let n = c.1.len() as i64;
        let (vv, ww) = (v.value(end(c)), w.value(c.0));
        for (&t, &cols) in vv.terms() {
            for (&u, &rows) in ww.terms() {
                blocks.entry(n + u - t).or_default().push(((ci, u - t, t), rows, cols));
            }
        }
    }
    let mut offsets: HashMap<Block, (i64, usize)> = HashMap::new();
    let mut terms = BTreeMap::new();
    for (&deg, bs) in &blocks {
        let mut off = 0;
        for &(b, r, c) in bs {
            offsets.insert(b, (deg, off));
            off += r * c;
        }
        terms.insert(deg, off);
    }
    let index: HashMap<&Chain, usize> = all.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let sign = |k: i64| if k.rem_euclid(2) == 0 { Scalar::one(field) } else { -Scalar::one(field) };

    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (&deg, &n_src) in &terms {
        let Some(&n_tgt) = terms.get(&(deg + 1)) else { continue };
        let mut m = Matrix::zeros(field, n_tgt, n_src);
        // Adds `coef · (A ⊗ Bᵀ)` from source block `src` to target block `tgt`.
        let mut put = |src: Block, tgt: Block, a: &Matrix, b: &Matrix, coef: &Scalar| -> Result<()> {
            let (Some(&(_, so)), Some(&(_, to))) = (offsets.get(&src), offsets.get(&tgt)) else { return Ok(()) };
            let block = a.kron(&b.transpose())?.scale(coef);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    let x = block.get(r, c);
                    if !x.is_zero() {
                        m.add_to(to + r, so + c, x);
                    }
                }
            }
            Ok(())
        };
        for &((ci, s, t), _, _) in &blocks[&deg] {
            let c = &all[ci];
            let n = c.1.len() as i64;
            let (chi0, chin) = (c.0, end(c));
            let (vv, ww) = (v.value(chin), w.value(chi0));
            // Internal differential, weighted by (-1)^n.
            if ww.dim(t + s + 1) > 0 {
                put((ci, s, t), (ci, s + 1, t), &ww.differential(t + s), &Matrix::identity(field, vv.dim(t)), &sign(n))?;
            }
            if vv.dim(t - 1) > 0 {
                let id = Matrix::identity(field, ww.dim(t + s));
                put((ci, s, t), (ci, s + 1, t - 1), &id, &vv.differential(t - 1), &sign(n + s + 1))?;
            }
            // Bar differential into chains of length n + 1 that restrict to c.
            // Prepend α₁: W(α₁) ∘ f.
            for i in (0..q.n_vertices()).filter(|&i| i != chi0 && !w.value(i).is_zero()) {
                for a in 0..q.hom_dim(i, chi0) {
                    let mut steps = vec![(chi0, a)];
                    steps.extend(c.1.iter().copied());
                    if let Some(&tc) = index.get(&(i, steps)) {
                        let wa = w.action(i, chi0, a).component(t + s);
                        put((ci, s, t), (tc, s, t), &wa, &Matrix::identity(field, vv.dim(t)), &Scalar::one(field))?;
                    }
                }
            }
            // Append α_{n+1}: (-1)^{n+1} f ∘ V(α_{n+1}).
            for j in (0..q.n_vertices()).filter(|&j| j != chin && !v.value(j).is_zero()) {
                for a in 0..q.hom_dim(chin, j) {
                    let mut steps = c.1.clone();
                    steps.push((j, a));
                    if let Some(&tc) = index.get(&(chi0, steps)) {
                        let va = v.action(chin, j, a).component(t);
                        let id = Matrix::identity(field, ww.dim(t + s));
                        put((ci, s, t), (tc, s, t), &id, &va, &sign(n + 1))?;
                    }
                }
            }
            // Split a step: the source chain merges steps k, k+1 of the target chain.
            for (k, &(to, a)) in c.1.iter().enumerate() {
                let from = if k == 0 { chi0 } else { c.1[k - 1].0 };
                for mid in (0..q.n_vertices()).filter(|&x| x != from && x != to) {
                    for b in 0..q.hom_dim(from, mid) {
                        for g in 0..q.hom_dim(mid, to) {
                            if q.compose(from, mid, to, b, g) != Some(a) {
                                continue;
                            }
                            let mut steps = c.1[..k].to_vec();
                            steps.push((mid, b));
                            steps.push((to, g));
                            steps.extend(c.1[k + 1..].iter().copied());
                            if let Some(&tc) = index.get(&(chi0, steps)) {
                                let idw = Matrix::identity(field, ww.dim(t + s));
                                let idv = Matrix::identity(field, vv.dim(t));
                                put((ci, s, t), (tc, s, t), &idw, &idv, &sign(k as i64 + 1))?;
                            }
                        }
                    }
                }
            }
        }
        diffs.insert(deg, m);
    }
    CochainComplex::new(field, terms, diffs)
}

/// Nonzero dimensions of `Ext^d(V, W)`.
pub fn rhom_dims(v: &QuiverRep, w: &QuiverRep) -> Result<BTreeMap<i64, usize>> {
    Ok(rhom(v, w)?.cohomology_dims())
}
