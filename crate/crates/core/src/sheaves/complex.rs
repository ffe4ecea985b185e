use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Poly;

/// A bounded complex of sums of line bundles on `P^{n₁} × … × P^{n_k}`.
///
/// Variables are numbered factor by factor; an exponent vector has `Σ (n_f + 1)` entries.
/// The differential from degree `q` is a matrix of polynomials indexed by
/// (target summand, source summand).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundleComplex {
    field: Field,
    dims: Vec<usize>,
    terms: BTreeMap<i64, Vec<Vec<i64>>>,
    diffs: BTreeMap<i64, Vec<Vec<Poly>>>,
}

fn poly_mul(field: Field, a: &[(Vec<u32>, Scalar)], b: &[(Vec<u32>, Scalar)]) -> Poly {
    let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for (u, c) in a {
        for (v, d) in b {
            let w: Vec<u32> = u.iter().zip(v).map(|(x, y)| x + y).collect();
            let e = acc.entry(w).or_insert_with(|| Scalar::zero(field));
            *e = &*e + &(c * d);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn poly_add(field: Field, a: &Poly, b: &Poly) -> Poly {
    let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    for (u, c) in a.iter().chain(b) {
        let e = acc.entry(u.clone()).or_insert_with(|| Scalar::zero(field));
        *e = &*e + c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn poly_scale(p: &[(Vec<u32>, Scalar)], s: &Scalar) -> Poly {
    if s.is_zero() {
        return Vec::new();
    }
    p.iter().map(|(u, c)| (u.clone(), c * s)).collect()
}

/// Contraction `ι_ℓ(e_S) = Σ_r (-1)^r ℓ_{s_r} e_{S∖s_r}` as a matrix of polynomials
/// from `∧^m` to `∧^{m-1}`, subsets in lexicographic order.
pub(crate) fn contraction(field: Field, rank: usize, m: usize, forms: &[Poly]) -> Vec<Vec<Poly>> {
    let src: Vec<Vec<usize>> = (0..rank).combinations(m).collect();
    let tgt: Vec<Vec<usize>> = (0..rank).combinations(m - 1).collect();
    let mut out = vec![vec![Vec::new(); src.len()]; tgt.len()];
    for (c, s) in src.iter().enumerate() {
        for (r, &x) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&y| y != x).collect();
            let row = tgt.iter().position(|t| *t == rest).expect("subset");
            let sign = if r % 2 == 0 { Scalar::one(field) } else { -Scalar::one(field) };
            out[row][c] = poly_add(field, &out[row][c], &poly_scale(&forms[x], &sign));
        }
    }
    out
}

impl LineBundleComplex {
    pub fn new(
        field: Field,
        dims: Vec<usize>,
        terms: BTreeMap<i64, Vec<Vec<i64>>>,
        diffs: BTreeMap<i64, Vec<Vec<Poly>>>,
    ) -> Result<LineBundleComplex> {
        let nvars: usize = dims.iter().map(|n| n + 1).sum();
        let terms: BTreeMap<i64, Vec<Vec<i64>>> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        for t in terms.values().flatten() {
            if t.len() != dims.len() {
                return Err(Error::InvalidSheaf(format!("twist {t:?} has the wrong number of factors")));
            }
        }
        let mut kept = BTreeMap::new();
        for (d, rows) in diffs {
            let (src, tgt) = (terms.get(&d), terms.get(&(d + 1)));
            let (Some(src), Some(tgt)) = (src, tgt) else {
                if rows.iter().flatten().any(|p| !p.is_empty()) {
                    return Err(Error::InvalidSheaf(format!("differential from degree {d} has no endpoint")));
                }
                continue;
            };
            if rows.len() != tgt.len() || rows.iter().any(|r| r.len() != src.len()) {
                return Err(Error::InvalidSheaf(format!("differential from degree {d} has the wrong shape")));
            }
            for (r, row) in rows.iter().enumerate() {
                for (c, p) in row.iter().enumerate() {
                    for (u, s) in p {
                        field.check(s.field())?;
                        if u.len() != nvars {
                            return Err(Error::InvalidSheaf("exponent of the wrong length".into()));
                        }
                        let mut off = 0;
                        for (f, &n) in dims.iter().enumerate() {
                            let deg: i64 = u[off..off + n + 1].iter().map(|&e| i64::from(e)).sum();
                            if deg != tgt[r][f] - src[c][f] {
                                return Err(Error::InvalidSheaf(format!(
                                    "entry ({r},{c}) of the differential from degree {d} has degree {deg} in factor {f}, expected {}",
                                    tgt[r][f] - src[c][f]
                                )));
                            }
                            off += n + 1;
                        }
                    }
                }
            }
            kept.insert(d, rows);
        }
        let c = LineBundleComplex { field, dims, terms, diffs: kept };
        for (&d, first) in &c.diffs {
            if let Some(second) = c.diffs.get(&(d + 1)) {
                for row in second {
                    for col in 0..first[0].len() {
                        let mut acc = Vec::new();
                        for (k, p) in row.iter().enumerate() {
                            acc = poly_add(field, &acc, &poly_mul(field, p, &first[k][col]));
                        }
                        if !acc.is_empty() {
                            return Err(Error::InvalidSheaf(format!("d∘d != 0 starting in degree {d}")));
                        }
                    }
                }
            }
        }
        Ok(c)
    }

    /// `O(twist)` in degree 0.
    pub fn line_bundle(field: Field, dims: Vec<usize>, twist: Vec<i64>) -> LineBundleComplex {
        LineBundleComplex { field, dims, terms: BTreeMap::from([(0, vec![twist])]), diffs: BTreeMap::new() }
    }

    pub fn zero(field: Field, dims: Vec<usize>) -> LineBundleComplex {
        LineBundleComplex { field, dims, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Koszul resolution of the point `[a]` on `Pⁿ` in degrees `-n..0`.
    pub fn skyscraper_resolution(a: &[Scalar]) -> Result<LineBundleComplex> {
        let n = a.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| Error::InvalidSheaf("point needs at least two coordinates".into()))?;
        if a.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidSheaf("the zero vector is not a point".into()));
        }
        let field = a[0].field();
        let row = Matrix::new(field, 1, n + 1, a.to_vec())?;
        let (_, kernel) = row.rank_and_kernel();
        let forms: Vec<Poly> = kernel
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| {
                        let mut u = vec![0; n + 1];
                        u[j] = 1;
                        (u, c.clone())
                    })
                    .collect()
            })
            .collect();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for m in 0..=n {
            let count = (0..n).combinations(m).count();
            terms.insert(-(m as i64), vec![vec![-(m as i64)]; count]);
            if m >= 1 {
                diffs.insert(-(m as i64), contraction(field, n, m, &forms));
            }
        }
        LineBundleComplex::new(field, vec![n], terms, diffs)
    }

    /// `Ω^i(i) ≅ [∧^i V ⊗ O → ∧^{i-1} V ⊗ O(1) → … → O(i)]` in degrees `0..i`.
    pub fn twisted_cotangent(field: Field, n: usize, i: usize) -> Result<LineBundleComplex> {
        if i > n {
            return Err(Error::InvalidSheaf(format!("Ω^{i} vanishes on P^{n}")));
        }
        let forms: Vec<Poly> = (0..=n)
            .map(|j| {
                let mut u = vec![0; n + 1];
                u[j] = 1;
                vec![(u, Scalar::one(field))]
            })
            .collect();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for k in 0..=i {
            let m = i - k;
            terms.insert(k as i64, vec![vec![k as i64]; (0..=n).combinations(m).count()]);
            if m >= 1 {
                diffs.insert(k as i64, contraction(field, n + 1, m, &forms));
            }
        }
        LineBundleComplex::new(field, vec![n], terms, diffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_vars(&self) -> usize {
        self.dims.iter().map(|n| n + 1).sum()
    }

    pub fn terms(&self) -> &BTreeMap<i64, Vec<Vec<i64>>> {
        &self.terms
    }

    /// Entry `(target, source)` of the differential from degree `q`.
    pub fn entry(&self, q: i64, target: usize, source: usize) -> &[(Vec<u32>, Scalar)] {
        self.diffs.get(&q).map_or(&[], |m| m[target][source].as_slice())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Every twist appearing in the complex.
    pub fn twists(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.values().flatten()
    }

    /// `c[n]`: degrees move down by `n`, differentials pick up `(-1)^n`.
    pub fn shift(&self, n: i64) -> LineBundleComplex {
        let sign = if n.rem_euclid(2) == 1 { -Scalar::one(self.field) } else { Scalar::one(self.field) };
        LineBundleComplex {
            field: self.field,
            dims: self.dims.clone(),
            terms: self.terms.iter().map(|(&d, t)| (d - n, t.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&d, m)| (d - n, m.iter().map(|r| r.iter().map(|p| poly_scale(p, &sign)).collect()).collect()))
                .collect(),
        }
    }

    /// Tensor with `O(t)`.
    pub fn twist(&self, t: &[i64]) -> LineBundleComplex {
        let mut c = self.clone();
        for ts in c.terms.values_mut() {
            for tw in ts.iter_mut() {
                for (a, b) in tw.iter_mut().zip(t) {
                    *a += b;
                }
            }
        }
        c
    }

    pub fn direct_sum(&self, other: &LineBundleComplex) -> Result<LineBundleComplex> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (&d, t) in &other.terms {
            terms.entry(d).or_default().extend(t.iter().cloned());
        }
        let mut diffs = BTreeMap::new();
        for &d in terms.keys() {
            let Some(tgt) = terms.get(&(d + 1)) else { continue };
            let src = &terms[&d];
            let (s1, t1) = (self.terms.get(&d).map_or(0, Vec::len), self.terms.get(&(d + 1)).map_or(0, Vec::len));
            let mut m = vec![vec![Vec::new(); src.len()]; tgt.len()];
            for (r, row) in m.iter_mut().enumerate() {
                for (c, entry) in row.iter_mut().enumerate() {
                    if r < t1 && c < s1 {
                        *entry = self.entry(d, r, c).to_vec();
                    } else if r >= t1 && c >= s1 {
                        *entry = other.entry(d, r - t1, c - s1).to_vec();
                    }
                }
            }
            diffs.insert(d, m);
        }
        LineBundleComplex::new(self.field, self.dims.clone(), terms, diffs)
    }

    fn check_compatible(&self, other: &LineBundleComplex) -> Result<()> {
        self.field.check(other.field)?;
        if self.dims != other.dims {
            return Err(Error::InvalidSheaf("complexes live on different spaces".into()));
        }
        Ok(())
    }

    /// Summand labels `(p, i, j)` of the tensor product in degree `d`, ordered by `p`.
    fn tensor_labels(&self, other: &LineBundleComplex, d: i64) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::new();
        for (&p, a) in &self.terms {
            if let Some(b) = other.terms.get(&(d - p)) {
                for i in 0..a.len() {
                    for j in 0..b.len() {
                        out.push((p, i, j));
                    }
                }
            }
        }
        out
    }

    /// Tensor product on the same space, differential `d ⊗ 1 + (-1)^p 1 ⊗ d`.
    pub fn tensor(&self, other: &LineBundleComplex) -> Result<LineBundleComplex> {
        self.check_compatible(other)?;
        let field = self.field;
        let mut degrees: Vec<i64> = Vec::new();
        for p in self.terms.keys() {
            for q in other.terms.keys() {
                degrees.push(p + q);
            }
        }
        degrees.sort();
        degrees.dedup();
        let mut terms = BTreeMap::new();
        for &d in &degrees {
            let twists: Vec<Vec<i64>> = self
                .tensor_labels(other, d)
                .into_iter()
                .map(|(p, i, j)| {
                    self.terms[&p][i].iter().zip(&other.terms[&(d - p)][j]).map(|(a, b)| a + b).collect()
                })
                .collect();
            terms.insert(d, twists);
        }
        let mut diffs = BTreeMap::new();
        for &d in &degrees {
            if !terms.contains_key(&(d + 1)) {
                continue;
            }
            let src = self.tensor_labels(other, d);
            let tgt = self.tensor_labels(other, d + 1);
            let mut m = vec![vec![Vec::new(); src.len()]; tgt.len()];
            for (c, &(p, i, j)) in src.iter().enumerate() {
                for (r, &(p2, i2, j2)) in tgt.iter().enumerate() {
                    if p2 == p + 1 && j2 == j {
                        m[r][c] = self.entry(p, i2, i).to_vec();
                    } else if p2 == p && i2 == i {
                        let sign = if p.rem_euclid(2) == 1 { -Scalar::one(field) } else { Scalar::one(field) };
                        m[r][c] = poly_scale(other.entry(d - p, j2, j), &sign);
                    }
                }
            }
            diffs.insert(d, m);
        }
        LineBundleComplex::new(field, self.dims.clone(), terms, diffs)
    }

    /// Pullback along the projection to the factors `offset..offset + self.dims.len()`
    /// of a product with factor dimensions `dims`.
    pub fn pullback(&self, dims: &[usize], offset: usize) -> Result<LineBundleComplex> {
        if dims.get(offset..offset + self.dims.len()) != Some(self.dims.as_slice()) {
            return Err(Error::InvalidSheaf("factor dimensions do not match".into()));
        }
        let before: usize = dims[..offset].iter().map(|n| n + 1).sum();
        let total: usize = dims.iter().map(|n| n + 1).sum();
        let pad_twist = |t: &Vec<i64>| -> Vec<i64> {
            let mut out = vec![0; dims.len()];
            out[offset..offset + t.len()].copy_from_slice(t);
            out
        };
        let pad_exp = |u: &Vec<u32>| -> Vec<u32> {
            let mut out = vec![0; total];
            out[before..before + u.len()].copy_from_slice(u);
            out
        };
        let terms = self.terms.iter().map(|(&d, ts)| (d, ts.iter().map(pad_twist).collect())).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&d, m)| {
                let m2 = m
                    .iter()
                    .map(|r| r.iter().map(|p| p.iter().map(|(u, c)| (pad_exp(u), c.clone())).collect()).collect())
                    .collect();
                (d, m2)
            })
            .collect();
        LineBundleComplex::new(self.field, dims.to_vec(), terms, diffs)
    }

    /// Exterior product `self ⊠ other` on the product space.
    pub fn boxtimes(&self, other: &LineBundleComplex) -> Result<LineBundleComplex> {
        self.field.check(other.field)?;
        let dims: Vec<usize> = self.dims.iter().chain(&other.dims).copied().collect();
        self.pullback(&dims, 0)?.tensor(&other.pullback(&dims, self.dims.len())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn p1_skyscraper_resolution() {
        let a = vec![Scalar::from_i64(q(), 2), Scalar::from_i64(q(), 3)];
        let c = LineBundleComplex::skyscraper_resolution(&a).unwrap();
        assert_eq!(c.terms()[&-1], vec![vec![-1]]);
        // The section vanishes at [2:3].
        let s = c.entry(-1, 0, 0);
        let value: Scalar = s
            .iter()
            .map(|(u, coef)| coef * &a[0].pow(u[0]) * a[1].pow(u[1]))
            .fold(Scalar::zero(q()), |acc, x| acc + x);
        assert!(value.is_zero());
    }

    #[test]
    fn koszul_for_p2_point_is_a_complex() {
        let a: Vec<Scalar> = [1, 2, 3].iter().map(|&x| Scalar::from_i64(q(), x)).collect();
        let c = LineBundleComplex::skyscraper_resolution(&a).unwrap();
        assert_eq!(c.term_count(), 3);
        assert_eq!(c.terms()[&-2], vec![vec![-2]]);
    }

    #[test]
    fn twisted_cotangent_terms() {
        let c = LineBundleComplex::twisted_cotangent(q(), 2, 1).unwrap();
        assert_eq!(c.terms()[&0].len(), 3);
        assert_eq!(c.terms()[&1], vec![vec![1]]);
        assert!(LineBundleComplex::twisted_cotangent(q(), 2, 3).is_err());
    }

    #[test]
    fn wrong_degree_entry_rejected() {
        let terms = BTreeMap::from([(0, vec![vec![0]]), (1, vec![vec![1]])]);
        let diffs = BTreeMap::from([(0, vec![vec![vec![(vec![2, 0], Scalar::one(q()))]]])]);
        assert!(matches!(LineBundleComplex::new(q(), vec![1], terms, diffs), Err(Error::InvalidSheaf(_))));
    }

    #[test]
    fn tensor_and_boxtimes() {
        let a = vec![Scalar::one(q()), Scalar::zero(q())];
        let s = LineBundleComplex::skyscraper_resolution(&a).unwrap();
        let t = s.tensor(&s).unwrap();
        assert_eq!(t.terms()[&-1].len(), 2);
        let b = s.boxtimes(&LineBundleComplex::line_bundle(q(), vec![1], vec![3])).unwrap();
        assert_eq!(b.terms()[&0], vec![vec![0, 3]]);
        assert_eq!(b.n_vars(), 4);
    }

    #[test]
    fn shift_flips_differential_sign() {
        let a = vec![Scalar::one(q()), Scalar::one(q())];
        let s = LineBundleComplex::skyscraper_resolution(&a).unwrap();
        let t = s.shift(1);
        assert_eq!(t.terms()[&-2], vec![vec![-1]]);
        assert_eq!(t.entry(-2, 0, 0), poly_scale(s.entry(-1, 0, 0), &-Scalar::one(q())).as_slice());
    }
}
