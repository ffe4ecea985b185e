use std::collections::BTreeMap;

use itertools::Itertools;

use super::cech::cech_cohomology_graded;
use super::complex::{contraction, LineBundleComplex};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::quiver::Poly;

/// Largest projective space the kernel is built for.
pub const MAX_KERNEL_DIM: usize = 3;

/// The Beilinson resolution of the diagonal on `Pⁿ × Pⁿ`, terms `Ω^i(i) ⊠ O(-i)`.
///
/// Each `Ω^i(i)`, `i ≥ 1`, is replaced by its left Koszul resolution
/// `∧^{i+1+m} V ⊗ O(-1-m)`, so the complex is one of line bundles. With `ambient`
/// set, the second factor is read as the graded coordinate ring.
#[derive(Clone, Debug)]
pub struct BeilinsonKernel {
    pub n: usize,
    pub ambient: bool,
    pub complex: LineBundleComplex,
}

fn linear_forms(field: Field, n_vars: usize, offset: usize, count: usize) -> Vec<Poly> {
    (0..count)
        .map(|j| {
            let mut u = vec![0u32; n_vars];
            u[offset + j] = 1;
            vec![(u, Scalar::one(field))]
        })
        .collect()
}

fn poly_matmul(field: Field, a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
                    for k in 0..inner {
                        for (u, x) in &row[k] {
                            for (v, y) in &b[k][c] {
                                let w: Vec<u32> = u.iter().zip(v).map(|(p, q)| p + q).collect();
                                let e = acc.entry(w).or_insert_with(|| Scalar::zero(field));
                                *e = &*e + &(x * y);
                            }
                        }
                    }
                    acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
                })
                .collect()
        })
        .collect()
}

fn binom(n: usize, k: usize) -> usize {
    (0..n).combinations(k).count()
}

impl BeilinsonKernel {
    pub fn new(field: Field, n: usize, ambient: bool) -> Result<BeilinsonKernel> {
        if n == 0 || n > MAX_KERNEL_DIM {
            return Err(Error::Unsupported(format!("Beilinson kernel for P^{n}")));
        }
        let rank = n + 1;
        let nv = 2 * rank;
        let xs = linear_forms(field, nv, 0, rank);
        let ys = linear_forms(field, nv, rank, rank);
        // Components (i, m) at degree -i-m; (0, 0) is O ⊠ O.
        let components = |deg: i64| -> Vec<(usize, usize)> {
            let k = (-deg) as usize;
            if deg > 0 || k > n {
                return Vec::new();
            }
            if k == 0 {
                return vec![(0, 0)];
            }
            (1..=k).map(|i| (i, k - i)).filter(|&(i, m)| m <= n - i).collect()
        };
        let width = |(i, m): (usize, usize)| if i == 0 { 1 } else { binom(rank, i + 1 + m) };
        let twist = |(i, m): (usize, usize)| if i == 0 { vec![0, 0] } else { vec![-1 - m as i64, -(i as i64)] };
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for deg in -(n as i64)..=0 {
            let comps = components(deg);
            let tw: Vec<Vec<i64>> =
                comps.iter().flat_map(|&c| std::iter::repeat_n(twist(c), width(c))).collect();
            terms.insert(deg, tw);
            if deg == 0 {
                continue;
            }
            let targets = components(deg + 1);
            let rows: usize = targets.iter().map(|&c| width(c)).sum();
            let cols: usize = comps.iter().map(|&c| width(c)).sum();
            let mut m = vec![vec![Vec::new(); cols]; rows];
            let mut col0 = 0;
            for &(i, mm) in &comps {
                let mut row0 = 0;
                for &(ti, tm) in &targets {
                    let block: Option<Vec<Vec<Poly>>> = if ti == 0 && i == 1 && mm == 0 {
                        let ix = contraction(field, rank, 2, &xs);
                        let iy = contraction(field, rank, 1, &ys);
                        Some(poly_matmul(field, &iy, &ix))
                    } else if ti == i && tm + 1 == mm {
                        Some(contraction(field, rank, i + 1 + mm, &xs))
                    } else if ti + 1 == i && tm == mm && ti >= 1 {
                        Some(contraction(field, rank, i + 1 + mm, &ys))
                    } else {
                        None
                    };
                    if let Some(b) = block {
                        for (r, row) in b.into_iter().enumerate() {
                            for (c, p) in row.into_iter().enumerate() {
                                m[row0 + r][col0 + c] = p;
                            }
                        }
                    }
                    row0 += width((ti, tm));
                }
                col0 += width((i, mm));
            }
            diffs.insert(deg, m);
        }
        let complex = LineBundleComplex::new(field, vec![n, n], terms, diffs)?;
        Ok(BeilinsonKernel { n, ambient, complex })
    }

    /// The terms `Ω^i(i) ⊠ O(-i)` as (i, second-factor twist), in degree order.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        (0..=self.n).rev().map(|i| (i, -(i as i64))).collect()
    }

    pub fn term_count(&self) -> usize {
        self.terms().len()
    }

    /// Hypercohomology dimensions of the kernel against `O(a) ⊠ O(b)`.
    pub fn hypercohomology(&self, a: i64, b: i64) -> Result<BTreeMap<i64, usize>> {
        cech_cohomology_graded(&self.complex, &[a, b], &[false, self.ambient])
    }
}
