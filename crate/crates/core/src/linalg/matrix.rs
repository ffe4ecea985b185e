use std::fmt;

use rand::Rng;

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field. Column vectors are acted on from the left.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for s in &data {
            field.check(s.field())?;
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Integer entries, given as rows.
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix::from_fn(field, r, c, |i, j| Scalar::from_i64(field, rows[i][j])))
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn random<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| random_scalar(field, rng))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert_eq!(s.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = s;
    }

    pub fn add_to(&mut self, i: usize, j: usize, s: &Scalar) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check(other.field)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    *o = &*o + &a.checked_mul(x)?;
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.check(other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..*self.shape_only() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..*self.shape_only() })
    }

    fn shape_only(&self) -> Box<Matrix> {
        Box::new(Matrix { field: self.field, rows: self.rows, cols: self.cols, data: Vec::new() })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|a| a * s).collect(), ..*self.shape_only() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { data: self.data.iter().map(|a| -a).collect(), ..*self.shape_only() }
    }

    /// Kronecker product: index `(i1 * r2 + i2, j1 * c2 + j2)`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check(other.field)?;
        let (r2, c2) = (other.rows, other.cols);
        Ok(Matrix::from_fn(self.field, self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        }))
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check(other.field)?;
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        Ok(m)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if !rj.is_zero() {
                        let v = m.get(i, j) - &(&f * rj);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank by sparse incremental elimination; suited to the very sparse Čech matrices.
    pub fn rank(&self) -> usize {
        let mut echelon = SparseEchelon::new(self.cols);
        for i in 0..self.rows {
            let row: Vec<(usize, Scalar)> = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(j, s)| (j, s.clone()))
                .collect();
            echelon.insert(row);
        }
        echelon.rank()
    }

    /// Rank together with a basis of the right kernel (as column vectors).
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(self.field); self.cols];
                v[f] = Scalar::one(self.field);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        if b.len() != self.rows {
            return None;
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        aug.set_block(0, 0, self);
        for (i, s) in b.iter().enumerate() {
            aug.set(i, self.cols, s.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = Scalar::one(self.field);
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

/// Row echelon basis built one sparse row at a time.
pub(crate) struct SparseEchelon {
    pivot_rows: Vec<Option<Vec<(usize, Scalar)>>>,
    rank: usize,
}

impl SparseEchelon {
    pub(crate) fn new(cols: usize) -> SparseEchelon {
        SparseEchelon { pivot_rows: vec![None; cols], rank: 0 }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` (sorted by column, nonzero entries) and records it if independent.
    pub(crate) fn insert(&mut self, mut row: Vec<(usize, Scalar)>) -> bool {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match &self.pivot_rows[lead] {
                Some(pivot) => {
                    row = sparse_axpy(&row, &coeff, pivot);
                }
                None => {
                    let inv = coeff.inv().expect("leading entry is nonzero");
                    let normalized = row.into_iter().map(|(j, s)| (j, &s * &inv)).collect();
                    self.pivot_rows[lead] = Some(normalized);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }
}

/// `row - coeff * pivot`, dropping zeros. Both inputs sorted by column.
fn sparse_axpy(row: &[(usize, Scalar)], coeff: &Scalar, pivot: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map(|e| e.0);
        let cb = pivot.get(b).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &row[a].1 - &(coeff * &pivot[b].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(row[a].clone());
                a += 1;
            }
            (Some(_), None) => {
                out.push(row[a].clone());
                a += 1;
            }
            (_, Some(y)) => {
                out.push((y, -&(coeff * &pivot[b].1)));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => Scalar::from_i64(field, rng.gen_range(-3..=3)),
        Field::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p as i64)),
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over {} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(Field::Rational, rows).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = Matrix::identity(Field::Rational, 3).rank_and_kernel();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (r, k) = Matrix::zeros(Field::Rational, 2, 3).rank_and_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 3);
    }

    /// Rank as the largest nonvanishing minor, by exhaustive expansion.
    fn minor_rank(m: &Matrix) -> usize {
        use itertools::Itertools;
        for size in (1..=m.rows().min(m.cols())).rev() {
            for rows in (0..m.rows()).combinations(size) {
                for cols in (0..m.cols()).combinations(size) {
                    let sub = Matrix::from_fn(m.field(), size, size, |i, j| m.get(rows[i], cols[j]).clone());
                    if !laplace_det(&sub).is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    fn laplace_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Scalar::zero(m.field());
        for j in 0..n {
            let minor = Matrix::from_fn(m.field(), n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j) * &laplace_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn random_f5_rank_matches_minor_oracle() {
        let f5 = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = Matrix::random(f5, 4, 4, &mut rng);
            let (r, kernel) = m.rank_and_kernel();
            assert_eq!(r, minor_rank(&m));
            assert_eq!(m.rank(), r);
            assert_eq!(r + kernel.len(), 4);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = q(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let (r, kernel) = m.rank_and_kernel();
        assert_eq!(r, 1);
        for v in kernel {
            assert!(m.apply(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Matrix::identity(Field::Rational, 2);
        let b = Matrix::identity(Field::prime(3).unwrap(), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_, _))));
        assert!(a.kron(&b).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = q(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.determinant().unwrap(), Scalar::from_i64(Field::Rational, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Field::Rational, 2));
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_finds_preimage() {
        let m = q(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = vec![Scalar::from_i64(Field::Rational, 2), Scalar::from_i64(Field::Rational, 3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
        let m2 = q(&[vec![1, 1], vec![1, 1]]);
        assert!(m2.solve(&[Scalar::one(Field::Rational), Scalar::zero(Field::Rational)]).is_none());
    }

    #[test]
    fn kron_indexing() {
        let a = q(&[vec![1, 2]]);
        let b = q(&[vec![0], vec![3]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k, q(&[vec![0, 0], vec![3, 6]]));
    }
}
