//! Finite-dimensional unital algebras given by structure constants.

use rand::Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{random_scalar, Field, Matrix, Scalar};

/// `μ(e_i, e_j) = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    constants: Vec<Scalar>,
    unit: Vec<Scalar>,
    commutative: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    unit: Vec<serde_json::Value>,
    structure_constants: Vec<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    field: Option<String>,
}

fn parse_entry(field: Field, v: &serde_json::Value, what: &str) -> Result<Scalar> {
    match v {
        serde_json::Value::String(s) => {
            Scalar::parse(field, s).map_err(|e| Error::InvalidAlgebra(format!("{what}: {e}")))
        }
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|x| Scalar::from_i64(field, x))
            .ok_or_else(|| Error::InvalidAlgebra(format!("{what}: non-integer number {n}"))),
        other => Err(Error::InvalidAlgebra(format!("{what}: expected string or integer, got {other}"))),
    }
}

impl Algebra {
    pub fn new(field: Field, dim: usize, constants: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dim must be positive".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "structure_constants: expected {} entries, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!("unit: expected length {dim}, got {}", unit.len())));
        }
        for s in constants.iter().chain(&unit) {
            field.check(s.field())?;
        }
        let mut a = Algebra { field, dim, constants, unit, commutative: false };
        a.validate()?;
        a.commutative = (0..dim).all(|i| (0..dim).all(|j| (0..dim).all(|k| a.c(i, j, k) == a.c(j, i, k))));
        Ok(a)
    }

    /// Builds from integer constants `c[i][j][k]` and unit coordinates.
    pub fn from_i64(field: Field, dim: usize, c: impl Fn(usize, usize, usize) -> i64, unit: &[i64]) -> Result<Algebra> {
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    constants.push(Scalar::from_i64(field, c(i, j, k)));
                }
            }
        }
        let unit = unit.iter().map(|&x| Scalar::from_i64(field, x)).collect();
        Algebra::new(field, dim, constants, unit)
    }

    pub fn from_json(text: &str, default_field: Field) -> Result<Algebra> {
        let f: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        let field = match &f.field {
            Some(s) => s
                .parse::<Field>()
                .map_err(|_| Error::InvalidAlgebra(format!("field: cannot parse {s:?}")))?,
            None => default_field,
        };
        let d = f.dim;
        if f.structure_constants.len() != d
            || f.structure_constants.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d))
        {
            return Err(Error::InvalidAlgebra(format!("structure_constants: expected a {d}x{d}x{d} array")));
        }
        let mut constants = Vec::with_capacity(d * d * d);
        for (i, plane) in f.structure_constants.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    constants.push(parse_entry(field, v, &format!("structure_constants[{i}][{j}][{k}]"))?);
                }
            }
        }
        let unit = f
            .unit
            .iter()
            .enumerate()
            .map(|(i, v)| parse_entry(field, v, &format!("unit[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(field, d, constants, unit)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim;
        let sc: Vec<Vec<Vec<String>>> = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.c(i, j, k).to_string()).collect()).collect())
            .collect();
        serde_json::json!({
            "dim": d,
            "unit": self.unit.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "structure_constants": sc,
            "field": match self.field {
                Field::Rational => "q".to_string(),
                Field::Prime(p) => format!("fp:{p}"),
            },
        })
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut lhs = Scalar::zero(self.field);
                        let mut rhs = Scalar::zero(self.field);
                        for m in 0..d {
                            lhs = &lhs + &(self.c(i, j, m) * self.c(m, k, l));
                            rhs = &rhs + &(self.c(j, k, m) * self.c(i, m, l));
                        }
                        if lhs != rhs {
                            return Err(Error::InvalidAlgebra(format!(
                                "not associative: (e{i} e{j}) e{k} != e{i} (e{j} e{k})"
                            )));
                        }
                    }
                }
            }
        }
        for i in 0..d {
            let e = self.basis(i);
            if self.multiply(&self.unit, &e)? != e || self.multiply(&e, &self.unit)? != e {
                return Err(Error::InvalidAlgebra(format!("unit does not act trivially on e{i}")));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| if k == i { Scalar::one(self.field) } else { Scalar::zero(self.field) })
            .collect()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.dim]
    }

    pub fn element(&self, coords: &[i64]) -> Result<Vec<Scalar>> {
        if coords.len() != self.dim {
            return Err(Error::Dimension(format!("element of length {} in an algebra of dim {}", coords.len(), self.dim)));
        }
        Ok(coords.iter().map(|&x| Scalar::from_i64(self.field, x)).collect())
    }

    fn check_element(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::Dimension(format!("element of length {} in an algebra of dim {}", x.len(), self.dim)));
        }
        for s in x {
            self.field.check(s.field())?;
        }
        Ok(())
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let d = self.dim;
        let mut out = self.zero();
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&xy * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.multiply(x, &self.basis(j))).collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.field, self.dim, &cols))
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.multiply(&self.basis(j), x)).collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.field, self.dim, &cols))
    }

    pub fn is_invertible(&self, x: &[Scalar]) -> Result<bool> {
        let left = self.left_mult_matrix(x)?.rank() == self.dim;
        let right = self.right_mult_matrix(x)?.rank() == self.dim;
        if left != right {
            return Err(Error::InvalidAlgebra("left and right invertibility disagree".into()));
        }
        Ok(left)
    }

    pub fn inverse(&self, x: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        Ok(self.left_mult_matrix(x)?.solve(&self.unit))
    }

    pub fn is_zero_element(x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    /// `Δ(e_k^∨) = Σ c_ij^k e_i^∨ ⊗ e_j^∨`, listing nonzero terms `(i, j, c)` for each `k`.
    pub fn dual_comultiplication(&self) -> Vec<Vec<(usize, usize, Scalar)>> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let mut terms = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        let c = self.c(i, j, k);
                        if !c.is_zero() {
                            terms.push((i, j, c.clone()));
                        }
                    }
                }
                terms
            })
            .collect()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Vec<Scalar> {
        (0..self.dim).map(|_| random_scalar(self.field, rng)).collect()
    }

    /// Every element of the algebra over a prime field, in lexicographic order of residues.
    pub fn all_elements(&self, limit: u64) -> Result<Vec<Vec<Scalar>>> {
        let p = self
            .field
            .order()
            .ok_or_else(|| Error::Unsupported("enumeration needs a prime field".into()))?;
        let total = p.checked_pow(self.dim as u32).filter(|&t| t <= limit).ok_or_else(|| {
            Error::EnumerationBound(format!("{p}^{} elements exceed the bound {limit}", self.dim))
        })?;
        Ok((0..total)
            .map(|mut n| {
                let mut v = vec![Scalar::zero(self.field); self.dim];
                for slot in v.iter_mut().rev() {
                    *slot = Scalar::from_i64(self.field, (n % p) as i64);
                    n /= p;
                }
                v
            })
            .collect())
    }

    /// `k^n` with idempotent basis.
    pub fn product_algebra(field: Field, n: usize) -> Algebra {
        Algebra::from_i64(field, n, |i, j, k| i64::from(i == j && j == k), &vec![1; n]).expect("valid")
    }

    /// `k[ε]/ε^m` with basis `1, ε, …, ε^{m-1}`.
    pub fn truncated_poly(field: Field, m: usize) -> Algebra {
        let mut unit = vec![0; m];
        unit[0] = 1;
        Algebra::from_i64(field, m, |i, j, k| i64::from(i + j == k), &unit).expect("valid")
    }

    /// `k[x,y]/(x², xy, y²)` with basis `1, x, y`.
    pub fn monomial_square(field: Field) -> Algebra {
        Algebra::from_i64(field, 3, |i, j, k| i64::from((i == 0 && j == k) || (j == 0 && i == k && i != 0)), &[1, 0, 0])
            .expect("valid")
    }

    /// `End(k^m)` with matrix units `e_{ab}` at index `a·m + b`.
    pub fn matrix_algebra(field: Field, m: usize) -> Algebra {
        let unit: Vec<i64> = (0..m * m).map(|i| i64::from(i / m == i % m)).collect();
        Algebra::from_i64(
            field,
            m * m,
            |i, j, k| {
                let (a, b, c, d) = (i / m, i % m, j / m, j % m);
                i64::from(b == c && k == a * m + d)
            },
            &unit,
        )
        .expect("valid")
    }

    /// Upper triangular `m × m` matrices, matrix units `e_{ab}` with `a ≤ b` in lexicographic order.
    pub fn upper_triangular(field: Field, m: usize) -> Algebra {
        let units: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| units.iter().position(|&u| u == (a, b));
        let unit: Vec<i64> = units.iter().map(|&(a, b)| i64::from(a == b)).collect();
        Algebra::from_i64(
            field,
            units.len(),
            |i, j, k| {
                let ((a, b), (c, d)) = (units[i], units[j]);
                i64::from(b == c && index(a, d) == Some(k))
            },
            &unit,
        )
        .expect("valid")
    }

    /// `A × k`, the new idempotent placed last.
    pub fn with_unit_adjoined(&self) -> Algebra {
        let d = self.dim;
        let n = d + 1;
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = if i < d && j < d && k < d {
                        self.c(i, j, k).clone()
                    } else {
                        Scalar::from_i64(self.field, i64::from(i == d && j == d && k == d))
                    };
                    constants.push(s);
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.push(Scalar::one(self.field));
        Algebra::new(self.field, n, constants, unit).expect("product of algebras is valid")
    }

    pub const PRESETS: [&'static str; 7] = ["k2", "k3", "dual2", "dual3", "msq", "mat2", "ut2"];

    pub fn preset(name: &str, field: Field) -> Option<Algebra> {
        Some(match name {
            "k2" => Algebra::product_algebra(field, 2),
            "k3" => Algebra::product_algebra(field, 3),
            "dual2" => Algebra::truncated_poly(field, 2),
            "dual3" => Algebra::truncated_poly(field, 3),
            "msq" => Algebra::monomial_square(field),
            "mat2" => Algebra::matrix_algebra(field, 2),
            "ut2" => Algebra::upper_triangular(field, 2),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn product_idempotents_annihilate() {
        let a = Algebra::product_algebra(q(), 2);
        let x = a.multiply(&a.element(&[1, 0]).unwrap(), &a.element(&[0, 1]).unwrap()).unwrap();
        assert!(Algebra::is_zero_element(&x));
    }

    #[test]
    fn dual_numbers() {
        let a = Algebra::truncated_poly(q(), 2);
        let eps = a.element(&[0, 1]).unwrap();
        assert!(Algebra::is_zero_element(&a.multiply(&eps, &eps).unwrap()));
        assert!(a.is_invertible(&a.element(&[1, 1]).unwrap()).unwrap());
        assert!(!a.is_invertible(&eps).unwrap());
    }

    #[test]
    fn truncated_cubic() {
        let a = Algebra::truncated_poly(q(), 3);
        let eps = a.element(&[0, 1, 0]).unwrap();
        let e2 = a.multiply(&eps, &eps).unwrap();
        assert!(!Algebra::is_zero_element(&e2));
        assert!(Algebra::is_zero_element(&a.multiply(&e2, &eps).unwrap()));
    }

    #[test]
    fn matrix_product_matches_direct() {
        let a = Algebra::matrix_algebra(q(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = a.random_element(&mut rng);
            let y = a.random_element(&mut rng);
            let xm = Matrix::from_fn(q(), 2, 2, |r, c| x[r * 2 + c].clone());
            let ym = Matrix::from_fn(q(), 2, 2, |r, c| y[r * 2 + c].clone());
            let z = xm.mul(&ym).unwrap();
            let direct: Vec<Scalar> = (0..4).map(|i| z.get(i / 2, i % 2).clone()).collect();
            assert_eq!(a.multiply(&x, &y).unwrap(), direct);
        }
    }

    #[test]
    fn builders_and_commutativity() {
        assert!(Algebra::product_algebra(q(), 3).is_commutative());
        assert!(Algebra::monomial_square(q()).is_commutative());
        assert!(!Algebra::matrix_algebra(q(), 2).is_commutative());
        let ut = Algebra::upper_triangular(q(), 2);
        assert_eq!(ut.dim(), 3);
        assert!(!ut.is_commutative());
        assert_eq!(Algebra::truncated_poly(q(), 2).with_unit_adjoined().dim(), 3);
    }

    #[test]
    fn non_associative_rejected() {
        // e0·e0 = e1, everything else zero except unit: not unital either.
        let r = Algebra::from_i64(q(), 2, |i, j, k| i64::from(i == 1 && j == 1 && k == 0), &[0, 1]);
        assert!(r.is_err());
    }

    #[test]
    fn matrix_comultiplication() {
        let a = Algebra::matrix_algebra(q(), 2);
        let delta = a.dual_comultiplication();
        // Δ(e11^∨) = e11^∨⊗e11^∨ + e12^∨⊗e21^∨
        let pairs: Vec<(usize, usize)> = delta[0].iter().map(|t| (t.0, t.1)).collect();
        assert_eq!(pairs, vec![(0, 0), (1, 2)]);
    }

    #[test]
    fn left_right_invertibility_agree() {
        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for a in [Algebra::matrix_algebra(f7, 2), Algebra::upper_triangular(f7, 2)] {
            for _ in 0..100 {
                let x = a.random_element(&mut rng);
                let inv = a.is_invertible(&x).unwrap();
                assert_eq!(inv, a.inverse(&x).unwrap().is_some());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let a = Algebra::upper_triangular(q(), 2);
        let text = a.to_json().to_string();
        assert_eq!(Algebra::from_json(&text, q()).unwrap(), a);
        let f5 = Algebra::truncated_poly(Field::prime(5).unwrap(), 3);
        assert_eq!(Algebra::from_json(&f5.to_json().to_string(), q()).unwrap(), f5);
        assert!(Algebra::from_json(r#"{"dim":1,"unit":["1"],"structure_constants":[[["1"]]],"bogus":0}"#, q()).is_err());
    }

    #[test]
    fn enumeration_bound() {
        let a = Algebra::product_algebra(Field::prime(3).unwrap(), 2);
        assert_eq!(a.all_elements(100).unwrap().len(), 9);
        assert!(matches!(a.all_elements(5), Err(Error::EnumerationBound(_))));
    }
}
