use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// Finds `c` with `cφ` a monoid homomorphism `A → A'`, where column `i` of `φ` is `φ(e_i)`.
///
/// `c` is read off the first basis pair with `φe_i · φe_j ≠ 0`, starting at `(0, 0)`,
/// and then `φ(e_i e_j) = c · φ(e_i) φ(e_j)` is checked on every pair.
pub fn rescale_monoid_hom(a: &Algebra, b: &Algebra, phi: &Matrix) -> Result<Scalar> {
    let d = a.dim();
    if b.dim() != d || phi.rows() != d || phi.cols() != d {
        return Err(Error::Dimension(format!("map must be {d}x{d} between algebras of equal dimension")));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    if phi.inverse().is_none() {
        return Err(Error::Dimension("map is not invertible".into()));
    }
    let images: Vec<Vec<Scalar>> = (0..d).map(|i| phi.column(i)).collect();
    let lhs = |i: usize, j: usize| -> Result<Vec<Scalar>> { phi.apply(&a.multiply(&a.basis(i), &a.basis(j))?) };
    let rhs = |i: usize, j: usize| -> Result<Vec<Scalar>> { b.multiply(&images[i], &images[j]) };
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    let mut c = None;
    for &(i, j) in &pairs {
        let r = rhs(i, j)?;
        if let Some(k) = r.iter().position(|x| !x.is_zero()) {
            c = Some(&lhs(i, j)?[k] * &r[k].inv().expect("nonzero"));
            break;
        }
    }
    let c = c.ok_or(Error::NotMonoidHom(0, 0))?;
    if c.is_zero() {
        return Err(Error::NotMonoidHom(0, 0));
    }
    for &(i, j) in &pairs {
        let r: Vec<Scalar> = rhs(i, j)?.iter().map(|x| x * &c).collect();
        if lhs(i, j)? != r {
            return Err(Error::NotMonoidHom(i, j));
        }
    }
    Ok(c)
}

/// Checks `cφ(xy) = cφ(x) · cφ(y)` on every basis pair.
pub fn is_monoid_hom(a: &Algebra, b: &Algebra, phi: &Matrix) -> Result<bool> {
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            let lhs = phi.apply(&a.multiply(&a.basis(i), &a.basis(j))?)?;
            if lhs != b.multiply(&phi.column(i), &phi.column(j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_and_scalar_multiples() {
        let a = Algebra::preset("k2", q()).unwrap();
        let id = Matrix::identity(q(), 2);
        assert_eq!(rescale_monoid_hom(&a, &a, &id).unwrap(), Scalar::one(q()));
        let two = id.scale(&Scalar::from_i64(q(), 2));
        let c = rescale_monoid_hom(&a, &a, &two).unwrap();
        assert_eq!(c, Scalar::from_ratio(q(), 1, 2).unwrap());
        assert!(is_monoid_hom(&a, &a, &two.scale(&c)).unwrap());
    }

    #[test]
    fn swap_is_a_homomorphism() {
        let a = Algebra::preset("k2", q()).unwrap();
        let swap = Matrix::from_i64_rows(q(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(rescale_monoid_hom(&a, &a, &swap).unwrap(), Scalar::one(q()));
    }

    #[test]
    fn shear_is_rejected_with_witness() {
        let a = Algebra::preset("k2", q()).unwrap();
        let shear = Matrix::from_i64_rows(q(), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(rescale_monoid_hom(&a, &a, &shear), Err(Error::NotMonoidHom(_, _))));
    }
}
