use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field: exact rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite or oversized moduli (products must fit in `u64`).
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn check(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self, other))
        }
    }

    /// Number of elements, if finite.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` or `fp:<prime>`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse {
                offset: 3,
                message: format!("bad prime '{p}'"),
            })?;
            return Field::prime(p);
        }
        Err(Error::Parse { offset: 0, message: format!("unknown field '{s}'") })
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Prime-field elements carry their modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, modulus: p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    /// `num / den` in the given field; `den` must be nonzero in that field.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Scalar> {
        let d = Scalar::from_i64(field, den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::Parse { offset: 0, message: format!("zero denominator {den}") })?;
        Ok(&Scalar::from_i64(field, num) * &inv)
    }

    pub fn from_bigrational(field: Field, q: &BigRational) -> Result<Scalar> {
        match field {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_string().parse::<u64>().expect("residue fits")
                };
                let num = Scalar::Mod { value: reduce(q.numer()), modulus: p };
                let den = Scalar::Mod { value: reduce(q.denom()), modulus: p };
                let inv = den.inv().ok_or_else(|| Error::Parse {
                    offset: 0,
                    message: format!("denominator of {q} vanishes mod {p}"),
                })?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses `a`, `-a`, or `a/b` into the field.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let q: BigRational = s.trim().parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("'{s}' is not a rational number"),
        })?;
        Scalar::from_bigrational(field, &q)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => {
                Scalar::Mod { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.field().check(other.field())?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.field().check(other.field())?;
        Ok(self * other)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Residue in `0..p` for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// A total order used only for canonical output (normalizing projective points, sorting).
    pub fn canonical_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Mod { .. }) => std::cmp::Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rational(_)) => std::cmp::Ordering::Greater,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Mod { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = Scalar::from_i64(f, 3);
        let b = Scalar::from_i64(f, 5);
        assert_eq!(&a * &b, Scalar::from_i64(f, 1));
        assert_eq!(&a - &b, Scalar::from_i64(f, 5));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(Scalar::from_i64(f, -1), Scalar::from_i64(f, 6));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = Scalar::one(Field::prime(3).unwrap());
        let b = Scalar::one(Field::prime(5).unwrap());
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(_, _))));
        assert!(a.checked_mul(&Scalar::one(Field::Rational)).is_err());
    }

    #[test]
    fn parses_fractions() {
        let q = Scalar::parse(Field::Rational, "-3/6").unwrap();
        assert_eq!(q, Scalar::from_ratio(Field::Rational, -1, 2).unwrap());
        let f5 = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(Scalar::parse(f5, "1/2").unwrap(), Scalar::from_i64(f5, 3));
        assert!(Scalar::parse(f5, "1/5").is_err());
        assert_eq!("fp:11".parse::<Field>().unwrap(), Field::Prime(11));
    }
}
