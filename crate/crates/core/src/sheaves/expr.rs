use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// A named sheaf: line bundles, the simples `Ω^i(i)[i]`, skyscrapers, shifts and sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SheafExpr {
    LineBundle(i64),
    /// `Ω^i(i)[i]`.
    TwistedCotangentSimple(usize),
    /// A point `[a]`, stored with its first nonzero coordinate equal to 1.
    Skyscraper(Vec<Scalar>),
    Shift(i64, Box<SheafExpr>),
    Sum(Box<SheafExpr>, Box<SheafExpr>),
}

/// Rescales so the first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize_point(a: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = a.iter().find(|x| !x.is_zero())?.inv()?;
    Some(a.iter().map(|x| x * &lead).collect())
}

impl SheafExpr {
    pub fn skyscraper(a: &[Scalar]) -> Result<SheafExpr> {
        normalize_point(a)
            .map(SheafExpr::Skyscraper)
            .ok_or_else(|| Error::InvalidSheaf("skyscraper at the zero element".into()))
    }

    pub fn shift(n: i64, e: SheafExpr) -> SheafExpr {
        SheafExpr::Shift(n, Box::new(e))
    }

    pub fn sum(a: SheafExpr, b: SheafExpr) -> SheafExpr {
        SheafExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str, field: Field) -> Result<SheafExpr> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0, field };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// The coordinate count of every skyscraper leaf, if they agree.
    pub fn point_dimension(&self) -> Option<usize> {
        match self {
            SheafExpr::Skyscraper(a) => Some(a.len()),
            SheafExpr::Shift(_, e) => e.point_dimension(),
            SheafExpr::Sum(a, b) => a.point_dimension().or_else(|| b.point_dimension()),
            _ => None,
        }
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafExpr::LineBundle(d) => write!(f, "O({d})"),
            SheafExpr::TwistedCotangentSimple(i) => write!(f, "Omega({i})"),
            SheafExpr::Skyscraper(a) => {
                let parts: Vec<String> = a.iter().map(Scalar::to_string).collect();
                write!(f, "sky[{}]", parts.join(","))
            }
            SheafExpr::Shift(n, e) => write!(f, "shift({n},{e})"),
            SheafExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    field: Field,
}

impl Parser {
    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn token(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit() || c.is_whitespace() || matches!(c, '-' | '+' | '/')) {
            self.pos += 1;
        }
        (start, self.chars[start..self.pos].iter().filter(|c| !c.is_whitespace()).collect())
    }

    fn integer(&mut self) -> Result<i64> {
        let (start, t) = self.token();
        t.parse().map_err(|_| Error::Parse { offset: start, message: format!("expected an integer, found '{t}'") })
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let (start, t) = self.token();
        Scalar::parse(self.field, &t).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse { offset: start, message },
            other => other,
        })
    }

    fn expr(&mut self) -> Result<SheafExpr> {
        self.skip_ws();
        let start = self.pos;
        if self.keyword("Omega") {
            self.eat('(')?;
            let at = self.pos;
            let i = self.integer()?;
            self.eat(')')?;
            let i = usize::try_from(i)
                .map_err(|_| Error::Parse { offset: at, message: "Omega index must be nonnegative".into() })?;
            Ok(SheafExpr::TwistedCotangentSimple(i))
        } else if self.keyword("O") {
            self.eat('(')?;
            let d = self.integer()?;
            self.eat(')')?;
            Ok(SheafExpr::LineBundle(d))
        } else if self.keyword("sky") {
            self.eat('[')?;
            let mut a = vec![self.scalar()?];
            loop {
                self.skip_ws();
                if self.chars.get(self.pos) == Some(&']') {
                    self.pos += 1;
                    break;
                }
                self.eat(',')?;
                a.push(self.scalar()?);
            }
            SheafExpr::skyscraper(&a)
                .map_err(|_| Error::Parse { offset: start, message: "skyscraper at the zero element".into() })
        } else if self.keyword("shift") {
            self.eat('(')?;
            let n = self.integer()?;
            self.eat(',')?;
            let e = self.expr()?;
            self.eat(')')?;
            Ok(SheafExpr::shift(n, e))
        } else if self.keyword("sum") {
            self.eat('(')?;
            let a = self.expr()?;
            self.eat(',')?;
            let b = self.expr()?;
            self.eat(')')?;
            Ok(SheafExpr::sum(a, b))
        } else {
            Err(self.error("expected O(d), Omega(i), sky[...], shift(n, e) or sum(e, e)"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn parses_leaves_and_nodes() {
        let e = SheafExpr::parse(" sum( O(-1) , shift(1, Omega(2)) )", q()).unwrap();
        assert_eq!(
            e,
            SheafExpr::sum(SheafExpr::LineBundle(-1), SheafExpr::shift(1, SheafExpr::TwistedCotangentSimple(2)))
        );
        assert_eq!(e.to_string(), "sum(O(-1),shift(1,Omega(2)))");
    }

    #[test]
    fn skyscrapers_are_projective() {
        let a = SheafExpr::parse("sky[2, 4]", q()).unwrap();
        let b = SheafExpr::parse("sky[1/2,1]", q()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "sky[1,2]");
        assert_eq!(SheafExpr::parse("sky[0,3]", Field::Prime(7)).unwrap().to_string(), "sky[0,1]");
    }

    #[test]
    fn errors_carry_offsets() {
        let err = SheafExpr::parse("sum(O(1), Q(2))", q()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 10, .. }), "{err:?}");
        let err = SheafExpr::parse("O(x)", q()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 2, .. }));
        assert!(matches!(SheafExpr::parse("sky[0,0]", q()).unwrap_err(), Error::Parse { offset: 0, .. }));
        assert!(matches!(SheafExpr::parse("O(1) x", q()).unwrap_err(), Error::Parse { offset: 5, .. }));
        assert!(SheafExpr::parse("Omega(-1)", q()).is_err());
    }

    fn leaf() -> impl Strategy<Value = SheafExpr> {
        prop_oneof![
            (-5i64..5).prop_map(SheafExpr::LineBundle),
            (0usize..4).prop_map(SheafExpr::TwistedCotangentSimple),
            proptest::collection::vec(-3i64..4, 2..4).prop_filter_map("nonzero", |v| {
                let a: Vec<Scalar> = v.iter().map(|&x| Scalar::from_i64(Field::Rational, x)).collect();
                SheafExpr::skyscraper(&a).ok()
            }),
        ]
    }

    fn expr() -> impl Strategy<Value = SheafExpr> {
        leaf().prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (-3i64..3, inner.clone()).prop_map(|(n, e)| SheafExpr::shift(n, e)),
                (inner.clone(), inner).prop_map(|(a, b)| SheafExpr::sum(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(e in expr()) {
            prop_assert_eq!(SheafExpr::parse(&e.to_string(), Field::Rational).unwrap(), e.clone());
            let spaced: String = e
                .to_string()
                .chars()
                .map(|c| if "()[],-/".contains(c) { format!(" {c} ") } else { c.to_string() })
                .collect();
            prop_assert_eq!(SheafExpr::parse(&spaced, Field::Rational).unwrap(), e);
        }
    }
}
