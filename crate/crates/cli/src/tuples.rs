//! Comma-separated integer tuples such as `(0,0),(1,0),(-2,1)`.

use crate::failure::Failure;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    what: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn fail(&self, message: impl std::fmt::Display) -> Failure {
        Failure::validation(format!("{}: offset {}: {message}", self.what, self.pos))
    }

    fn expect(&mut self, c: char) -> Result<(), Failure> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.fail(format!("expected '{c}', found '{d}'"))),
            None => Err(self.fail(format!("expected '{c}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<i64, Failure> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos).is_some_and(|&c| c == '-' || c == '+') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.fail("expected an integer")
        })
    }

    fn tuple(&mut self) -> Result<Vec<i64>, Failure> {
        if self.peek() != Some('(') {
            return Ok(vec![self.integer()?]);
        }
        self.expect('(')?;
        let mut out = vec![self.integer()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.integer()?);
        }
        self.expect(')')?;
        Ok(out)
    }
}

/// A list of tuples; a bare integer is read as a one-element tuple.
pub fn parse_tuple_list(text: &str, what: &str) -> Result<Vec<Vec<i64>>, Failure> {
    let mut c = Cursor { chars: text.chars().collect(), pos: 0, what };
    let mut out = vec![c.tuple()?];
    while c.peek() == Some(',') {
        c.pos += 1;
        out.push(c.tuple()?);
    }
    if c.peek().is_some() {
        return Err(c.fail("unexpected trailing input"));
    }
    if let Some(w) = out.iter().find(|w| w.len() != out[0].len()) {
        return Err(Failure::validation(format!(
            "{what}: tuples of different lengths {} and {}",
            out[0].len(),
            w.len()
        )));
    }
    Ok(out)
}

/// A single tuple, with or without parentheses.
pub fn parse_tuple(text: &str, what: &str) -> Result<Vec<i64>, Failure> {
    let mut c = Cursor { chars: text.chars().collect(), pos: 0, what };
    let out = if c.peek() == Some('(') {
        c.tuple()?
    } else {
        let mut v = vec![c.integer()?];
        while c.peek() == Some(',') {
            c.pos += 1;
            v.push(c.integer()?);
        }
        v
    };
    if c.peek().is_some() {
        return Err(c.fail("unexpected trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_of_pairs() {
        let w = parse_tuple_list("(0,0), (1,0),(-2, 1)", "weights").unwrap();
        assert_eq!(w, vec![vec![0, 0], vec![1, 0], vec![-2, 1]]);
    }

    #[test]
    fn bare_integers_are_singletons() {
        assert_eq!(parse_tuple_list("0,2", "weights").unwrap(), vec![vec![0], vec![2]]);
        assert_eq!(parse_tuple_list("(0),(-1)", "weights").unwrap(), vec![vec![0], vec![-1]]);
    }

    #[test]
    fn errors_name_the_offset() {
        let e = parse_tuple_list("(0,0),(1,x)", "weights").unwrap_err();
        assert_eq!(e.message, "weights: offset 9: expected an integer");
        let e = parse_tuple_list("(0,0", "weights").unwrap_err();
        assert_eq!(e.message, "weights: offset 4: expected ')', found end of input");
    }

    #[test]
    fn mixed_lengths_are_rejected() {
        assert!(parse_tuple_list("(0,0),(1)", "weights").is_err());
    }

    #[test]
    fn single_tuples() {
        assert_eq!(parse_tuple("(1, -1,0)", "divisor").unwrap(), vec![1, -1, 0]);
        assert_eq!(parse_tuple("2", "divisor").unwrap(), vec![2]);
        assert!(parse_tuple("(1,2) 3", "divisor").is_err());
    }
}
