//! Exit-code classification of errors.

use extconv::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Bad input: exit 1.
    Validation,
    /// The computation could not finish: exit 2.
    Computation,
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub kind: Kind,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Failure {
        Failure { kind: Kind::Validation, message: message.into() }
    }

    pub fn computation(message: impl Into<String>) -> Failure {
        Failure { kind: Kind::Computation, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            Kind::Validation => 1,
            Kind::Computation => 2,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Validation => "validation",
            Kind::Computation => "computation",
        }
    }

    /// Prefixes the message with the input it came from.
    pub fn context(mut self, what: &str) -> Failure {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let kind = match e {
            Error::FieldMismatch(..)
            | Error::NotPrime(_)
            | Error::Dimension(_)
            | Error::InvalidFan(_)
            | Error::InvalidAlgebra(_)
            | Error::InvalidQuiver(_)
            | Error::InvalidSheaf(_)
            | Error::NotMonoidHom(..)
            | Error::Parse { .. } => Kind::Validation,
            _ => Kind::Computation,
        };
        Failure { kind, message: one_line(&e.to_string()) }
    }
}

pub fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
