use alloc::string::String;
use core::fmt;

use crate::poly::JetVar;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different coefficient fields.
    FieldMismatch(Field, Field),
    InvalidModulus(u32),
    /// Series inversion needs a unit constant term.
    NonUnitLeadingCoefficient,
    UnboundVariable(JetVar),
    DivisionByZero,
    /// Input to a jet operation carries a positive-order variable.
    NotABaseElement(JetVar),
    MissingGrading,
    /// Co-truncation needs `m > n`.
    BadLevels {
        n: u32,
        m: u32,
    },
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    UnsupportedTwist(i64),
    UndeclaredVariable(JetVar),
    /// Relation `index` is not homogeneous for the declared grading.
    InhomogeneousRelation {
        index: usize,
    },
    DuplicateVariable(String),
    /// Localized elements with different distinguished units were combined.
    UnitMismatch(JetVar, JetVar),
    ShapeMismatch(&'static str),
    LevelMismatch {
        left: u32,
        right: u32,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch(a, b) => write!(f, "mixed-field operands: {a} and {b}"),
            Error::InvalidModulus(p) => write!(f, "modulus {p} is not a prime below 2^31"),
            Error::NonUnitLeadingCoefficient => f.write_str("series constant term is not a unit"),
            Error::UnboundVariable(v) => write!(f, "no value assigned to variable {v}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NotABaseElement(v) => {
                write!(f, "expected a base-ring element, found jet variable {v}")
            }
            Error::MissingGrading => f.write_str("induced grading requested without a grading"),
            Error::BadLevels { n, m } => write!(f, "co-truncation needs m > n (got n={n}, m={m})"),
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range (bound {bound})")
            }
            Error::UnsupportedTwist(d) => write!(f, "twist d={d} is not supported here (only d=1)"),
            Error::UndeclaredVariable(v) => write!(f, "variable {v} is not declared"),
            Error::InhomogeneousRelation { index } => {
                write!(f, "relation {index} is not homogeneous for the grading")
            }
            Error::DuplicateVariable(name) => write!(f, "variable {name} declared twice"),
            Error::UnitMismatch(a, b) => write!(f, "localized at {a} and at {b}"),
            Error::ShapeMismatch(what) => write!(f, "shape mismatch: {what}"),
            Error::LevelMismatch { left, right } => {
                write!(f, "level mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for Error {}
