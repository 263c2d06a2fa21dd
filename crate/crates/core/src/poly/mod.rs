//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::{PolyDisplay, Polynomial};

use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {ring_dim} variables")]
    IndexOutOfRange { index: usize, ring_dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ParseError {
    /// 0-based character offset into the parsed text.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected a number, variable or `(`")]
    ExpectedOperand,
    #[error("expected an operator (multiplication must be written as `*`)")]
    ExpectedOperator,
    #[error("expected a non-negative integer exponent")]
    ExpectedExponent,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("missing `)`")]
    UnclosedParen,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is only allowed by nonzero constants")]
    NonConstantDivisor,
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Variable names and their positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    weights: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{names} variable names but {weights} weights")]
    WeightCount { names: usize, weights: usize },
    #[error("weight of `{0}` must be positive")]
    NonPositiveWeight(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
}

impl Ring {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self, RingError> {
        if names.len() != weights.len() {
            return Err(RingError::WeightCount {
                names: names.len(),
                weights: weights.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(RingError::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(RingError::DuplicateName(n.clone()));
            }
            if weights[i] == 0 {
                return Err(RingError::NonPositiveWeight(n.clone()));
            }
        }
        Ok(Ring { names, weights })
    }

    /// Unit weights.
    pub fn with_names(names: &[&str]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let w = vec![1; names.len()];
        Ring::new(names, w).expect("invalid ring")
    }

    /// Variables `x1 .. xn`, unit weights.
    pub fn standard(n: usize) -> Self {
        Ring {
            names: default_names(n),
            weights: vec![1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Sum of all weights, the weight of the volume form.
    pub fn total_weight(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, ParseError> {
        parse_poly(text, &self.names)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.dim(), i)
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display(&self.names).to_string()
    }
}

/// Determinant of a square polynomial matrix by cofactor expansion along the
/// first row. Intended for the small (n <= 6) matrices that occur here.
pub fn determinant(rows: &[Vec<Polynomial>], ring_dim: usize) -> Polynomial {
    let k = rows.len();
    if k == 0 {
        return Polynomial::one(ring_dim);
    }
    assert!(rows.iter().all(|r| r.len() == k), "matrix must be square");
    if k == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring_dim);
    for col in 0..k {
        if rows[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][col] * &determinant(&minor, ring_dim);
        if col % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}
