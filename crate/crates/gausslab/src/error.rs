use thiserror::Error;

use crate::gauss::GaussInt;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arithmetic overflow in exact Gaussian-integer arithmetic")]
    Overflow,
    #[error("zero argument not allowed: {0}")]
    Zero(&'static str),
    #[error("{what}: {count} items exceeds cap {cap}")]
    Cap { what: &'static str, count: u64, cap: u64 },
    #[error("{a} is not invertible modulo {c}")]
    NotCoprime { a: GaussInt, c: GaussInt },
    #[error("exact division failed")]
    NotDivisible,
    #[error("malformed literal `{0}`")]
    Parse(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("cost guard: estimated {estimate} terms exceeds {limit}")]
    Cost { estimate: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
