use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Jacobi parameters alpha={alpha}, beta={beta}: both must exceed -1")]
    InvalidParams { alpha: f64, beta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root solve did not converge at node {index} of degree {degree}")]
    NoConvergence { index: usize, degree: usize },

    #[error("point {x} outside the open interval (-1, 1)")]
    Domain { x: f64 },

    #[error("series division with zero leading denominator coefficient")]
    DivisionByZero,

    #[error("duplicate node {0}")]
    DuplicateNode(f64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("value out of double-precision range: {0}")]
    Range(String),

    #[error("numerical contract violated: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
