use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("negative exponent on non-invertible generator `{0}`")]
    NegativeExponent(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("presentation mismatch: `{left}` vs `{right}`")]
    PresentationMismatch { left: String, right: String },
    #[error("map is undefined on generator `{0}`")]
    UndefinedGenerator(String),
    #[error("image of invertible generator `{0}` is not invertible")]
    NotInvertible(String),
    #[error("operation undefined on localized elements: {0}")]
    Localized(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("matrix is not scalar: entry ({row},{col}) = {value}")]
    NotScalar {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("not coinvariant: {0}")]
    NotCoinvariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
