use std::fmt;

use thiserror::Error;

/// Location of a cell in one of the condensation or verification grids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub quantity: &'static str,
    pub level: i64,
    pub k: i64,
    pub l: i64,
}

impl Cell {
    pub fn new(quantity: &'static str, level: i64, k: i64, l: i64) -> Self {
        Cell {
            quantity,
            level,
            k,
            l,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}^{{{},{}}}", self.quantity, self.level, self.k, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("skew-symmetric matrix must have even order, got {0}")]
    OddOrder(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor while computing {0}")]
    ZeroDivisor(Cell),
    #[error("condensation failed after {attempts} attempt(s); last zero divisor while computing {cell}")]
    CondensationFailure { attempts: usize, cell: Cell },
    #[error("label error: {0}")]
    Label(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("seed too small: need {required} base indices, have {available}")]
    SeedSize { required: usize, available: usize },
    #[error("index out of range: {0}")]
    Range(String),
    #[error("zero divisor at sequence index {0}")]
    SequenceDivisor(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
