use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u32 },

    #[error("invalid group parameters: {0}")]
    InvalidParams(String),

    #[error("size cap exceeded: {what} needs {required}, cap is {cap} (raise it with CHEREDNIK_LAB_MAX_DIM)")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("inexact polynomial division by x_{i} - c*x_{j} (Dunkl operator bug)")]
    InexactDivision { i: usize, j: usize },

    #[error("invalid Cherednik parameters: {0}")]
    InvalidCherednikParams(String),

    #[error("genericity failure after {attempts} attempts: {detail}")]
    Genericity { attempts: usize, detail: String },

    #[error("ideal is not Dunkl stable in degree {degree}")]
    NotSubmodule { degree: usize },
}

pub type Result<T> = std::result::Result<T, LabError>;
