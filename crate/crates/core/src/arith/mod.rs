//! Exact arithmetic in cyclotomic fields and in the group of roots of unity.

mod cyclotomic;
pub mod numtheory;
mod root;
mod unipoly;

pub use cyclotomic::{
    cyclotomic_poly, root_combination, root_combination_is_zero, CyclotomicNumber,
};
pub use root::{conjugate_exponent, RootOfUnity, TorsionPoint};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("level {level} does not divide target level {target}")]
    LevelNotDivisible { level: u64, target: u64 },
    #[error("invalid level {0}")]
    InvalidLevel(u64),
}
