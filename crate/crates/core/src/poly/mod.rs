//! Multivariate Laurent polynomials over cyclotomic fields.

mod division;
mod laurent;
mod resultant;
mod roots;

pub use laurent::{move_to_front, Exponent, LaurentPolynomial};
pub use resultant::resultant;
pub use roots::{cyclotomic_part, cyclotomic_roots, univariate_cyclotomic_roots};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has degree zero in variable {var}")]
    ZeroDegree { var: usize },
    #[error("polynomial is not univariate")]
    NotUnivariate,
}
