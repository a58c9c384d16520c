//! Maximal torsion cosets on subvarieties of the algebraic torus.
//!
//! Polynomials have coefficients in a cyclotomic field `Q(zeta_N)`. The
//! solver returns every maximal coset `w H` (with `w` a torsion point and `H`
//! a subtorus) contained in the zero set of a Laurent polynomial system.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod coset;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod solver;

pub use arith::{CyclotomicNumber, RootOfUnity, TorsionPoint, UniPoly};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Dense univariate polynomials over the rationals.
pub type RationalPoly = UniPoly<Rational>;
/// Dense univariate polynomials over a cyclotomic field.
pub type CyclotomicPoly = UniPoly<CyclotomicNumber>;
/// Integer matrices over machine words.
pub type IntMatrix = lattice::Matrix<i64>;
