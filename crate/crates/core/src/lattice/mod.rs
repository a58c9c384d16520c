//! Integer lattices: normal forms, saturation, complements and unimodular bases.

mod matrix;
mod normal_form;
mod ops;

pub use matrix::{dot, Matrix};
pub use normal_form::{hermite_normal_form, smith_decomposition, Hnf, Smith};
pub use ops::{
    extend_lattice_to_basis, extend_primitive_to_basis, gram_determinant, integer_kernel,
    orthogonal_complement, polar_basis, saturation, smith_normal_form, unimodular_inverse,
};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// A sublattice of `Z^n` stored by its row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IntegerLattice {
    basis: Matrix<i64>,
}

impl IntegerLattice {
    /// The lattice generated by the rows of `generators`.
    pub fn new(generators: &Matrix<i64>) -> Self {
        IntegerLattice {
            basis: hermite_normal_form(generators).basis,
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, n: usize) -> Self {
        Self::new(&Matrix::from_rows(rows, n))
    }

    pub fn zero(n: usize) -> Self {
        IntegerLattice {
            basis: Matrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        IntegerLattice {
            basis: Matrix::identity(n),
        }
    }

    pub fn basis(&self) -> &Matrix<i64> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in self.basis.rows() {
            let Some(p) = row.iter().position(|&x| x != 0) else {
                continue;
            };
            let piv = row[p] as i128;
            if v[p] % piv != 0 {
                return false;
            }
            let q = v[p] / piv;
            for (x, &r) in v.iter_mut().zip(row) {
                *x -= q * r as i128;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis.rows().all(|r| self.contains(r))
    }

    pub fn saturation(&self) -> Self {
        IntegerLattice {
            basis: saturation(&self.basis),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.saturation() == *self
    }

    /// `span_R(self)^perp ∩ Z^n`.
    pub fn complement(&self) -> Self {
        IntegerLattice {
            basis: orthogonal_complement(&self.basis),
        }
    }

    /// Absolute determinant of a full-rank lattice (its index in `Z^n`).
    pub fn index(&self) -> Option<i64> {
        if self.rank() != self.ambient_dim() {
            return None;
        }
        Some((0..self.rank()).map(|i| self.basis[(i, i)]).product())
    }

    /// Image under the row-vector map `a -> a * m`.
    pub fn map(&self, m: &Matrix<i64>) -> Self {
        Self::new(&self.basis.mul(m))
    }
}

impl fmt::Display for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

/// Square integer matrix with determinant `±1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnimodularMatrix(Matrix<i64>);

impl UnimodularMatrix {
    pub fn new(m: Matrix<i64>) -> Result<Self, LatticeError> {
        if !m.is_square() {
            return Err(LatticeError::DimensionMismatch);
        }
        if m.convert::<i128>().det().abs() != 1 {
            return Err(LatticeError::NotUnimodular);
        }
        Ok(UnimodularMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMatrix(Matrix::identity(n))
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn inverse(&self) -> Self {
        UnimodularMatrix(unimodular_inverse(&self.0).expect("unimodular"))
    }

    pub fn mul(&self, other: &Self) -> Self {
        UnimodularMatrix(self.0.mul(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_membership() {
        let l = IntegerLattice::from_rows(vec![vec![2, 0], vec![1, 1]], 2);
        assert!(l.contains(&[0, 2]));
        assert!(l.contains(&[3, 1]));
        assert!(!l.contains(&[1, 0]));
        assert_eq!(l.index(), Some(2));
        let line = IntegerLattice::from_rows(vec![vec![2, 2]], 2);
        assert!(!line.contains(&[1, 1]));
        assert!(line.saturation().contains(&[1, 1]));
        assert!(!line.is_primitive());
    }

    #[test]
    fn unimodular_check() {
        let u = UnimodularMatrix::new(Matrix::from_rows(vec![vec![1, 1], vec![0, 1]], 2)).unwrap();
        assert_eq!(u.mul(&u.inverse()), UnimodularMatrix::identity(2));
        assert!(UnimodularMatrix::new(Matrix::from_rows(vec![vec![2, 0], vec![0, 1]], 2)).is_err());
    }
}
