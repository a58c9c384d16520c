//! Torsion cosets `w H_A`: canonical keys, containment, transport and
//! membership in varieties.

mod congruence;

pub use congruence::{solve_exponent_congruences, CongruenceSolution};

use std::fmt;

use thiserror::Error;

use crate::arith::{RootOfUnity, TorsionPoint};
use crate::lattice::{IntegerLattice, Matrix, UnimodularMatrix};
use crate::poly::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("coset lattice must be primitive")]
    NotPrimitive,
    #[error("point has {point} coordinates but the lattice lives in Z^{lattice}")]
    DimensionMismatch { point: usize, lattice: usize },
}

/// The coset `w H_A = {x : x^a = w^a for all a in A}` for a primitive lattice `A`.
#[derive(Clone, Debug)]
pub struct TorsionCoset {
    point: TorsionPoint,
    lattice: IntegerLattice,
}

/// Canonical identifier of a torsion coset: two cosets are equal iff their keys are.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CosetKey {
    pub dim: usize,
    pub lattice: Vec<Vec<i64>>,
    pub pairings: Vec<RootOfUnity>,
}

impl TorsionCoset {
    pub fn new(point: TorsionPoint, lattice: IntegerLattice) -> Result<Self, CosetError> {
        if point.len() != lattice.ambient_dim() {
            return Err(CosetError::DimensionMismatch {
                point: point.len(),
                lattice: lattice.ambient_dim(),
            });
        }
        if !lattice.is_primitive() {
            return Err(CosetError::NotPrimitive);
        }
        Ok(TorsionCoset { point, lattice })
    }

    /// A single torsion point.
    pub fn point(point: TorsionPoint) -> Self {
        let n = point.len();
        TorsionCoset {
            point,
            lattice: IntegerLattice::full(n),
        }
    }

    /// The whole torus.
    pub fn torus(n: usize) -> Self {
        TorsionCoset {
            point: TorsionPoint::identity(n),
            lattice: IntegerLattice::zero(n),
        }
    }

    /// Trusts the caller that `lattice` is primitive (checked in debug builds).
    pub(crate) fn from_parts(point: TorsionPoint, lattice: IntegerLattice) -> Self {
        debug_assert_eq!(point.len(), lattice.ambient_dim());
        debug_assert!(lattice.is_primitive());
        TorsionCoset { point, lattice }
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.lattice.rank()
    }

    pub fn representative(&self) -> &TorsionPoint {
        &self.point
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// Values `w^a` on the HNF basis rows `a`.
    pub fn pairings(&self) -> Vec<RootOfUnity> {
        self.lattice
            .basis()
            .rows()
            .map(|a| self.point.power(a))
            .collect()
    }

    pub fn key(&self) -> CosetKey {
        CosetKey {
            dim: self.dim(),
            lattice: self.lattice.basis().to_rows(),
            pairings: self.pairings(),
        }
    }

    /// A representative that depends only on the coset.
    pub fn canonical_point(&self) -> TorsionPoint {
        let pairings = self.pairings();
        solve_exponent_congruences(self.lattice.basis(), &pairings)
            .particular
            .expect("pairings of an actual point are consistent")
    }

    /// The same coset with its canonical representative.
    pub fn canonicalize(&self) -> Self {
        TorsionCoset {
            point: self.canonical_point(),
            lattice: self.lattice.clone(),
        }
    }

    /// Exponent matrix `G`: a basis of the integer orthogonal complement of `A`.
    pub fn exponent_matrix(&self) -> Matrix<i64> {
        self.lattice.complement().basis().clone()
    }

    pub fn contains_point(&self, q: &TorsionPoint) -> bool {
        assert_eq!(q.len(), self.ambient_dim());
        self.lattice
            .basis()
            .rows()
            .all(|a| q.power(a) == self.point.power(a))
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subcoset_of(&self, other: &TorsionCoset) -> bool {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        self.lattice.contains_lattice(&other.lattice)
            && other
                .lattice
                .basis()
                .rows()
                .all(|a| self.point.power(a) == other.point.power(a))
    }

    /// Image under the torus automorphism `x -> (x^{u_1}, ..., x^{u_n})`.
    pub fn transform(&self, u: &UnimodularMatrix) -> Self {
        assert_eq!(u.dim(), self.ambient_dim());
        let point = TorsionPoint(u.matrix().rows().map(|r| self.point.power(r)).collect());
        let lattice = self.lattice.map(u.inverse().matrix());
        TorsionCoset { point, lattice }
    }

    /// Whether every polynomial vanishes identically on the coset.
    pub fn lies_on(&self, polys: &[LaurentPolynomial]) -> bool {
        let g = self.exponent_matrix();
        polys.iter().all(|f| {
            assert_eq!(f.nvars(), self.ambient_dim());
            f.coset_slices(&g)
                .values()
                .all(|s| s.vanishes_at(&self.point))
        })
    }
}

impl PartialEq for TorsionCoset {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for TorsionCoset {}

impl fmt::Display for TorsionCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * H{}", self.canonical_point(), self.lattice)
    }
}

/// Sorts by key, removes duplicates and drops cosets contained in another.
pub fn maximal_filter(cosets: Vec<TorsionCoset>) -> Vec<TorsionCoset> {
    let mut keyed: Vec<(CosetKey, TorsionCoset)> =
        cosets.into_iter().map(|c| (c.key(), c)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    let keep: Vec<bool> = (0..keyed.len())
        .map(|i| {
            !keyed.iter().enumerate().any(|(j, other)| {
                j != i && other.0.dim > keyed[i].0.dim && keyed[i].1.is_subcoset_of(&other.1)
            })
        })
        .collect();
    keyed
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((_, c), _)| c)
        .collect()
}
