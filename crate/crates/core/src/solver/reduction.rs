//! Changes of coordinates that bring the exponent lattice to `Z^n`.

use num_traits::ToPrimitive;

use super::{shift_to_origin, SolveError};
use crate::arith::{RootOfUnity, TorsionPoint};
use crate::coset::{solve_exponent_congruences, TorsionCoset};
use crate::lattice::{
    extend_lattice_to_basis, polar_basis, IntegerLattice, Matrix, UnimodularMatrix,
};
use crate::poly::LaurentPolynomial;

/// `f` rewritten in `rank L(f)` variables after a unimodular change of
/// coordinates that moves `L(f)` into the first coordinates.
#[derive(Clone, Debug)]
pub struct RankReduction {
    pub poly: LaurentPolynomial,
    basis: UnimodularMatrix,
}

impl RankReduction {
    pub fn rank(&self) -> usize {
        self.poly.nvars()
    }

    /// Maps a coset of the reduced polynomial to a coset of the original,
    /// adding the dropped directions as free parameters.
    pub fn lift(&self, coset: &TorsionCoset) -> TorsionCoset {
        let n = self.basis.dim();
        let r = self.rank();
        let mut point = coset.representative().coords().to_vec();
        point.resize(n, RootOfUnity::ONE);
        let rows = coset
            .lattice()
            .basis()
            .rows()
            .map(|a| {
                let mut a = a.to_vec();
                a.resize(n, 0);
                a
            })
            .collect();
        debug_assert_eq!(coset.ambient_dim(), r);
        TorsionCoset::from_parts(TorsionPoint(point), IntegerLattice::from_rows(rows, n))
            .transform(&self.basis.inverse())
    }
}

pub fn reduce_rank_deficient(f: &LaurentPolynomial) -> Result<RankReduction, SolveError> {
    let n = f.nvars();
    let f0 = shift_to_origin(f);
    let lattice = f0.exponent_lattice()?.saturation();
    let r = lattice.rank();
    if r == n {
        return Err(SolveError::Precondition(
            "exponent lattice already has full rank",
        ));
    }
    let basis = UnimodularMatrix::new(extend_lattice_to_basis(lattice.basis())?)?;
    let moved = f0.monoidal_image(&basis);
    let poly = LaurentPolynomial::from_terms(
        r,
        moved.terms().iter().map(|(e, c)| {
            debug_assert!(e[r..].iter().all(|x| *x == 0));
            (e[..r].to_vec(), c.clone())
        }),
    );
    Ok(RankReduction { poly, basis })
}

/// `f*` with `f(X) = f*(X^{a_1}, ..., X^{a_n})` for a basis `a_i` of `L(f)`.
#[derive(Clone, Debug)]
pub struct Rescaling {
    pub poly: LaurentPolynomial,
    basis: Matrix<i64>,
}

impl Rescaling {
    /// Basis of `L(f)` used for the substitution.
    pub fn basis(&self) -> &Matrix<i64> {
        &self.basis
    }

    /// Index of `L(f)` in `Z^n`.
    pub fn index(&self) -> i64 {
        self.basis.det().abs()
    }

    /// All cosets of `f` over a coset of `f*`: preimages under
    /// `x -> (x^{a_1}, ..., x^{a_n})`.
    pub fn pullback(&self, coset: &TorsionCoset) -> Vec<TorsionCoset> {
        let r = coset.lattice().basis().mul(&self.basis);
        let sol = solve_exponent_congruences(&r, &coset.pairings());
        sol.classes()
            .into_iter()
            .map(|q| TorsionCoset::from_parts(q, sol.homogeneous.clone()))
            .collect()
    }
}

pub fn rescale_to_full_lattice(f: &LaurentPolynomial) -> Result<Rescaling, SolveError> {
    let n = f.nvars();
    let f0 = shift_to_origin(f);
    let lattice = f0.exponent_lattice()?;
    if lattice.rank() < n {
        return Err(SolveError::Precondition(
            "exponent lattice is not of full rank",
        ));
    }
    let basis = lattice.basis().clone();
    let polar = polar_basis(&basis)?;
    let poly = LaurentPolynomial::from_terms(
        n,
        f0.terms().iter().map(|(u, c)| {
            let psi: Vec<i64> = polar
                .iter()
                .map(|a| {
                    let v: num_rational::BigRational = u
                        .iter()
                        .zip(a)
                        .map(|(x, y)| y * num_bigint::BigInt::from(*x))
                        .sum();
                    debug_assert!(v.is_integer());
                    v.to_integer().to_i64().expect("exponent fits in i64")
                })
                .collect();
            (psi, c.clone())
        }),
    );
    Ok(Rescaling { poly, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_int_terms(n, terms)
    }

    fn r(a: i64, m: i64) -> RootOfUnity {
        RootOfUnity::new(a, m)
    }

    #[test]
    fn reduce_to_one_variable() {
        let f = p(2, &[(&[2, 2], 1), (&[1, 1], 1), (&[0, 0], 1)]);
        let red = reduce_rank_deficient(&f).unwrap();
        assert_eq!(red.rank(), 1);
        assert_eq!(
            red.poly.strip_monomial().1,
            p(1, &[(&[2], 1), (&[1], 1), (&[0], 1)])
        );
        for w in [r(1, 3), r(2, 3)] {
            let lifted = red.lift(&TorsionCoset::point(TorsionPoint(vec![w])));
            assert_eq!(lifted.dim(), 1);
            assert!(lifted.lies_on(std::slice::from_ref(&f)));
        }
    }

    #[test]
    fn reduce_sum_of_variables() {
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let red = reduce_rank_deficient(&f).unwrap();
        assert_eq!(red.poly.strip_monomial().1.num_terms(), 2);
        let lifted = red.lift(&TorsionCoset::point(TorsionPoint(vec![r(1, 2)])));
        let expected = TorsionCoset::new(
            TorsionPoint(vec![r(0, 1), r(1, 2)]),
            IntegerLattice::from_rows(vec![vec![1, -1]], 2),
        )
        .unwrap();
        assert_eq!(lifted, expected);
        assert!(reduce_rank_deficient(&p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)])).is_err());
    }

    #[test]
    fn rescale_examples() {
        let f = p(2, &[(&[2, 2], 1), (&[2, 0], 1), (&[0, 2], 1)]);
        let rs = rescale_to_full_lattice(&f).unwrap();
        assert_eq!(rs.index(), 4);
        assert_eq!(
            rs.poly.strip_monomial().1,
            p(2, &[(&[1, 1], 1), (&[1, 0], 1), (&[0, 1], 1)])
        );
        let line = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let same = rescale_to_full_lattice(&line).unwrap();
        assert_eq!(same.index(), 1);
        assert_eq!(same.poly.strip_monomial().1, line);
    }

    #[test]
    fn pullback_multiplies_points_by_index() {
        let f = p(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], 1)]);
        let rs = rescale_to_full_lattice(&f).unwrap();
        let star = TorsionCoset::point(TorsionPoint(vec![r(1, 3), r(2, 3)]));
        let pre = rs.pullback(&star);
        assert_eq!(pre.len(), 4);
        for c in &pre {
            assert!(c.lies_on(std::slice::from_ref(&f)));
        }
    }
}
