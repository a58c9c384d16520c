//! Kernels, complements, saturation, basis extension and polar bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{dot, Matrix};
use super::normal_form::{hermite_normal_form, smith_decomposition, Smith};
use super::LatticeError;
use crate::scalar::IntScalar;

/// Integer basis of `{x in Z^n : M x = 0}`, as rows.
pub fn integer_kernel<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    hermite_normal_form(&m.transpose()).left_kernel()
}

/// Basis in HNF of `span_R(rows)^perp ∩ Z^n`.
pub fn orthogonal_complement<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    hermite_normal_form(&integer_kernel(m)).basis
}

/// Basis in HNF of `span_R(rows) ∩ Z^n`.
pub fn saturation<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    orthogonal_complement(&orthogonal_complement(m))
}

/// Smith form of a nonsingular square matrix.
pub fn smith_normal_form<T: IntScalar>(a: &Matrix<T>) -> Result<Smith<T>, LatticeError> {
    if !a.is_square() {
        return Err(LatticeError::DimensionMismatch);
    }
    let s = smith_decomposition(a);
    if s.rank() < a.nrows() {
        return Err(LatticeError::Singular);
    }
    Ok(s)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse<T: IntScalar>(u: &Matrix<T>) -> Result<Matrix<T>, LatticeError> {
    if !u.is_square() {
        return Err(LatticeError::DimensionMismatch);
    }
    let h = hermite_normal_form(u);
    if h.basis != Matrix::identity(u.nrows()) {
        return Err(LatticeError::NotUnimodular);
    }
    Ok(h.transform)
}

/// A unimodular matrix whose first row is the primitive vector `a`.
pub fn extend_primitive_to_basis<T: IntScalar>(a: &[T]) -> Result<Matrix<T>, LatticeError> {
    let n = a.len();
    let g = a.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if n == 0 || !g.is_one() {
        return Err(LatticeError::NotPrimitive);
    }
    let col = Matrix::from_rows(a.iter().map(|x| vec![x.clone()]).collect(), 1);
    // T a^t = e_1, so a is the first row of (T^-1)^t
    let t = hermite_normal_form(&col).transform;
    let mut u = unimodular_inverse(&t)?.transpose();
    debug_assert_eq!(u.row(0), a);
    size_reduce(&mut u, 1);
    Ok(u)
}

/// A unimodular matrix whose first rows are the given basis of a primitive lattice.
pub fn extend_lattice_to_basis<T: IntScalar>(b: &Matrix<T>) -> Result<Matrix<T>, LatticeError> {
    let k = b.nrows();
    let n = b.ncols();
    let snf = smith_decomposition(b);
    if snf.rank() < k {
        return Err(LatticeError::Singular);
    }
    if !snf.diag.iter().all(|d| d.is_one()) {
        return Err(LatticeError::NotPrimitive);
    }
    // W B V = [I 0], so B and the first k rows of V^-1 span the same lattice
    let vinv = unimodular_inverse(&snf.v)?;
    let mut u = b.vstack(&vinv.select_rows(k..n));
    size_reduce(&mut u, k);
    Ok(u)
}

/// Reduces rows `from..` against all earlier rows by rounded projections.
fn size_reduce<T: IntScalar>(u: &mut Matrix<T>, from: usize) {
    for i in from.max(1)..u.nrows() {
        for j in (0..i).rev() {
            let num = dot(u.row(i), u.row(j));
            let den = dot(u.row(j), u.row(j));
            if den.is_zero() {
                continue;
            }
            let q = round_div(&num, &den);
            if !q.is_zero() {
                u.add_row_multiple(i, j, &-q);
            }
        }
    }
}

fn round_div<T: IntScalar>(num: &T, den: &T) -> T {
    let two = T::one() + T::one();
    (two.clone() * num.clone() + den.clone()).div_floor(&(two * den.clone()))
}

/// Rows `a*_j` with `<a_i, a*_j> = delta_ij`, i.e. the inverse transpose.
pub fn polar_basis<T: IntScalar>(a: &Matrix<T>) -> Result<Vec<Vec<BigRational>>, LatticeError> {
    if !a.is_square() {
        return Err(LatticeError::DimensionMismatch);
    }
    let n = a.nrows();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = a
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.to_bigint()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !rows[i][c].is_zero())
            .ok_or(LatticeError::Singular)?;
        rows.swap(c, p);
        let inv = rows[c][c].recip();
        for x in rows[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
    }
    // rows now hold [I | A^-1]; transpose the right half
    Ok((0..n)
        .map(|i| (0..n).map(|j| rows[j][n + i].clone()).collect())
        .collect())
}

/// `det(M M^t)`, the squared covolume of the row lattice.
pub fn gram_determinant<T: IntScalar>(m: &Matrix<T>) -> BigInt {
    let b = m.convert::<BigInt>();
    b.mul(&b.transpose()).det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]], ncols: usize) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), ncols)
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation(&m(&[&[2, 2]], 2)), m(&[&[1, 1]], 2));
        assert_eq!(saturation(&m(&[&[2, 0], &[0, 2]], 2)), Matrix::identity(2));
        assert_eq!(saturation(&m(&[&[1, 1]], 2)), m(&[&[1, 1]], 2));
        assert_eq!(saturation(&m(&[&[0, 0]], 2)).nrows(), 0);
    }

    #[test]
    fn complement_examples() {
        let g = orthogonal_complement(&m(&[&[1, 1]], 2));
        assert_eq!(g, m(&[&[1, -1]], 2).pipe_hnf());
        assert_eq!(
            orthogonal_complement(&Matrix::<i64>::identity(2)).nrows(),
            0
        );
        assert_eq!(
            orthogonal_complement(&m(&[&[1, 0, 0]], 3)),
            m(&[&[0, 1, 0], &[0, 0, 1]], 3)
        );
    }

    trait PipeHnf {
        fn pipe_hnf(self) -> Self;
    }

    impl PipeHnf for Matrix<i64> {
        fn pipe_hnf(self) -> Self {
            hermite_normal_form(&self).basis
        }
    }

    #[test]
    fn extension_examples() {
        let u = extend_primitive_to_basis(&[2i64, 3]).unwrap();
        assert_eq!(u.row(0), &[2, 3]);
        assert_eq!(u.det().abs(), 1);
        assert_eq!(
            extend_primitive_to_basis(&[1i64, 0, 0]).unwrap(),
            Matrix::identity(3)
        );
        let u = extend_primitive_to_basis(&[3i64, 5, 7]).unwrap();
        assert_eq!(u.row(0), &[3, 5, 7]);
        assert_eq!(u.det().abs(), 1);
        assert_eq!(
            extend_primitive_to_basis(&[2i64, 4]),
            Err(LatticeError::NotPrimitive)
        );
    }

    #[test]
    fn lattice_extension() {
        let b = m(&[&[1, 2, 3], &[0, 1, 4]], 3);
        let u = extend_lattice_to_basis(&b).unwrap();
        assert_eq!(u.select_rows(0..2), b);
        assert_eq!(u.det().abs(), 1);
        assert!(extend_lattice_to_basis(&m(&[&[2, 0, 0]], 3)).is_err());
        let full = extend_lattice_to_basis(&m(&[&[0, 1], &[1, 0]], 2)).unwrap();
        assert_eq!(full.nrows(), 2);
        let empty = extend_lattice_to_basis(&Matrix::<i64>::zeros(0, 2)).unwrap();
        assert_eq!(empty.det().abs(), 1);
    }

    #[test]
    fn polar_examples() {
        let p = polar_basis(&m(&[&[2, 0], &[0, 2]], 2)).unwrap();
        assert_eq!(p, vec![vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(1, 2)]]);
        let p = polar_basis(&m(&[&[1, 1], &[0, 1]], 2)).unwrap();
        assert_eq!(p, vec![vec![q(1, 1), q(0, 1)], vec![q(-1, 1), q(1, 1)]]);
        assert_eq!(
            polar_basis(&m(&[&[1, 2], &[2, 4]], 2)),
            Err(LatticeError::Singular)
        );
    }

    #[test]
    fn smith_rejects_singular() {
        assert!(matches!(
            smith_normal_form(&m(&[&[1, 2], &[2, 4]], 2)),
            Err(LatticeError::Singular)
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let u = m(&[&[2, 3], &[1, 2]], 2);
        let inv = unimodular_inverse(&u).unwrap();
        assert_eq!(inv.mul(&u), Matrix::identity(2));
        assert_eq!(
            unimodular_inverse(&m(&[&[2, 0], &[0, 1]], 2)),
            Err(LatticeError::NotUnimodular)
        );
    }
}
