//! Sylvester resultants by fraction-free elimination.

use num_traits::Zero;

use super::division::divide_polynomials;
use super::laurent::LaurentPolynomial;
use super::PolyError;
use crate::arith::{CyclotomicNumber, UniPoly};

/// Commutative ring with exact division, as needed by Bareiss elimination.
trait BareissRing: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, other: &Self) -> Self;
}

impl BareissRing for LaurentPolynomial {
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPolynomial::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentPolynomial::sub(self, other)
    }
    fn neg(&self) -> Self {
        LaurentPolynomial::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        divide_polynomials(self, other).expect("Bareiss division is exact")
    }
}

impl BareissRing for UniPoly<CyclotomicNumber> {
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        UniPoly::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UniPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.try_div(other).expect("Bareiss division is exact")
    }
}

fn bareiss_det<R: BareissRing>(mut a: Vec<Vec<R>>, zero: R, one: R) -> R {
    let n = a.len();
    if n == 0 {
        return one;
    }
    let mut negate = false;
    let mut prev = one;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return zero;
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Builds the Sylvester matrix from coefficient lists (constant term first).
fn sylvester<R: Clone>(f: &[R], g: &[R], zero: &R) -> Vec<Vec<R>> {
    let m = f.len() - 1;
    let l = g.len() - 1;
    let size = m + l;
    let mut rows = Vec::with_capacity(size);
    for i in 0..l {
        let mut row = vec![zero.clone(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(f, g)` with respect to variable `var`, computed after removing the
/// monomial content of both inputs. The result lives in the remaining
/// variables (`var` is dropped).
pub fn resultant(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    var: usize,
) -> Result<LaurentPolynomial, PolyError> {
    assert_eq!(f.nvars(), g.nvars());
    let n = f.nvars();
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (_, f0) = f.strip_monomial();
    let (_, g0) = g.strip_monomial();
    let m = f0.degree_in(var);
    let l = g0.degree_in(var);
    if m == 0 || l == 0 {
        return Err(PolyError::ZeroDegree { var });
    }
    let res = if n == 2 {
        let other = 1 - var;
        let fc = dense_coeffs(&f0, var, other);
        let gc = dense_coeffs(&g0, var, other);
        let zero = UniPoly::zero();
        let d = bareiss_det(sylvester(&fc, &gc, &zero), zero, UniPoly::one());
        LaurentPolynomial::from_terms(
            1,
            d.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as i64], c.clone())),
        )
    } else {
        let fc = sparse_coeffs(&f0, var, m);
        let gc = sparse_coeffs(&g0, var, l);
        let zero = LaurentPolynomial::zero(n);
        let d = bareiss_det(sylvester(&fc, &gc, &zero), zero, LaurentPolynomial::one(n));
        drop_var(&d, var)
    };
    Ok(res)
}

fn sparse_coeffs(f: &LaurentPolynomial, var: usize, deg: i64) -> Vec<LaurentPolynomial> {
    let mut by = f.coeffs_in(var);
    (0..=deg)
        .map(|k| {
            by.remove(&k)
                .unwrap_or_else(|| LaurentPolynomial::zero(f.nvars()))
        })
        .collect()
}

/// Coefficients in `var` as dense polynomials in the single other variable.
fn dense_coeffs(f: &LaurentPolynomial, var: usize, other: usize) -> Vec<UniPoly<CyclotomicNumber>> {
    let deg = f.degree_in(var) as usize;
    let odeg = f.max_exponent()[other] as usize;
    let mut table = vec![vec![CyclotomicNumber::zero(); odeg + 1]; deg + 1];
    for (e, c) in f.terms() {
        table[e[var] as usize][e[other] as usize] = c.clone();
    }
    table.into_iter().map(UniPoly::from_coeffs).collect()
}

fn drop_var(f: &LaurentPolynomial, var: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        f.nvars() - 1,
        f.terms().iter().map(|(e, c)| {
            let mut e = e.clone();
            e.remove(var);
            (e, c.clone())
        }),
    )
}
