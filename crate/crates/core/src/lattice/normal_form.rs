//! Hermite and Smith normal forms with explicit transforms.

use super::matrix::Matrix;
use crate::scalar::IntScalar;

/// `(g, x, y)` with `a x + b y = g`, `g >= 0`.
pub(crate) fn egcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Unimodular `[[x, y], [c, d]]` with `[[x, y], [c, d]] (p, q)^t = (g, 0)^t`.
///
/// Exact division is preferred: a Bezout pair like `(0, 1)` for `p | q` would
/// swap instead of eliminate and the Smith loop could cycle.
fn elimination<T: IntScalar>(p: &T, q: &T) -> (T, T, T, T) {
    if q.is_multiple_of(p) {
        return (T::one(), T::zero(), -(q.clone() / p.clone()), T::one());
    }
    let (g, x, y) = egcd(p, q);
    let c = -(q.clone() / g.clone());
    let d = p.clone() / g;
    (x, y, c, d)
}

/// Row Hermite normal form of a matrix.
#[derive(Clone, Debug)]
pub struct Hnf<T> {
    /// The nonzero rows: upper staircase, positive pivots, entries above a
    /// pivot reduced into `[0, pivot)`.
    pub basis: Matrix<T>,
    /// Unimodular `m x m` matrix with `transform * input = [basis; 0]`.
    pub transform: Matrix<T>,
    /// Pivot column of each basis row.
    pub pivots: Vec<usize>,
}

impl<T: IntScalar> Hnf<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rows of the transform that annihilate the input (a basis of the left kernel).
    pub fn left_kernel(&self) -> Matrix<T> {
        self.transform
            .select_rows(self.rank()..self.transform.nrows())
    }
}

pub fn hermite_normal_form<T: IntScalar>(m: &Matrix<T>) -> Hnf<T> {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut a = m.clone();
    let mut t = Matrix::<T>::identity(nrows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        for i in r + 1..nrows {
            if a[(i, col)].is_zero() {
                continue;
            }
            if a[(r, col)].is_zero() {
                a.swap_rows(r, i);
                t.swap_rows(r, i);
                continue;
            }
            let p = a[(r, col)].clone();
            let q = a[(i, col)].clone();
            let (x, y, c, d) = elimination(&p, &q);
            a.combine_rows(r, i, &x, &y, &c, &d);
            t.combine_rows(r, i, &x, &y, &c, &d);
        }
        if a[(r, col)].is_zero() {
            continue;
        }
        if a[(r, col)].is_negative() {
            a.negate_row(r);
            t.negate_row(r);
        }
        let piv = a[(r, col)].clone();
        for k in 0..r {
            let q = a[(k, col)].div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                a.add_row_multiple(k, r, &nq);
                t.add_row_multiple(k, r, &nq);
            }
        }
        pivots.push(col);
        r += 1;
    }
    Hnf {
        basis: a.select_rows(0..r),
        transform: t,
        pivots,
    }
}

/// Smith decomposition `w * input * v = diag(d)` of an arbitrary matrix.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub w: Matrix<T>,
    pub v: Matrix<T>,
    /// Diagonal of length `min(m, n)`; nonzero entries come first, are positive and form a divisibility chain.
    pub diag: Vec<T>,
}

impl<T: IntScalar> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `D` with the shape of the input.
    pub fn d_matrix(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.w.nrows(), self.v.nrows());
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

pub fn smith_decomposition<T: IntScalar>(m: &Matrix<T>) -> Smith<T> {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut a = m.clone();
    let mut w = Matrix::<T>::identity(nrows);
    let mut v = Matrix::<T>::identity(ncols);
    let steps = nrows.min(ncols);
    for t in 0..steps {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        w.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..nrows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let p = a[(t, t)].clone();
                let q = a[(i, t)].clone();
                let (x, y, c, d) = elimination(&p, &q);
                a.combine_rows(t, i, &x, &y, &c, &d);
                w.combine_rows(t, i, &x, &y, &c, &d);
            }
            for j in t + 1..ncols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let p = a[(t, t)].clone();
                let q = a[(t, j)].clone();
                let (x, y, c, d) = elimination(&p, &q);
                a.combine_cols(t, j, &x, &y, &c, &d);
                v.combine_cols(t, j, &x, &y, &c, &d);
            }
            let col_clean = (t + 1..nrows).all(|i| a[(i, t)].is_zero());
            if !col_clean {
                continue;
            }
            let piv = a[(t, t)].clone();
            let bad =
                (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    a.add_row_multiple(t, i, &T::one());
                    w.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            w.negate_row(t);
        }
    }
    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    Smith { w, v, diag }
}
