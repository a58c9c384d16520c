//! Exact division and greatest common divisors.

use num_traits::Zero;

use super::laurent::{Exponent, LaurentPolynomial};
use crate::arith::{CyclotomicNumber, UniPoly};

impl LaurentPolynomial {
    /// `Some(q)` with `self = q * other` in the Laurent ring, if it exists.
    pub fn try_divide(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.nvars(), other.nvars());
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars()));
        }
        let (mf, f0) = self.strip_monomial();
        let (mg, g0) = other.strip_monomial();
        let q0 = divide_polynomials(&f0, &g0)?;
        let shift: Exponent = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Some(q0.shift(&shift))
    }

    /// Greatest common divisor up to units, normalized to have no monomial
    /// content and lexicographic leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars());
        let n = self.nvars();
        if self.is_zero() {
            return normalize(other);
        }
        if other.is_zero() {
            return normalize(self);
        }
        if self.is_monomial() || other.is_monomial() {
            return Self::one(n);
        }
        let (_, f0) = self.strip_monomial();
        let (_, g0) = other.strip_monomial();
        if n == 0 {
            return Self::one(0);
        }
        normalize(&gcd_rec(&f0, &g0, n - 1))
    }

    /// Whether the polynomial is a unit of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.is_monomial()
    }
}

fn normalize(f: &LaurentPolynomial) -> LaurentPolynomial {
    if f.is_zero() {
        return f.clone();
    }
    f.strip_monomial().1.make_monic()
}

/// Exact division of polynomials with nonnegative exponents.
pub(crate) fn divide_polynomials(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
) -> Option<LaurentPolynomial> {
    let n = f.nvars();
    if f.is_zero() {
        return Some(LaurentPolynomial::zero(n));
    }
    let (lg_e, lg_c) = g.leading_term()?;
    let lg_e = lg_e.clone();
    let inv = lg_c.inv().ok()?;
    let fmax = f.max_exponent();
    let gmax = g.max_exponent();
    let fmin = f.min_exponent();
    let gmin = g.min_exponent();
    let mut r = f.clone();
    let mut q = LaurentPolynomial::zero(n);
    while let Some((e, c)) = r.leading_term() {
        let d: Exponent = e.iter().zip(&lg_e).map(|(a, b)| a - b).collect();
        for i in 0..n {
            if d[i] < fmin[i] - gmin[i] || d[i] > fmax[i] - gmax[i] {
                return None;
            }
        }
        let t = c * &inv;
        let step = LaurentPolynomial::monomial(n, d.clone(), t.clone()).mul(g);
        r = r.sub(&step);
        q.add_term(d, t);
    }
    Some(q)
}

/// Gcd of two nonzero polynomials (nonnegative exponents) that only involve
/// the variables `0..=k`.
fn gcd_rec(f: &LaurentPolynomial, g: &LaurentPolynomial, k: usize) -> LaurentPolynomial {
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return LaurentPolynomial::one(n);
    }
    if k == 0 {
        let a = to_dense(f, 0);
        let b = to_dense(g, 0);
        return from_dense(&a.gcd(&b), n, 0);
    }
    let (cf, pf) = content_and_primitive(f, k);
    let (cg, pg) = content_and_primitive(g, k);
    let c = gcd_rec(&cf, &cg, k - 1);
    let h = primitive_prs(pf, pg, k);
    c.mul(&h)
}

/// Content with respect to `x_k` (a polynomial in the earlier variables) and
/// the primitive part.
fn content_and_primitive(
    f: &LaurentPolynomial,
    k: usize,
) -> (LaurentPolynomial, LaurentPolynomial) {
    let n = f.nvars();
    let coeffs = f.coeffs_in(k);
    if coeffs.len() == 1 {
        let c = coeffs.into_values().next().expect("one coefficient");
        let p = divide_polynomials(f, &c).expect("content divides");
        return (c, p);
    }
    let mut it = coeffs.into_values();
    let mut c = it.next().expect("nonzero");
    for x in it {
        if c.is_constant() {
            break;
        }
        c = if k == 0 {
            LaurentPolynomial::one(n)
        } else {
            gcd_rec(&c, &x, k - 1)
        };
    }
    if c.is_constant() {
        return (LaurentPolynomial::one(n), f.clone());
    }
    let p = divide_polynomials(f, &c).expect("content divides");
    (c, p)
}

fn degree_in(f: &LaurentPolynomial, k: usize) -> i64 {
    f.max_exponent()[k]
}

fn primitive_prs(a: LaurentPolynomial, b: LaurentPolynomial, k: usize) -> LaurentPolynomial {
    let n = a.nvars();
    let (mut a, mut b) = if degree_in(&a, k) >= degree_in(&b, k) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if degree_in(&b, k) == 0 {
            return LaurentPolynomial::one(n);
        }
        let r = pseudo_remainder(&a, &b, k);
        if r.is_zero() {
            return b;
        }
        let (_, r) = content_and_primitive(&r, k);
        a = b;
        b = r;
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `x_k`.
pub(crate) fn pseudo_remainder(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    k: usize,
) -> LaurentPolynomial {
    let n = a.nvars();
    let db = degree_in(b, k);
    let bc = b.coeffs_in(k);
    let lb = bc[&db].clone();
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, k) >= db {
        let dr = degree_in(&r, k);
        let lr = r.coeffs_in(k).remove(&dr).expect("leading coefficient");
        let mut shift = vec![0; n];
        shift[k] = dr - db;
        r = lb.mul(&r).sub(&lr.shift(&shift).mul(b));
    }
    r
}

fn to_dense(f: &LaurentPolynomial, var: usize) -> UniPoly<CyclotomicNumber> {
    let deg = degree_in(f, var) as usize;
    let mut coeffs = vec![CyclotomicNumber::zero(); deg + 1];
    for (e, c) in f.terms() {
        coeffs[e[var] as usize] = c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

fn from_dense(p: &UniPoly<CyclotomicNumber>, n: usize, var: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        n,
        p.coeffs().iter().enumerate().map(|(d, c)| {
            let mut e = vec![0; n];
            e[var] = d as i64;
            (e, c.clone())
        }),
    )
}
