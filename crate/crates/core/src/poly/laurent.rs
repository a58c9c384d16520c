use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::PolyError;
use crate::arith::{
    root_combination, root_combination_is_zero, CyclotomicNumber, RootOfUnity, TorsionPoint,
    UniPoly,
};
use crate::lattice::{IntegerLattice, Matrix, UnimodularMatrix};

pub type Exponent = Vec<i64>;

/// A Laurent polynomial in `n` variables over a cyclotomic field.
///
/// Terms are kept in lexicographic order of their exponents (first variable
/// most significant), so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, CyclotomicNumber>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CyclotomicNumber) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CyclotomicNumber::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: CyclotomicNumber) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// The variable `X_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, CyclotomicNumber::one())
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, CyclotomicNumber)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Shorthand for integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), CyclotomicNumber::from_int(*c))),
        )
    }

    pub fn add_term(&mut self, exp: Exponent, c: CyclotomicNumber) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, CyclotomicNumber> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, CyclotomicNumber> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> CyclotomicNumber {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(CyclotomicNumber::zero)
    }

    /// Whether the polynomial is a single term (a unit of the Laurent ring).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0)))
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &CyclotomicNumber)> {
        self.terms.iter().next_back()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Lattice spanned by the pairwise differences of the support.
    pub fn exponent_lattice(&self) -> Result<IntegerLattice, PolyError> {
        let mut it = self.terms.keys();
        let base = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let rows: Vec<Vec<i64>> = it
            .map(|e| e.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        Ok(IntegerLattice::from_rows(rows, self.nvars))
    }

    /// Componentwise minimum of the exponents.
    pub fn min_exponent(&self) -> Exponent {
        let mut m = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    pub fn max_exponent(&self) -> Exponent {
        let mut m = vec![i64::MIN; self.nvars];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    /// Multiplies by `X^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Removes the monomial content: returns `(m, g)` with `self = X^m g`,
    /// `g` a polynomial not divisible by any variable.
    pub fn strip_monomial(&self) -> (Exponent, Self) {
        let m = self.min_exponent();
        let neg: Vec<i64> = m.iter().map(|x| -x).collect();
        (m, self.shift(&neg))
    }

    /// Degree in variable `i` after removing monomial content.
    pub fn degree_in(&self, i: usize) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.max_exponent()[i] - self.min_exponent()[i]
    }

    /// Total degree after removing monomial content.
    pub fn total_degree(&self) -> i64 {
        let m = self.min_exponent();
        self.terms
            .keys()
            .map(|e| e.iter().zip(&m).map(|(a, b)| a - b).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Lcm of the coefficient levels.
    pub fn level(&self) -> u64 {
        self.terms
            .values()
            .fold(1, |acc, c| crate::arith::numtheory::lcm(acc, c.level()))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        self.map_coeffs(|a| a * c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&CyclotomicNumber) -> CyclotomicNumber) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Rewrites exponents by the row-vector map `i -> i * m` (`m` is `n x k`).
    pub fn map_exponents(&self, m: &Matrix<i64>) -> Self {
        assert_eq!(m.nrows(), self.nvars);
        Self::from_terms(
            m.ncols(),
            self.terms.iter().map(|(e, c)| (m.vec_mul(e), c.clone())),
        )
    }

    /// The monoidal image `f^U`: exponent `i` becomes `i U^{-1}`.
    pub fn monoidal_image(&self, u: &UnimodularMatrix) -> Self {
        self.map_exponents(u.inverse().matrix())
    }

    /// Groups the terms by `j = G i`.
    pub fn coset_slices(&self, g: &Matrix<i64>) -> BTreeMap<Vec<i64>, LaurentPolynomial> {
        assert_eq!(g.ncols(), self.nvars);
        let mut out: BTreeMap<Vec<i64>, LaurentPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let j = g.mul_vec(e);
            out.entry(j)
                .or_insert_with(|| LaurentPolynomial::zero(self.nvars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    /// Exact value at a torsion point.
    pub fn eval_at(&self, q: &TorsionPoint) -> CyclotomicNumber {
        let terms: Vec<(&CyclotomicNumber, RootOfUnity)> =
            self.terms.iter().map(|(e, c)| (c, q.power(e))).collect();
        root_combination(&terms)
    }

    /// Whether the polynomial vanishes at a torsion point (exact).
    pub fn vanishes_at(&self, q: &TorsionPoint) -> bool {
        let terms: Vec<(&CyclotomicNumber, RootOfUnity)> =
            self.terms.iter().map(|(e, c)| (c, q.power(e))).collect();
        root_combination_is_zero(&terms)
    }

    /// `f(z_1 X_1, ..., z_n X_n)`.
    pub fn scale_variables(&self, z: &TorsionPoint) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul_root(&z.power(e)))),
        )
    }

    /// `f(e_1 X_1^p, ..., e_n X_n^p)` for roots of unity `e_i`.
    pub fn substitute_power(&self, eps: &TorsionPoint, p: i64) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * p).collect(), c.mul_root(&eps.power(e)))),
        )
    }

    /// Applies the Galois automorphism `zeta_L -> zeta_L^k` to the
    /// coefficients, with `L` the common level.
    pub fn galois(&self, k: i64) -> Self {
        let l = self.level();
        self.map_coeffs(|c| c.embed(l).expect("common level").galois(k))
    }

    /// Substitutes the first `values.len()` variables by roots of unity and
    /// drops them.
    pub fn substitute_prefix(&self, values: &[RootOfUnity]) -> Self {
        let k = values.len();
        assert!(k <= self.nvars);
        let pt = TorsionPoint(values.to_vec());
        let mut groups: BTreeMap<Exponent, Vec<(CyclotomicNumber, RootOfUnity)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            groups
                .entry(e[k..].to_vec())
                .or_default()
                .push((c.clone(), pt.power(&e[..k])));
        }
        Self::from_terms(
            self.nvars - k,
            groups.into_iter().map(|(e, v)| {
                let refs: Vec<(&CyclotomicNumber, RootOfUnity)> =
                    v.iter().map(|(c, r)| (c, *r)).collect();
                (e, root_combination(&refs))
            }),
        )
    }

    /// Substitutes `X_var = w` and drops that variable.
    pub fn substitute_var(&self, var: usize, w: &RootOfUnity) -> Self {
        let perm = move_to_front(self.nvars, var);
        self.permute(&perm)
            .substitute_prefix(std::slice::from_ref(w))
    }

    /// Reorders variables: new variable `i` is old variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (perm.iter().map(|&p| e[p]).collect(), c.clone())),
        )
    }

    /// Embeds into `n + extra` variables, new variables appended.
    pub fn extend_vars(&self, extra: usize) -> Self {
        Self::from_terms(
            self.nvars + extra,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                e.resize(self.nvars + extra, 0);
                (e, c.clone())
            }),
        )
    }

    /// Coefficients with respect to variable `var`; each coefficient keeps
    /// all `n` variables with exponent zero in `var`.
    pub fn coeffs_in(&self, var: usize) -> BTreeMap<i64, LaurentPolynomial> {
        let mut out: BTreeMap<i64, LaurentPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = std::mem::replace(&mut e2[var], 0);
            out.entry(d)
                .or_insert_with(|| LaurentPolynomial::zero(self.nvars))
                .add_term(e2, c.clone());
        }
        out
    }

    /// Dense univariate form of a one-variable polynomial after removing the
    /// monomial content. Returns the removed power as well.
    pub fn to_univariate(&self) -> (i64, UniPoly<CyclotomicNumber>) {
        assert_eq!(self.nvars, 1, "not univariate");
        let (m, g) = self.strip_monomial();
        let deg = g.max_exponent()[0] as usize;
        let mut coeffs = vec![CyclotomicNumber::zero(); deg + 1];
        for (e, c) in g.terms {
            coeffs[e[0] as usize] = c;
        }
        (m[0], UniPoly::from_coeffs(coeffs))
    }

    pub fn from_univariate(p: &UniPoly<CyclotomicNumber>) -> Self {
        Self::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as i64], c.clone())),
        )
    }

    /// Brings every coefficient to its minimal level.
    pub fn minimize_levels(&self) -> Self {
        self.map_coeffs(|c| c.minimal_level())
    }
}

/// Permutation moving `var` to position 0, other variables keeping their order.
pub fn move_to_front(n: usize, var: usize) -> Vec<usize> {
    let mut perm = vec![var];
    perm.extend((0..n).filter(|&i| i != var));
    perm
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
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
    fn support_lattice_examples() {
        let f = p(2, &[(&[2, 2], 1), (&[1, 1], 1), (&[0, 0], 1)]);
        let l = f.exponent_lattice().unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis().row(0), &[1, 1]);
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -1)]);
        assert_eq!(f.exponent_lattice().unwrap(), IntegerLattice::full(2));
        let f = p(2, &[(&[0, 0], 5)]);
        assert_eq!(f.exponent_lattice().unwrap().rank(), 0);
        assert_eq!(
            LaurentPolynomial::zero(2).exponent_lattice(),
            Err(PolyError::ZeroPolynomial)
        );
        // invariant under monomial multiplication
        let g = p(2, &[(&[2, 2], 1), (&[1, 1], 1), (&[0, 0], 1)]).shift(&[3, -1]);
        assert_eq!(g.exponent_lattice().unwrap().basis().row(0), &[1, 1]);
    }

    #[test]
    fn monoidal_examples() {
        let u = UnimodularMatrix::new(Matrix::from_rows(vec![vec![1, 1], vec![0, 1]], 2)).unwrap();
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        assert_eq!(f.monoidal_image(&u), p(2, &[(&[1, 0], 1), (&[0, 0], -1)]));
        assert_eq!(f.monoidal_image(&UnimodularMatrix::identity(2)), f);
        let swap =
            UnimodularMatrix::new(Matrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2)).unwrap();
        let g = p(2, &[(&[2, 0], 1), (&[0, 1], 3)]);
        assert_eq!(g.monoidal_image(&swap), p(2, &[(&[0, 2], 1), (&[1, 0], 3)]));
        assert_eq!(g.monoidal_image(&u).monoidal_image(&u.inverse()), g);
    }

    #[test]
    fn slice_examples() {
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let s = f.coset_slices(&Matrix::from_rows(vec![vec![1, -1]], 2));
        assert_eq!(s.len(), 1);
        assert_eq!(s[&vec![0]], f);
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -1)]);
        let s = f.coset_slices(&Matrix::from_rows(vec![vec![1, 1]], 2));
        assert_eq!(s[&vec![1]], p(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(s[&vec![0]], p(2, &[(&[0, 0], -1)]));
        let s = f.coset_slices(&Matrix::zeros(0, 2));
        assert_eq!(s.len(), 1);
        assert_eq!(s[&vec![]], f);
    }

    #[test]
    fn substitution_examples() {
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -1)]);
        let g = f.substitute_prefix(&[r(1, 6)]);
        let expected = LaurentPolynomial::from_terms(
            1,
            [
                (vec![1], CyclotomicNumber::one()),
                (vec![0], -CyclotomicNumber::root(&r(5, 6))),
            ],
        );
        assert_eq!(g, expected);
        let f = p(1, &[(&[1], 1), (&[0], -1)]);
        assert!(f.substitute_prefix(&[RootOfUnity::ONE]).is_zero());
        let f = p(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        assert_eq!(
            f.substitute_prefix(&[r(1, 2)]),
            p(1, &[(&[1], -1), (&[0], -1)])
        );
        let h = p(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        assert_eq!(
            h.substitute_var(1, &r(1, 2)),
            p(1, &[(&[1], 1), (&[0], -2)])
        );
    }

    #[test]
    fn evaluation() {
        let f = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -1)]);
        assert!(f.vanishes_at(&TorsionPoint(vec![r(1, 6), r(5, 6)])));
        assert!(!f.vanishes_at(&TorsionPoint(vec![RootOfUnity::ONE, RootOfUnity::ONE])));
        assert_eq!(
            f.eval_at(&TorsionPoint(vec![RootOfUnity::ONE, RootOfUnity::ONE])),
            CyclotomicNumber::one()
        );
    }

    #[test]
    fn degrees() {
        let f = p(2, &[(&[-1, 2], 1), (&[1, 0], 1)]);
        assert_eq!(f.total_degree(), 2);
        assert_eq!(f.degree_in(0), 2);
        assert_eq!(f.degree_in(1), 2);
    }
}
