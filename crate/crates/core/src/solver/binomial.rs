use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{CyclotomicNumber, RootOfUnity, TorsionPoint, UniPoly};
use crate::coset::TorsionCoset;
use crate::lattice::{extend_primitive_to_basis, IntegerLattice, UnimodularMatrix};
use crate::poly::{univariate_cyclotomic_roots, LaurentPolynomial};

/// Torsion cosets of codimension one on `H(f)` and the cofactor left after
/// dividing out the corresponding binomial factors `X^a - w`.
pub fn binomial_cosets(f: &LaurentPolynomial) -> (Vec<TorsionCoset>, LaurentPolynomial) {
    let n = f.nvars();
    let mut cofactor = f.strip_monomial().1;
    let mut cosets = Vec::new();
    if n == 0 || cofactor.is_zero() {
        return (cosets, cofactor);
    }
    for a in candidate_directions(f) {
        if cofactor.is_monomial() {
            break;
        }
        let u = UnimodularMatrix::new(extend_primitive_to_basis(&a).expect("primitive direction"))
            .expect("basis extension is unimodular");
        let roots = common_roots_in_first(&cofactor.monoidal_image(&u));
        if roots.is_empty() {
            continue;
        }
        // <b, a> = 1 for the first column b of U^-1
        let b = u.inverse().matrix().column(0);
        for w in roots {
            let point = TorsionPoint(b.iter().map(|&bi| w.pow(bi)).collect());
            let lattice = IntegerLattice::from_rows(vec![a.clone()], n);
            let factor = binomial(n, &a, &w);
            while let Some(q) = cofactor.try_divide(&factor) {
                cofactor = q;
            }
            cosets.push(TorsionCoset::from_parts(point, lattice));
        }
    }
    (cosets, cofactor.strip_monomial().1)
}

/// `X^a - w` as a Laurent polynomial.
pub(crate) fn binomial(n: usize, a: &[i64], w: &RootOfUnity) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        n,
        [
            (a.to_vec(), CyclotomicNumber::one()),
            (vec![0; n], -CyclotomicNumber::root(w)),
        ],
    )
}

/// Primitive pairwise support differences, sign-normalized.
fn candidate_directions(f: &LaurentPolynomial) -> BTreeSet<Vec<i64>> {
    let support = f.support();
    let mut out = BTreeSet::new();
    for (i, u) in support.iter().enumerate() {
        for v in &support[i + 1..] {
            let mut d: Vec<i64> = u.iter().zip(v).map(|(x, y)| x - y).collect();
            let g = d.iter().fold(0i64, |acc, x| acc.gcd(x));
            if g == 0 {
                continue;
            }
            let sign = if d.iter().find(|x| **x != 0).copied().unwrap_or(0) < 0 {
                -g
            } else {
                g
            };
            for x in d.iter_mut() {
                *x /= sign;
            }
            out.insert(d);
        }
    }
    out
}

/// Roots of unity `w` with `g(w, Y') = 0` identically in the other variables.
fn common_roots_in_first(g: &LaurentPolynomial) -> Vec<RootOfUnity> {
    let mut groups: BTreeMap<&[i64], Vec<(i64, &CyclotomicNumber)>> = BTreeMap::new();
    for (e, c) in g.terms() {
        groups.entry(&e[1..]).or_default().push((e[0], c));
    }
    let mut acc: Option<UniPoly<CyclotomicNumber>> = None;
    for terms in groups.values() {
        let lo = terms.iter().map(|(k, _)| *k).min().expect("nonempty group");
        let hi = terms.iter().map(|(k, _)| *k).max().expect("nonempty group");
        let mut coeffs = vec![CyclotomicNumber::zero(); (hi - lo) as usize + 1];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] = (*c).clone();
        }
        let p = UniPoly::from_coeffs(coeffs);
        let next = match acc {
            None => p.monic(),
            Some(a) => a.gcd(&p),
        };
        if next.degree() == Some(0) {
            return Vec::new();
        }
        acc = Some(next);
    }
    acc.map(|p| univariate_cyclotomic_roots(&p))
        .unwrap_or_default()
}
