//! Roots of unity of univariate polynomials.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::LaurentPolynomial;
use super::PolyError;
use crate::arith::numtheory::{canonical_level, euler_phi, lcm};
use crate::arith::{root_combination_is_zero, CyclotomicNumber, RootOfUnity, UniPoly};

/// All roots of unity `w` with `g(w) = 0`, each once, in increasing order of `a/m`.
///
/// Candidate orders `d` satisfy `phi(lcm(d, N)) <= deg(g) * phi(N)` where `N`
/// is the coefficient level; one representative per Galois orbit over
/// `Q(zeta_N)` is tested exactly.
pub fn cyclotomic_roots(g: &LaurentPolynomial) -> Result<Vec<RootOfUnity>, PolyError> {
    if g.nvars() != 1 {
        return Err(PolyError::NotUnivariate);
    }
    if g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (_, h) = g.to_univariate();
    Ok(univariate_cyclotomic_roots(&h))
}

/// Same as [`cyclotomic_roots`] for a dense polynomial with nonzero constant term.
pub fn univariate_cyclotomic_roots(h: &UniPoly<CyclotomicNumber>) -> Vec<RootOfUnity> {
    let deg = h.degree().unwrap_or(0) as u64;
    if deg == 0 {
        return Vec::new();
    }
    let terms: Vec<(i64, CyclotomicNumber)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64, c.clone()))
        .collect();
    if terms.len() == 1 {
        return Vec::new();
    }
    let level = canonical_level(terms.iter().fold(1, |acc, (_, c)| lcm(acc, c.level())));
    let phi_n = euler_phi(level);
    let bound = deg * phi_n;
    let screen = FloatScreen::new(&terms);
    let mut roots = BTreeSet::new();
    let max_d = 2 * bound * bound;
    let mut d = 1u64;
    while d <= max_d.max(2) {
        let l = lcm(d, level);
        if euler_phi(l) <= bound {
            scan_order(&terms, &screen, d, level, l, &mut roots);
        }
        d += 1;
    }
    roots.into_iter().collect()
}

fn scan_order(
    terms: &[(i64, CyclotomicNumber)],
    screen: &FloatScreen,
    d: u64,
    level: u64,
    l: u64,
    roots: &mut BTreeSet<RootOfUnity>,
) {
    // Galois group of Q(zeta_l) over Q(zeta_level): k = 1 mod level
    let ks: Vec<u64> = (0..l / level)
        .map(|t| (1 + level * t) % l)
        .filter(|&k| k.gcd(&l) == 1)
        .collect();
    let mut seen = vec![false; d as usize];
    for a in 0..d {
        if seen[a as usize] || a.gcd(&d) != 1 {
            continue;
        }
        let orbit: Vec<u64> = ks.iter().map(|&k| (a * (k % d)) % d).collect();
        for &b in &orbit {
            seen[b as usize] = true;
        }
        if vanishes(terms, screen, a, d) {
            for b in orbit {
                roots.insert(RootOfUnity::new(b as i64, d as i64));
            }
        }
    }
}

fn vanishes(terms: &[(i64, CyclotomicNumber)], screen: &FloatScreen, a: u64, d: u64) -> bool {
    if screen.certainly_nonzero(a, d) {
        return false;
    }
    let exact: Vec<(&CyclotomicNumber, RootOfUnity)> = terms
        .iter()
        .map(|(e, c)| {
            (
                c,
                RootOfUnity::new((*e as i128 * a as i128 % d as i128) as i64, d as i64),
            )
        })
        .collect();
    root_combination_is_zero(&exact)
}

/// Floating-point values of the coefficients for a quick nonvanishing test.
struct FloatScreen {
    values: Vec<(i64, f64, f64)>,
    scale: f64,
    usable: bool,
}

impl FloatScreen {
    fn new(terms: &[(i64, CyclotomicNumber)]) -> Self {
        let values: Vec<(i64, f64, f64)> = terms
            .iter()
            .map(|(e, c)| {
                let (re, im) = c.to_complex();
                (*e, re, im)
            })
            .collect();
        let scale: f64 = terms.iter().map(|(_, c)| c.abs_coord_sum()).sum();
        let usable = scale.is_finite()
            && values
                .iter()
                .all(|(_, r, i)| r.is_finite() && i.is_finite());
        FloatScreen {
            values,
            scale,
            usable,
        }
    }

    fn certainly_nonzero(&self, a: u64, d: u64) -> bool {
        if !self.usable {
            return false;
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for &(e, cr, ci) in &self.values {
            let k = (e as i128 * a as i128).rem_euclid(d as i128) as f64;
            let (s, c) = (TAU * k / d as f64).sin_cos();
            re += cr * c - ci * s;
            im += cr * s + ci * c;
        }
        re.hypot(im) > 1e-9 * self.scale
    }
}

/// `prod (X - w)` over the given roots.
pub fn cyclotomic_part(roots: &[RootOfUnity]) -> UniPoly<CyclotomicNumber> {
    roots.iter().fold(UniPoly::one(), |acc, r| {
        let lin = UniPoly::from_coeffs(vec![-CyclotomicNumber::root(r), CyclotomicNumber::one()]);
        acc.mul(&lin)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            1,
            terms
                .iter()
                .map(|&(e, c)| (vec![e], CyclotomicNumber::from_int(c))),
        )
    }

    fn r(a: i64, m: i64) -> RootOfUnity {
        RootOfUnity::new(a, m)
    }

    #[test]
    fn examples() {
        assert_eq!(
            cyclotomic_roots(&p(&[(2, 1), (1, 1), (0, 1)])).unwrap(),
            vec![r(1, 3), r(2, 3)]
        );
        assert!(cyclotomic_roots(&p(&[(2, 1), (0, -2)])).unwrap().is_empty());
        let g = LaurentPolynomial::from_terms(
            1,
            [
                (vec![1], CyclotomicNumber::one()),
                (vec![0], -CyclotomicNumber::zeta(4)),
            ],
        );
        assert_eq!(cyclotomic_roots(&g).unwrap(), vec![r(1, 4)]);
        assert_eq!(
            cyclotomic_roots(&LaurentPolynomial::zero(1)),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn x_power_content_is_ignored() {
        let g = p(&[(5, 1), (3, -1)]);
        assert_eq!(cyclotomic_roots(&g).unwrap(), vec![r(0, 1), r(1, 2)]);
    }

    #[test]
    fn repeated_and_mixed_roots() {
        // (x^2 - x + 1)^2 (x^4 + 1) (x - 2)
        let phi6 = p(&[(2, 1), (1, -1), (0, 1)]);
        let phi8 = p(&[(4, 1), (0, 1)]);
        let g = phi6.mul(&phi6).mul(&phi8).mul(&p(&[(1, 1), (0, -2)]));
        let roots = cyclotomic_roots(&g).unwrap();
        assert_eq!(
            roots,
            vec![r(1, 8), r(1, 6), r(3, 8), r(5, 8), r(5, 6), r(7, 8)]
        );
        let part = cyclotomic_part(&roots);
        let expected = phi6.mul(&phi8).to_univariate().1;
        assert_eq!(part, expected);
    }

    #[test]
    fn cyclotomic_coefficients() {
        // the square roots of z3 are z6 and -z6 = z3^2
        let g = LaurentPolynomial::from_terms(
            1,
            [
                (vec![2], CyclotomicNumber::one()),
                (vec![0], -CyclotomicNumber::zeta(3)),
            ],
        );
        let roots = cyclotomic_roots(&g).unwrap();
        assert_eq!(roots, vec![r(1, 6), r(2, 3)]);
    }

    #[test]
    fn cyclotomic_part_of_empty_is_one() {
        assert!(cyclotomic_part(&[]).coeffs()[0].is_one());
    }
}
