//! Exact evaluation of the explicit upper bounds on numbers of maximal
//! torsion cosets.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("bound needs n >= {min}, got {n}")]
    TooFewVariables { n: usize, min: usize },
    #[error("bound needs d >= 1")]
    ZeroDegree,
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * big(n - i) / big(i + 1))
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * big(i))
}

fn pow(b: &BigUint, e: &BigUint) -> BigUint {
    let e = e.to_u32().expect("exponent fits in u32");
    num_traits::pow(b.clone(), e as usize)
}

/// `(11d)^{n^2} * C^{3 C^2}` with `C = binom(n + d, d)`.
pub fn generic_bound(n: u64, d: u64) -> BigUint {
    let c = binomial(n + d, d);
    let e = big(3) * &c * &c;
    pow(&big(11 * d), &big(n * n)) * pow(&c, &e)
}

/// `11 d^2 + d`, the bound for plane curves.
pub fn plane_curve_bound(d: u64) -> BigUint {
    big(11) * big(d) * big(d) + big(d)
}

/// `22 vol2`, the bound on isolated torsion points of a plane curve in terms
/// of the area of its Newton polygon.
pub fn isolated_point_bound(vol2: &BigRational) -> BigRational {
    rat(22) * vol2
}

/// Area of the Newton polygon of a two-variable polynomial.
pub fn newton_polygon_area(f: &LaurentPolynomial) -> Option<BigRational> {
    if f.nvars() != 2 {
        return None;
    }
    let mut pts: Vec<(i64, i64)> = f.terms().keys().map(|e| (e[0], e[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Some(BigRational::zero());
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i128 {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let twice: i128 = (0..hull.len())
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
        })
        .sum();
    Some(BigRational::new(BigInt::from(twice.abs()), BigInt::from(2)))
}

/// A product of powers `prod b_i^{e_i}` with rational exponents, kept
/// symbolic because the values are astronomically large or irrational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerProduct {
    #[serde(serialize_with = "serialize_factors")]
    pub factors: Vec<(u64, BigRational)>,
}

fn serialize_factors<S: serde::Serializer>(
    f: &[(u64, BigRational)],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (b, e) in f {
        seq.serialize_element(&(b, e.to_string()))?;
    }
    seq.end()
}

impl PowerProduct {
    fn new(mut factors: Vec<(u64, BigRational)>) -> Self {
        factors.sort_by_key(|(b, _)| *b);
        let mut merged: Vec<(u64, BigRational)> = Vec::new();
        for (b, e) in factors {
            match merged.last_mut() {
                Some((lb, le)) if *lb == b => *le += e,
                _ => merged.push((b, e)),
            }
        }
        merged.retain(|(b, e)| *b != 1 && !e.is_zero());
        PowerProduct { factors: merged }
    }

    /// Natural logarithm of the value.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| (*b as f64).ln() * e.to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// Exact value when every exponent is a small nonnegative integer.
    pub fn to_integer(&self) -> Option<BigUint> {
        self.factors.iter().try_fold(BigUint::one(), |acc, (b, e)| {
            if !e.is_integer() || e.is_negative() {
                return None;
            }
            let k = e.to_integer().to_u32().filter(|k| *k <= 100_000)?;
            Some(acc * num_traits::pow(big(*b), k as usize))
        })
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| format!("{b}^({e})"))
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// `n^{(3/2)(2+n) 5^n}`.
pub fn c1(n: u64) -> PowerProduct {
    let e = BigRational::new(BigInt::from(3), BigInt::from(2))
        * rat(2 + n as i64)
        * BigRational::from_integer(BigInt::from(5).pow(n as u32));
    PowerProduct::new(vec![(n, e)])
}

/// `(49 * 5^{n-2} - 4n - 9) / 16`; integral for every `n >= 2`.
pub fn c2(n: u64) -> BigRational {
    assert!(n >= 2);
    let v = BigInt::from(49) * BigInt::from(5).pow(n as u32 - 2) - BigInt::from(4 * n + 9);
    BigRational::new(v, BigInt::from(16))
}

/// `n^{(2+n) 2^{n-2} sum_{i=2}^{n-1} c2(i)} * prod_{i=2}^n c1(i)`.
pub fn c3(n: u64) -> PowerProduct {
    assert!(n >= 2);
    let s: BigRational = (2..n).map(c2).fold(BigRational::zero(), |a, b| a + b);
    let e = rat(2 + n as i64) * BigRational::from_integer(BigInt::from(2).pow(n as u32 - 2)) * s;
    let mut factors = vec![(n, e)];
    for i in 2..=n {
        factors.extend(c1(i).factors);
    }
    PowerProduct::new(factors)
}

/// `sum_{i=2}^n c2(i) 2^{n-i} + 2^{n-1}`.
pub fn c4(n: u64) -> BigRational {
    assert!(n >= 2);
    let s = (2..=n).fold(BigRational::zero(), |acc, i| {
        acc + c2(i) * BigRational::from_integer(BigInt::from(2).pow((n - i) as u32))
    });
    s + BigRational::from_integer(BigInt::from(2).pow(n as u32 - 1))
}

/// Degree bound `n^2 (n+1)! d` after rescaling to a full exponent lattice.
pub fn rescale_degree(n: u64, d: u64) -> BigUint {
    big(n * n) * factorial(n + 1) * big(d)
}

/// Degree bound `n(n+1)d + 2(n-1)(n^2-1) n! d^3` for the projected problem.
pub fn projection_degree(n: u64, d: u64) -> BigUint {
    big(n * (n + 1) * d) + big(2 * (n - 1) * (n * n - 1)) * factorial(n) * big(d).pow(3)
}

/// Bound on the total number of maximal cosets on a hypersurface of degree
/// `d` in `n` variables: `T(1,d) = d`, `T(2,d) = 11d^2 + d`, and for `n >= 3`
/// `T(n,d) = (2nd)^{n+1} T(n-1, n^{8+4n} d^2) T(n-1, n^{8+4n} d^3)`.
pub fn hypersurface_recurrence(n: u64, d: &BigUint) -> BigUint {
    match n {
        0 => BigUint::one(),
        1 => d.clone(),
        2 => big(11) * d * d + d,
        _ => {
            let k = num_traits::pow(big(n), (8 + 4 * n) as usize);
            let a = pow(&(big(2 * n) * d), &big(n + 1));
            let d2 = &k * d * d;
            let d3 = &k * d * d * d;
            a * hypersurface_recurrence(n - 1, &d2) * hypersurface_recurrence(n - 1, &d3)
        }
    }
}

/// Bound on maximal cosets of a variety: `N(1,d) = d`,
/// `N(n,d) = T(n,d) N(n-1, n^{2+n} d^2)`.
pub fn variety_recurrence(n: u64, d: &BigUint) -> BigUint {
    match n {
        0 => BigUint::one(),
        1 => d.clone(),
        _ => {
            let k = num_traits::pow(big(n), (2 + n) as usize);
            hypersurface_recurrence(n, d) * variety_recurrence(n - 1, &(k * d * d))
        }
    }
}

/// Right-hand sides bounding the maximal `i`-dimensional cosets (`i = 0..n`)
/// on a hypersurface with full exponent lattice, given bounds `lower(i, d)`
/// for the same counts in `n - 1` variables.
pub fn coset_recurrence(n: u64, d: u64, lower: impl Fn(u64, &BigUint) -> BigUint) -> Vec<BigUint> {
    assert!(n >= 2);
    let family = big((1 << (n + 1)) - 1);
    let cd = projection_degree(n, d);
    let dd = big(2 * d * d);
    let tail = |from: u64| -> BigUint {
        (from..=n.saturating_sub(2)).fold(BigUint::zero(), |acc, s| acc + lower(s, &dd))
    };
    (0..n)
        .map(|i| {
            if i == n - 1 {
                return BigUint::one();
            }
            match i {
                0 => &family * (lower(0, &cd) * tail(1) + big(d) * lower(0, &dd)),
                1 => &family * (lower(1, &cd) * tail(1) + lower(0, &dd)),
                _ => &family * lower(i, &cd) * tail(i - 1),
            }
        })
        .collect()
}

/// All bounds for given `n` and `d`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCatalog {
    pub n: u64,
    pub d: u64,
    #[serde(serialize_with = "ser_display")]
    pub generic_bound: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub plane_curve_bound: BigUint,
    pub c1: PowerProduct,
    #[serde(serialize_with = "ser_display")]
    pub c2: BigRational,
    pub c3: PowerProduct,
    #[serde(serialize_with = "ser_display")]
    pub c4: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub rescale_degree: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub projection_degree: BigUint,
    #[serde(serialize_with = "ser_display_vec")]
    pub coset_recurrence: Vec<BigUint>,
    #[serde(serialize_with = "ser_display")]
    pub hypersurface_recurrence: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub variety_recurrence: BigUint,
    #[serde(serialize_with = "ser_display_opt")]
    pub vol2: Option<BigRational>,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<T: fmt::Display, S: serde::Serializer>(
    v: &[T],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_display_opt<T: fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

impl BoundCatalog {
    /// Every row as `(label, value)` with huge integers abbreviated.
    pub fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            (
                "generic (11d)^(n^2) C^(3C^2)".to_string(),
                abbreviate(&self.generic_bound),
            ),
            (
                "plane curve 11d^2 + d".to_string(),
                self.plane_curve_bound.to_string(),
            ),
            ("c1(n)".to_string(), self.c1.to_string()),
            ("c2(n)".to_string(), self.c2.to_string()),
            ("c3(n)".to_string(), self.c3.to_string()),
            ("c4(n)".to_string(), self.c4.to_string()),
            (
                "rescale degree c1(n,d)".to_string(),
                self.rescale_degree.to_string(),
            ),
            (
                "projection degree c2(n,d)".to_string(),
                self.projection_degree.to_string(),
            ),
        ];
        for (i, v) in self.coset_recurrence.iter().enumerate() {
            rows.push((format!("recurrence T_{i}"), abbreviate(v)));
        }
        rows.push((
            "recurrence T(n,d)".to_string(),
            abbreviate(&self.hypersurface_recurrence),
        ));
        rows.push((
            "recurrence N_tor(n,d)".to_string(),
            abbreviate(&self.variety_recurrence),
        ));
        if let Some(v) = &self.vol2 {
            rows.push(("newton polygon area".to_string(), v.to_string()));
            rows.push((
                "isolated points 22 vol2".to_string(),
                isolated_point_bound(v).to_string(),
            ));
        }
        rows
    }
}

impl fmt::Display for BoundCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds for n = {}, d = {}", self.n, self.d)?;
        let rows = self.rows();
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "  {k:<width$}  {v}")?;
        }
        Ok(())
    }
}

fn abbreviate(v: &BigUint) -> String {
    let s = v.to_string();
    if s.len() <= 40 {
        return s;
    }
    format!(
        "{}.{}e{} ({} digits)",
        &s[..1],
        &s[1..6],
        s.len() - 1,
        s.len()
    )
}

pub fn bound_catalog(n: u64, d: u64) -> Result<BoundCatalog, BoundsError> {
    if n < 2 {
        return Err(BoundsError::TooFewVariables {
            n: n as usize,
            min: 2,
        });
    }
    if d == 0 {
        return Err(BoundsError::ZeroDegree);
    }
    let lower = |_: u64, dd: &BigUint| hypersurface_recurrence(n - 1, dd);
    Ok(BoundCatalog {
        n,
        d,
        generic_bound: generic_bound(n, d),
        plane_curve_bound: plane_curve_bound(d),
        c1: c1(n),
        c2: c2(n),
        c3: c3(n),
        c4: c4(n),
        rescale_degree: rescale_degree(n, d),
        projection_degree: projection_degree(n, d),
        coset_recurrence: coset_recurrence(n, d, lower),
        hypersurface_recurrence: hypersurface_recurrence(n, &big(d)),
        variety_recurrence: variety_recurrence(n, &big(d)),
        vol2: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(c2(2), rat(2));
        assert_eq!(c2(3), rat(14));
        assert_eq!(c2(4), rat(75));
        assert_eq!(rescale_degree(2, 3), big(72));
        assert_eq!(projection_degree(2, 1), big(18));
        assert_eq!(plane_curve_bound(3), big(102));
        assert_eq!(plane_curve_bound(1), big(12));
    }

    #[test]
    fn generic_bound_values() {
        assert_eq!(
            generic_bound(2, 1),
            big(14641) * num_traits::pow(big(3), 27)
        );
        assert_eq!(generic_bound(1, 1), big(11) * num_traits::pow(big(2), 12));
        assert!(generic_bound(2, 2) > generic_bound(2, 1));
    }

    #[test]
    fn c4_matches_direct_loop() {
        for n in 2..=6u64 {
            let mut v = BigRational::zero();
            for i in 2..=n {
                let c = (49 * 5i64.pow(i as u32 - 2) - 4 * i as i64 - 9) as f64 / 16.0;
                v += rat(c as i64) * rat(1 << (n - i));
            }
            v += rat(1 << (n - 1));
            assert_eq!(c4(n), v);
        }
    }

    #[test]
    fn symbolic_powers() {
        // c1(2) = 2^150
        assert_eq!(c1(2).to_integer(), Some(num_traits::pow(big(2), 150)));
        assert_eq!(c1(3).to_integer(), None);
        assert_eq!(c3(2).to_string(), "2^(150)");
    }

    #[test]
    fn areas() {
        let line =
            LaurentPolynomial::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], -1)]);
        assert_eq!(
            newton_polygon_area(&line),
            Some(BigRational::new(BigInt::from(1), BigInt::from(2)))
        );
        assert_eq!(
            isolated_point_bound(&BigRational::zero()),
            BigRational::zero()
        );
        let sq = LaurentPolynomial::from_int_terms(
            2,
            &[
                (&[0, 0], 1),
                (&[2, 0], 1),
                (&[0, 2], 1),
                (&[2, 2], 1),
                (&[1, 1], 1),
            ],
        );
        assert_eq!(newton_polygon_area(&sq), Some(rat(4)));
    }

    #[test]
    fn recurrences_are_monotone() {
        assert_eq!(hypersurface_recurrence(2, &big(3)), big(102));
        assert!(hypersurface_recurrence(3, &big(2)) > hypersurface_recurrence(3, &big(1)));
        assert!(variety_recurrence(3, &big(2)) >= hypersurface_recurrence(3, &big(2)));
        let cat = bound_catalog(3, 2).unwrap();
        assert_eq!(cat.coset_recurrence.len(), 3);
        assert_eq!(cat.coset_recurrence[2], BigUint::one());
        assert!(bound_catalog(1, 1).is_err());
    }

    #[test]
    fn catalog_table_mentions_plane_bound() {
        let cat = bound_catalog(2, 3).unwrap();
        assert!(cat.to_string().contains("102"));
    }
}
