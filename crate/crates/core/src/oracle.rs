//! Exhaustive search for torsion points of bounded order, used to check
//! solver output independently.

use std::f64::consts::TAU;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{root_combination_is_zero, CyclotomicNumber, RootOfUnity, TorsionPoint};
use crate::coset::TorsionCoset;
use crate::poly::LaurentPolynomial;
use crate::solver::SolveReport;

/// Default cap on `n * (number of candidate points)`.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search would evaluate {attempted} coordinates, above the budget of {budget}")]
    Budget { attempted: u64, budget: u64 },
    #[error("polynomials live in different numbers of variables")]
    DimensionMismatch,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub max_order: u64,
    /// Every torsion point of order at most `max_order` on the variety.
    pub points: Vec<TorsionPoint>,
    /// Oracle points outside every solver coset.
    pub missed_by_solver: Vec<TorsionPoint>,
    /// Solver cosets that do not lie on the variety.
    pub spurious_cosets: Vec<TorsionCoset>,
}

impl OracleReport {
    pub fn is_clean(&self) -> bool {
        self.missed_by_solver.is_empty() && self.spurious_cosets.is_empty()
    }
}

/// Number of points of `T^n` whose order is exactly `m` (Jordan's totient).
fn exact_order_count(n: u32, m: u64) -> u64 {
    let mut out = m.pow(n);
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            out = out / p.pow(n) * (p.pow(n) - 1);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out = out / rest.pow(n) * (rest.pow(n) - 1);
    }
    out
}

/// All torsion points of order at most `max_order` on `V(system)`, sorted.
pub fn brute_force_points(
    system: &[LaurentPolynomial],
    max_order: u64,
    budget: u64,
) -> Result<Vec<TorsionPoint>, OracleError> {
    let n = system.first().map(LaurentPolynomial::nvars).unwrap_or(0);
    if system.iter().any(|f| f.nvars() != n) {
        return Err(OracleError::DimensionMismatch);
    }
    let candidates: u64 = (1..=max_order)
        .map(|m| exact_order_count(n as u32, m))
        .fold(0u64, |a, b| a.saturating_add(b));
    let attempted = candidates.saturating_mul(n.max(1) as u64);
    if attempted > budget {
        return Err(OracleError::Budget { attempted, budget });
    }
    let evaluators: Vec<Evaluator> = system.iter().map(Evaluator::new).collect();
    let jobs: Vec<(u64, u64)> = (1..=max_order)
        .flat_map(|m| (0..if n == 0 { 1 } else { m }).map(move |a| (m, a)))
        .collect();
    let mut points: Vec<TorsionPoint> = jobs
        .par_iter()
        .flat_map_iter(|&(m, first)| {
            let evaluators = &evaluators;
            points_with_first(n, m, first)
                .filter(move |q| evaluators.iter().all(|e| e.vanishes_at(q)))
        })
        .collect();
    points.sort();
    Ok(points)
}

/// Points of exact order `m` whose first exponent numerator is `first`.
fn points_with_first(n: usize, m: u64, first: u64) -> impl Iterator<Item = TorsionPoint> {
    let tail = n.saturating_sub(1);
    let count = m.pow(tail as u32);
    (0..count).filter_map(move |mut idx| {
        let mut nums = Vec::with_capacity(n);
        if n > 0 {
            nums.push(first);
        }
        for _ in 0..tail {
            nums.push(idx % m);
            idx /= m;
        }
        let g = nums.iter().fold(m, |acc, x| acc.gcd(x));
        if g != 1 {
            return None;
        }
        Some(TorsionPoint(
            nums.iter()
                .map(|&a| RootOfUnity::new(a as i64, m as i64))
                .collect(),
        ))
    })
}

/// Float screen followed by an exact check.
struct Evaluator<'a> {
    poly: &'a LaurentPolynomial,
    floats: Vec<(f64, f64)>,
    scale: f64,
}

impl<'a> Evaluator<'a> {
    fn new(poly: &'a LaurentPolynomial) -> Self {
        let floats = poly
            .terms()
            .values()
            .map(CyclotomicNumber::to_complex)
            .collect();
        let scale = poly
            .terms()
            .values()
            .map(CyclotomicNumber::abs_coord_sum)
            .sum();
        Evaluator {
            poly,
            floats,
            scale,
        }
    }

    fn vanishes_at(&self, q: &TorsionPoint) -> bool {
        let mut re = 0.0;
        let mut im = 0.0;
        for ((e, _), (a, b)) in self.poly.terms().iter().zip(&self.floats) {
            let (s, c) = (TAU * q.power(e).to_f64()).sin_cos();
            re += a * c - b * s;
            im += a * s + b * c;
        }
        let size = re.hypot(im);
        if size.is_finite() && self.scale.is_finite() && size > 1e-9 * self.scale {
            return false;
        }
        let terms: Vec<(&CyclotomicNumber, RootOfUnity)> = self
            .poly
            .terms()
            .iter()
            .map(|(e, c)| (c, q.power(e)))
            .collect();
        root_combination_is_zero(&terms)
    }
}

/// Compares solver output with the brute-force search.
pub fn cross_check(
    report: &SolveReport,
    system: &[LaurentPolynomial],
    max_order: u64,
    budget: u64,
) -> Result<OracleReport, OracleError> {
    let points = brute_force_points(system, max_order, budget)?;
    let missed_by_solver = points
        .iter()
        .filter(|q| !report.cosets.iter().any(|c| c.contains_point(q)))
        .cloned()
        .collect();
    let spurious_cosets = report
        .cosets
        .iter()
        .filter(|c| !c.lies_on(system))
        .cloned()
        .collect();
    Ok(OracleReport {
        max_order,
        points,
        missed_by_solver,
        spurious_cosets,
    })
}
