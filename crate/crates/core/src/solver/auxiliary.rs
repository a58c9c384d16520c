use super::SolveError;
use crate::arith::numtheory::canonical_level;
use crate::arith::{RootOfUnity, TorsionPoint};
use crate::poly::LaurentPolynomial;

/// Outcome of building the auxiliary family.
#[derive(Clone, Debug)]
pub enum AuxiliaryFamily {
    /// Polynomials whose hypersurfaces cover the torsion points of `H(f)`,
    /// each coprime to `f`.
    Polys(Vec<LaurentPolynomial>),
    /// A proper factor of `f` shared with some candidate.
    Split(LaurentPolynomial),
}

/// The `2^{n+1} - 1` polynomials of degree at most `2 deg f` whose
/// hypersurfaces jointly contain every torsion point of `H(f)`.
///
/// With coefficient level `N` (odd or divisible by 4) the family consists of
/// the sign variants `f(eX)`, `e != 1`, together with `f^s(e X^2)` when `N`
/// is odd (`s: zeta_N -> zeta_N^2`) or `f^t(e X)` when `4 | N`
/// (`t: zeta_N -> -zeta_N`).
pub fn auxiliary_polynomials(f: &LaurentPolynomial) -> Result<AuxiliaryFamily, SolveError> {
    if f.is_zero() || f.is_monomial() {
        return Err(SolveError::Precondition(
            "auxiliary family needs a nonconstant polynomial",
        ));
    }
    let family = candidate_family(f);
    for g in &family {
        if g.try_divide(f).is_some() {
            return Err(SolveError::Degenerate(f.to_string()));
        }
        let common = f.gcd(g);
        if !common.is_unit() {
            return Ok(AuxiliaryFamily::Split(common));
        }
    }
    Ok(AuxiliaryFamily::Polys(family))
}

/// The family without the coprimality guard.
pub fn candidate_family(f: &LaurentPolynomial) -> Vec<LaurentPolynomial> {
    let n = f.nvars();
    let f = f.minimize_levels();
    let level = canonical_level(f.level());
    let signs = sign_vectors(n);
    let mut out: Vec<LaurentPolynomial> = signs[1..].iter().map(|e| f.scale_variables(e)).collect();
    if level.is_multiple_of(4) {
        let ft = conjugate(&f, level, 1 + level as i64 / 2);
        out.extend(signs.iter().map(|e| ft.scale_variables(e)));
    } else {
        let fs = conjugate(&f, level, 2);
        out.extend(signs.iter().map(|e| fs.substitute_power(e, 2)));
    }
    out
}

fn conjugate(f: &LaurentPolynomial, level: u64, k: i64) -> LaurentPolynomial {
    if level <= 2 {
        return f.clone();
    }
    f.map_coeffs(|c| {
        c.embed(level)
            .expect("coefficient level divides N")
            .galois(k)
            .minimal_level()
    })
}

/// All `e in {1, -1}^n`, the all-ones vector first.
fn sign_vectors(n: usize) -> Vec<TorsionPoint> {
    (0..1usize << n)
        .map(|mask| {
            TorsionPoint(
                (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            RootOfUnity::minus_one()
                        } else {
                            RootOfUnity::ONE
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}
