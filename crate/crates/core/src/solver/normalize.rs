use num_traits::Zero;

use crate::arith::numtheory::{canonical_level, lcm};
use crate::arith::{CyclotomicNumber, RootOfUnity, TorsionPoint};
use crate::coset::TorsionCoset;
use crate::poly::LaurentPolynomial;

/// `poly(X) = f(z X) / c` with coefficients in `Q(zeta_level)`.
#[derive(Clone, Debug)]
pub struct LevelNormalization {
    pub scaling: TorsionPoint,
    pub level: u64,
    pub poly: LaurentPolynomial,
    /// Whether every candidate scaling was examined.
    pub exhaustive: bool,
}

impl LevelNormalization {
    /// Maps a coset on `H(poly)` to the corresponding coset on `H(f)`.
    pub fn unscale(&self, coset: &TorsionCoset) -> TorsionCoset {
        TorsionCoset::from_parts(
            self.scaling.mul(coset.representative()),
            coset.lattice().clone(),
        )
    }
}

/// Searches variable scalings by roots of unity of order dividing twice the
/// coefficient level for the smallest coefficient field, trying at most
/// `budget` scalings.
pub fn minimal_level_normalize(f: &LaurentPolynomial, budget: u64) -> LevelNormalization {
    let n = f.nvars();
    let f = f.minimize_levels();
    let Some((lead_e, lead_c)) = f.leading_term() else {
        return LevelNormalization {
            scaling: TorsionPoint::identity(n),
            level: 1,
            poly: f,
            exhaustive: true,
        };
    };
    let inv = lead_c.inv().expect("nonzero leading coefficient");
    let ratios: Vec<(Vec<i64>, CyclotomicNumber)> = f
        .terms()
        .iter()
        .map(|(e, c)| (e.iter().zip(lead_e).map(|(a, b)| a - b).collect(), c * &inv))
        .collect();
    let m = 2 * ratios
        .iter()
        .fold(1, |acc, (_, c)| lcm(acc, c.minimal_level().level()));
    // level of r * zeta_m^j for every ratio r and every j
    let table: Vec<Vec<u64>> = ratios
        .iter()
        .map(|(_, c)| {
            (0..m)
                .map(|j| {
                    c.mul_root(&RootOfUnity::new(j as i64, m as i64))
                        .minimal_level()
                        .level()
                })
                .collect()
        })
        .collect();
    let level_of = |z: &[u64]| -> u64 {
        let l = ratios.iter().zip(&table).fold(1, |acc, ((d, _), row)| {
            let j = d
                .iter()
                .zip(z)
                .map(|(a, b)| a * *b as i64)
                .sum::<i64>()
                .rem_euclid(m as i64);
            lcm(acc, row[j as usize])
        });
        canonical_level(l)
    };
    let mut z = vec![0u64; n];
    let mut best = (level_of(&z), z.clone());
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let exhaustive = total <= budget as u128;
    let mut tried = 1u64;
    while best.0 > 1 && tried < budget && advance(&mut z, m) {
        tried += 1;
        let l = level_of(&z);
        if l < best.0 {
            best = (l, z.clone());
        }
    }
    let scaling = TorsionPoint(
        best.1
            .iter()
            .map(|&k| RootOfUnity::new(k as i64, m as i64))
            .collect(),
    );
    let poly = f.scale_variables(&scaling).make_monic().minimize_levels();
    debug_assert!(poly.terms().values().all(|c| !c.is_zero()));
    LevelNormalization {
        scaling,
        level: best.0,
        poly,
        exhaustive,
    }
}

fn advance(z: &mut [u64], m: u64) -> bool {
    for x in z.iter_mut() {
        *x += 1;
        if *x < m {
            return true;
        }
        *x = 0;
    }
    false
}
