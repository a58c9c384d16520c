//! Maximal torsion cosets on hypersurfaces and on varieties given by systems.
//!
//! Every stage produces finitely many torsion cosets that lie on the variety
//! and jointly contain all of its torsion points; a final maximality filter
//! then leaves exactly the maximal torsion cosets.

mod auxiliary;
mod binomial;
mod normalize;
mod reduction;

pub use auxiliary::{auxiliary_polynomials, candidate_family, AuxiliaryFamily};
pub use binomial::binomial_cosets;
pub use normalize::{minimal_level_normalize, LevelNormalization};
pub use reduction::{reduce_rank_deficient, rescale_to_full_lattice, RankReduction, Rescaling};

use std::sync::Mutex;

use log::{debug, warn};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{ArithError, RootOfUnity, TorsionPoint};
use crate::coset::{maximal_filter, CosetKey, TorsionCoset};
use crate::lattice::{extend_lattice_to_basis, IntegerLattice, LatticeError, UnimodularMatrix};
use crate::poly::{cyclotomic_roots, resultant, LaurentPolynomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("polynomials live in different numbers of variables")]
    DimensionMismatch,
    #[error("an auxiliary polynomial is divisible by {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("resultant vanished for coprime inputs")]
    VanishingResultant,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Maximum number of variable scalings examined per level normalization.
    pub normalization_budget: u64,
    /// Run independent branches on the rayon pool.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            normalization_budget: 1 << 16,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub max_depth: usize,
    /// Total degrees of the eliminants.
    pub resultant_degrees: Vec<i64>,
    /// Number of emitted cosets of each dimension.
    pub counts_by_dim: Vec<usize>,
    pub splits: usize,
    pub binomial_factors: usize,
    pub rank_reductions: usize,
    pub rescalings: usize,
    /// Normalizations that stopped before examining every scaling.
    pub truncated_normalizations: usize,
}

/// Evidence that a coset lies on every input polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub key: CosetKey,
    /// Number of slices evaluated at the representative.
    pub slices: usize,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub nvars: usize,
    /// Maximal torsion cosets with canonical representatives, sorted by key.
    pub cosets: Vec<TorsionCoset>,
    pub certificates: Vec<Certificate>,
    pub stats: SolveStats,
}

impl SolveReport {
    pub fn points(&self) -> Vec<&TorsionCoset> {
        self.cosets.iter().filter(|c| c.dim() == 0).collect()
    }

    pub fn all_certified(&self) -> bool {
        self.certificates.iter().all(|c| c.certified)
    }
}

pub fn hypersurface_cosets(
    f: &LaurentPolynomial,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    variety_cosets(std::slice::from_ref(f), opts)
}

pub fn variety_cosets(
    system: &[LaurentPolynomial],
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    let n = system.first().map(LaurentPolynomial::nvars).unwrap_or(0);
    if system.iter().any(|f| f.nvars() != n) {
        return Err(SolveError::DimensionMismatch);
    }
    let system: Vec<LaurentPolynomial> = system
        .iter()
        .map(LaurentPolynomial::minimize_levels)
        .collect();
    let engine = Engine {
        opts,
        stats: Mutex::new(SolveStats::default()),
    };
    let raw = engine.variety(&system, 0)?;
    let mut keyed: Vec<(CosetKey, TorsionCoset)> = maximal_filter(raw)
        .into_iter()
        .map(|c| {
            let c = c.canonicalize();
            (c.key(), c)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let certificates: Vec<Certificate> =
        keyed.iter().map(|(k, c)| certify(k, c, &system)).collect();
    for cert in certificates.iter().filter(|c| !c.certified) {
        warn!("coset {:?} failed certification", cert.key);
    }
    let cosets: Vec<TorsionCoset> = keyed.into_iter().map(|(_, c)| c).collect();
    let mut stats = engine.stats.into_inner().expect("stats lock");
    stats.counts_by_dim = vec![0; n + 1];
    for c in &cosets {
        stats.counts_by_dim[c.dim()] += 1;
    }
    Ok(SolveReport {
        nvars: n,
        cosets,
        certificates,
        stats,
    })
}

fn certify(key: &CosetKey, coset: &TorsionCoset, system: &[LaurentPolynomial]) -> Certificate {
    let g = coset.exponent_matrix();
    let mut slices = 0;
    let mut certified = true;
    for f in system {
        for s in f.coset_slices(&g).values() {
            slices += 1;
            if !s.vanishes_at(coset.representative()) {
                certified = false;
            }
        }
    }
    Certificate {
        key: key.clone(),
        slices,
        certified,
    }
}

/// `f` multiplied by a monomial so that its lex-smallest exponent is zero.
pub(crate) fn shift_to_origin(f: &LaurentPolynomial) -> LaurentPolynomial {
    match f.terms().keys().next() {
        Some(e) => {
            let neg: Vec<i64> = e.iter().map(|x| -x).collect();
            f.shift(&neg)
        }
        None => f.clone(),
    }
}

struct Engine<'a> {
    opts: &'a SolveOptions,
    stats: Mutex<SolveStats>,
}

impl Engine<'_> {
    fn record(&self, f: impl FnOnce(&mut SolveStats)) {
        f(&mut self.stats.lock().expect("stats lock"));
    }

    fn map_all<T, F>(&self, items: &[T], f: F) -> Result<Vec<TorsionCoset>, SolveError>
    where
        T: Sync,
        F: Fn(&T) -> Result<Vec<TorsionCoset>, SolveError> + Sync + Send,
    {
        let parts: Vec<Vec<TorsionCoset>> = if self.opts.parallel && items.len() > 1 {
            items.par_iter().map(&f).collect::<Result<_, _>>()?
        } else {
            items.iter().map(&f).collect::<Result<_, _>>()?
        };
        Ok(maximal_filter(parts.into_iter().flatten().collect()))
    }

    fn variety(
        &self,
        system: &[LaurentPolynomial],
        depth: usize,
    ) -> Result<Vec<TorsionCoset>, SolveError> {
        self.record(|s| s.max_depth = s.max_depth.max(depth));
        let n = system.first().map(LaurentPolynomial::nvars).unwrap_or(0);
        let live: Vec<&LaurentPolynomial> = system.iter().filter(|f| !f.is_zero()).collect();
        if live.is_empty() {
            return Ok(vec![TorsionCoset::torus(n)]);
        }
        if live.iter().any(|f| f.is_monomial()) {
            return Ok(Vec::new());
        }
        if live.len() == 1 {
            return self.hypersurface(live[0], depth);
        }
        let first = self.hypersurface(live[0], depth)?;
        let rest: Vec<LaurentPolynomial> = live[1..].iter().map(|f| (*f).clone()).collect();
        self.map_all(&first, |d| {
            if d.dim() == 0 {
                let q = d.representative();
                return Ok(if rest.iter().all(|f| f.vanishes_at(q)) {
                    vec![d.clone()]
                } else {
                    Vec::new()
                });
            }
            self.on_coset(&rest, d, depth + 1)
        })
    }

    /// Cosets of `V(system)` inside the coset `c`.
    fn on_coset(
        &self,
        system: &[LaurentPolynomial],
        c: &TorsionCoset,
        depth: usize,
    ) -> Result<Vec<TorsionCoset>, SolveError> {
        let n = c.ambient_dim();
        let k = c.lattice().rank();
        if k == 0 {
            return self.variety(system, depth);
        }
        let u = UnimodularMatrix::new(extend_lattice_to_basis(c.lattice().basis())?)?;
        let moved = c.transform(&u);
        let prefix: Vec<RootOfUnity> = moved.representative().coords()[..k].to_vec();
        let restricted: Vec<LaurentPolynomial> = system
            .iter()
            .map(|f| {
                f.monoidal_image(&u)
                    .substitute_prefix(&prefix)
                    .minimize_levels()
            })
            .collect();
        let sub = self.variety(&restricted, depth + 1)?;
        let back = u.inverse();
        Ok(sub
            .iter()
            .map(|e| {
                let mut point = prefix.clone();
                point.extend_from_slice(e.representative().coords());
                let mut rows: Vec<Vec<i64>> = (0..k)
                    .map(|i| {
                        let mut row = vec![0; n];
                        row[i] = 1;
                        row
                    })
                    .collect();
                rows.extend(e.lattice().basis().rows().map(|a| {
                    let mut row = vec![0; k];
                    row.extend_from_slice(a);
                    row
                }));
                TorsionCoset::from_parts(TorsionPoint(point), IntegerLattice::from_rows(rows, n))
                    .transform(&back)
            })
            .collect())
    }

    fn hypersurface(
        &self,
        f: &LaurentPolynomial,
        depth: usize,
    ) -> Result<Vec<TorsionCoset>, SolveError> {
        self.record(|s| s.max_depth = s.max_depth.max(depth));
        let n = f.nvars();
        if f.is_zero() {
            return Ok(vec![TorsionCoset::torus(n)]);
        }
        if f.is_monomial() {
            return Ok(Vec::new());
        }
        let f = shift_to_origin(f);
        if n == 1 {
            return Ok(cyclotomic_roots(&f)?
                .into_iter()
                .map(|w| TorsionCoset::point(TorsionPoint(vec![w])))
                .collect());
        }
        let (binomials, cofactor) = binomial_cosets(&f);
        if !binomials.is_empty() {
            self.record(|s| s.binomial_factors += binomials.len());
            let mut out = binomials;
            out.extend(self.hypersurface(&cofactor, depth + 1)?);
            return Ok(maximal_filter(out));
        }
        let lattice = f.exponent_lattice()?;
        if lattice.rank() < n {
            self.record(|s| s.rank_reductions += 1);
            let red = reduce_rank_deficient(&f)?;
            let sub = self.hypersurface(&red.poly, depth + 1)?;
            return Ok(maximal_filter(sub.iter().map(|c| red.lift(c)).collect()));
        }
        if lattice.index() != Some(1) {
            self.record(|s| s.rescalings += 1);
            let rs = rescale_to_full_lattice(&f)?;
            let sub = self.hypersurface(&rs.poly, depth + 1)?;
            return Ok(maximal_filter(
                sub.iter().flat_map(|c| rs.pullback(c)).collect(),
            ));
        }
        let norm = minimal_level_normalize(&f, self.opts.normalization_budget);
        if !norm.exhaustive {
            self.record(|s| s.truncated_normalizations += 1);
        }
        let g = &norm.poly;
        let found = match auxiliary_polynomials(g)? {
            AuxiliaryFamily::Split(h) => {
                self.record(|s| s.splits += 1);
                let q = g.try_divide(&h).expect("common factor divides");
                debug!("splitting {g} into {h} and {q}");
                self.map_all(&[h, q], |p| self.hypersurface(p, depth + 1))?
            }
            AuxiliaryFamily::Polys(family) => {
                self.map_all(&family, |fk| self.eliminate(g, fk, depth))?
            }
        };
        Ok(found.iter().map(|c| norm.unscale(c)).collect())
    }

    /// Cosets of `H(f)` above the torsion cosets of `H(Res(f, fk, X_n))`.
    fn eliminate(
        &self,
        f: &LaurentPolynomial,
        fk: &LaurentPolynomial,
        depth: usize,
    ) -> Result<Vec<TorsionCoset>, SolveError> {
        let n = f.nvars();
        let gk = resultant(f, fk, n - 1)?.minimize_levels();
        if gk.is_zero() {
            return Err(SolveError::VanishingResultant);
        }
        self.record(|s| s.resultant_degrees.push(gk.total_degree()));
        let below = self.hypersurface(&gk, depth + 1)?;
        let f = f.clone();
        self.map_all(&below, |d| {
            let rows = d
                .lattice()
                .basis()
                .rows()
                .map(|a| {
                    let mut row = a.to_vec();
                    row.push(0);
                    row
                })
                .collect();
            let mut point = d.representative().coords().to_vec();
            point.push(RootOfUnity::ONE);
            let fiber =
                TorsionCoset::from_parts(TorsionPoint(point), IntegerLattice::from_rows(rows, n));
            self.on_coset(std::slice::from_ref(&f), &fiber, depth + 1)
        })
    }
}
