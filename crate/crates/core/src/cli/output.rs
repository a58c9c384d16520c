use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{RootOfUnity, TorsionPoint};
use crate::coset::{CosetError, TorsionCoset};
use crate::lattice::IntegerLattice;
use crate::oracle::OracleReport;
use crate::solver::SolveReport;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad root of unity [{0:?}, {1:?}]")]
    BadRoot(String, String),
    #[error("coset {index}: {source}")]
    Coset { index: usize, source: CosetError },
    #[error("coset {index}: lattice rows must have {n} entries")]
    RowLength { index: usize, n: usize },
}

/// Serialized form of a solve run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CosetDocument {
    pub n: usize,
    pub field: u64,
    pub cosets: Vec<CosetRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CosetRecord {
    pub dim: usize,
    pub point: Vec<[String; 2]>,
    pub lattice: Vec<Vec<i64>>,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyDocument {
    #[serde(flatten)]
    pub solution: CosetDocument,
    pub max_order: u64,
    pub oracle_points: usize,
    pub missed: Vec<Vec<[String; 2]>>,
    pub spurious: Vec<CosetRecord>,
}

fn root_pair(r: &RootOfUnity) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn point_pairs(q: &TorsionPoint) -> Vec<[String; 2]> {
    q.coords().iter().map(root_pair).collect()
}

fn record(c: &TorsionCoset, certified: bool) -> CosetRecord {
    CosetRecord {
        dim: c.dim(),
        point: point_pairs(&c.canonical_point()),
        lattice: c.lattice().basis().rows().map(<[i64]>::to_vec).collect(),
        certified,
    }
}

impl CosetDocument {
    pub fn from_report(report: &SolveReport, field: u64) -> Self {
        let cosets = report
            .cosets
            .iter()
            .zip(&report.certificates)
            .map(|(c, cert)| record(c, cert.certified))
            .collect();
        CosetDocument {
            n: report.nvars,
            field,
            cosets,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the cosets, so keys can be compared with a fresh solve.
    pub fn cosets(&self) -> Result<Vec<TorsionCoset>, DocumentError> {
        self.cosets
            .iter()
            .enumerate()
            .map(|(index, rec)| {
                let coords = rec
                    .point
                    .iter()
                    .map(|[a, m]| match (a.parse::<i64>(), m.parse::<i64>()) {
                        (Ok(a), Ok(m)) if m > 0 => Ok(RootOfUnity::new(a, m)),
                        _ => Err(DocumentError::BadRoot(a.clone(), m.clone())),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if rec.lattice.iter().any(|r| r.len() != self.n) {
                    return Err(DocumentError::RowLength { index, n: self.n });
                }
                let lattice = IntegerLattice::from_rows(rec.lattice.clone(), self.n);
                TorsionCoset::new(TorsionPoint(coords), lattice)
                    .map_err(|source| DocumentError::Coset { index, source })
            })
            .collect()
    }
}

impl VerifyDocument {
    pub fn new(report: &SolveReport, oracle: &OracleReport, field: u64) -> Self {
        VerifyDocument {
            solution: CosetDocument::from_report(report, field),
            max_order: oracle.max_order,
            oracle_points: oracle.points.len(),
            missed: oracle.missed_by_solver.iter().map(point_pairs).collect(),
            spurious: oracle
                .spurious_cosets
                .iter()
                .map(|c| record(c, false))
                .collect(),
        }
    }
}

fn format_point(point: &[[String; 2]]) -> String {
    let parts: Vec<String> = point.iter().map(|[a, m]| format!("{a}/{m}")).collect();
    format!("({})", parts.join(", "))
}

fn format_lattice(rows: &[Vec<i64>]) -> String {
    let rows: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Human-readable listing with the same content as the JSON document.
pub fn coset_text(doc: &CosetDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} maximal torsion coset(s) in {} variable(s) over Q(zeta_{})",
        doc.cosets.len(),
        doc.n,
        doc.field
    );
    for c in &doc.cosets {
        let _ = write!(out, "dim {}  point {}", c.dim, format_point(&c.point));
        if c.dim > 0 {
            let _ = write!(out, "  lattice {}", format_lattice(&c.lattice));
        }
        let _ = writeln!(out, "{}", if c.certified { "" } else { "  (uncertified)" });
    }
    out
}

pub fn verify_text(doc: &VerifyDocument) -> String {
    let mut out = coset_text(&doc.solution);
    let _ = writeln!(
        out,
        "oracle: {} torsion point(s) of order <= {}",
        doc.oracle_points, doc.max_order
    );
    for p in &doc.missed {
        let _ = writeln!(out, "missed by solver: {}", format_point(p));
    }
    for c in &doc.spurious {
        let _ = writeln!(
            out,
            "not on the variety: dim {} point {} lattice {}",
            c.dim,
            format_point(&c.point),
            format_lattice(&c.lattice)
        );
    }
    let verdict = if doc.missed.is_empty() && doc.spurious.is_empty() {
        "ok"
    } else {
        "MISMATCH"
    };
    let _ = writeln!(out, "{verdict}");
    out
}

/// One line of the text listing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextCoset {
    pub dim: usize,
    pub point: Vec<[String; 2]>,
    /// Omitted for points.
    pub lattice: Option<Vec<Vec<i64>>>,
}

/// Reads back the coset listing produced by [`coset_text`].
pub fn parse_coset_text(text: &str) -> Option<Vec<TextCoset>> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| l.starts_with("dim ")) {
        let rest = line.strip_prefix("dim ")?;
        let (dim, rest) = rest.split_once("  point (")?;
        let (point, rest) = rest.split_once(')')?;
        let point = if point.is_empty() {
            Vec::new()
        } else {
            point
                .split(", ")
                .map(|p| {
                    p.split_once('/')
                        .map(|(a, m)| [a.to_string(), m.to_string()])
                })
                .collect::<Option<Vec<_>>>()?
        };
        let lattice = match rest.split_once("  lattice ") {
            Some((_, l)) => {
                let l = l.split("  (").next()?;
                Some(serde_json::from_str(l).ok()?)
            }
            None => None,
        };
        out.push(TextCoset {
            dim: dim.parse().ok()?,
            point,
            lattice,
        });
    }
    Some(out)
}
