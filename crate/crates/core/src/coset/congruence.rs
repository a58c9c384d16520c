use crate::arith::{RootOfUnity, TorsionPoint};
use crate::lattice::{smith_decomposition, IntegerLattice, Matrix};

/// Torsion solutions `q` of `R q = s (mod 1)`.
///
/// The solution set is the union over [`CongruenceSolution::classes`] of the
/// cosets `q_j H`, where `H` is the subtorus of the saturated row lattice.
#[derive(Clone, Debug)]
pub struct CongruenceSolution {
    /// One solution, or `None` when the system is inconsistent.
    pub particular: Option<TorsionPoint>,
    /// Saturation of the row lattice of `R`.
    pub homogeneous: IntegerLattice,
    /// Number of solution classes modulo the connected component.
    pub class_count: u64,
    rank_divisors: Vec<i64>,
    v: Matrix<i64>,
    ws: Vec<RootOfUnity>,
}

impl CongruenceSolution {
    /// One representative per solution class (empty if inconsistent).
    pub fn classes(&self) -> Vec<TorsionPoint> {
        if self.particular.is_none() {
            return Vec::new();
        }
        let n = self.v.nrows();
        let r = self.rank_divisors.len();
        let mut out = Vec::with_capacity(self.class_count as usize);
        let mut idx = vec![0i64; r];
        loop {
            let mut y = vec![RootOfUnity::ONE; n];
            for i in 0..r {
                let d = self.rank_divisors[i];
                let s = self.ws[i];
                y[i] = RootOfUnity::new(s.numer() + idx[i] * s.denom(), s.denom() * d);
            }
            let yp = TorsionPoint(y);
            out.push(TorsionPoint(
                self.v.rows().map(|row| yp.power(row)).collect(),
            ));
            let mut k = 0;
            loop {
                if k == r {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < self.rank_divisors[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Solves `R q = s (mod 1)` through the Smith form `W R V = D`.
pub fn solve_exponent_congruences(r: &Matrix<i64>, s: &[RootOfUnity]) -> CongruenceSolution {
    assert_eq!(r.nrows(), s.len());
    let n = r.ncols();
    let snf = smith_decomposition(r);
    let rank = snf.rank();
    let sp = TorsionPoint(s.to_vec());
    let ws: Vec<RootOfUnity> = snf.w.rows().map(|row| sp.power(row)).collect();
    let consistent = ws[rank..].iter().all(RootOfUnity::is_one);
    let divisors: Vec<i64> = snf.diag[..rank].to_vec();
    let class_count = divisors.iter().map(|&d| d as u64).product();
    let homogeneous = IntegerLattice::new(r).saturation();
    let particular = consistent.then(|| {
        let mut y = vec![RootOfUnity::ONE; n];
        for i in 0..rank {
            let s = ws[i];
            y[i] = RootOfUnity::new(s.numer(), s.denom() * divisors[i]);
        }
        let yp = TorsionPoint(y);
        TorsionPoint(snf.v.rows().map(|row| yp.power(row)).collect())
    });
    CongruenceSolution {
        particular,
        homogeneous,
        class_count,
        rank_divisors: divisors,
        v: snf.v,
        ws: ws[..rank].to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, m: i64) -> RootOfUnity {
        RootOfUnity::new(a, m)
    }

    fn m(rows: &[&[i64]], ncols: usize) -> Matrix<i64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), ncols)
    }

    #[test]
    fn halves_of_thirds() {
        let sol = solve_exponent_congruences(&m(&[&[2, 0], &[0, 2]], 2), &[r(1, 3), r(2, 3)]);
        assert_eq!(sol.class_count, 4);
        let mut got = sol.classes();
        got.sort();
        let mut expected: Vec<TorsionPoint> = [(1, 6), (2, 3)]
            .iter()
            .flat_map(|&a| [(1, 3), (5, 6)].map(|b| TorsionPoint(vec![r(a.0, a.1), r(b.0, b.1)])))
            .collect();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn identity_system() {
        let s = [r(1, 5), r(3, 7)];
        let sol = solve_exponent_congruences(&Matrix::identity(2), &s);
        assert_eq!(sol.class_count, 1);
        assert_eq!(sol.particular, Some(TorsionPoint(s.to_vec())));
    }

    #[test]
    fn inconsistent_system() {
        let sol = solve_exponent_congruences(&m(&[&[2, 0], &[1, 0]], 2), &[r(1, 2), r(1, 3)]);
        assert!(sol.particular.is_none());
        assert!(sol.classes().is_empty());
    }

    #[test]
    fn positive_dimensional_solutions() {
        // 2 q1 + 2 q2 = 1/3 : component lattice (1,1), two classes
        let sol = solve_exponent_congruences(&m(&[&[2, 2]], 2), &[r(1, 3)]);
        assert_eq!(sol.class_count, 2);
        assert_eq!(
            sol.homogeneous,
            IntegerLattice::from_rows(vec![vec![1, 1]], 2)
        );
        for q in sol.classes() {
            assert_eq!(q.power(&[2, 2]), r(1, 3));
        }
    }
}
