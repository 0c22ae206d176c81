//! Exact sparse Gauss–Jordan elimination over ℚ(i, √2).

use std::collections::BTreeMap;

use crate::algebra::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Rows `Σ_c a_c x_c = rhs` over `ncols` unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<(SparseRow, Scalar)>,
}

/// Full solution set: `particular + span(nullspace)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infeasible;

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Dense constructor, mostly for tests.
    pub fn from_dense(a: &[Vec<Scalar>], b: &[Scalar]) -> Self {
        let ncols = a.first().map_or(0, Vec::len);
        let mut s = Self::new(ncols);
        for (row, rhs) in a.iter().zip(b) {
            let r = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect();
            s.push_row(r, rhs.clone());
        }
        s
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: SparseRow, rhs: Scalar) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        self.rows.push((row, rhs));
    }

    pub fn solve(&self) -> Result<Solution, Infeasible> {
        let pivots = gauss_jordan(self.rows.iter().cloned())?;
        let mut particular = vec![Scalar::zero(); self.ncols];
        for (&c, (_, rhs)) in &pivots {
            particular[c] = rhs.clone();
        }
        let mut nullspace = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains_key(c)) {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[free] = Scalar::one();
            for (&c, (prow, _)) in &pivots {
                if let Some(k) = prow.get(&free) {
                    v[c] = -k;
                }
            }
            nullspace.push(v);
        }
        Ok(Solution {
            particular,
            nullspace,
            rank: pivots.len(),
        })
    }
}

type Pivots = BTreeMap<usize, (SparseRow, Scalar)>;

/// Incremental reduction: each incoming row is reduced by the stored pivots,
/// its first nonzero column becomes a new pivot, and the stored rows are kept
/// fully reduced, so the result is in reduced row echelon form.
fn gauss_jordan(rows: impl Iterator<Item = (SparseRow, Scalar)>) -> Result<Pivots, Infeasible> {
    let mut pivots = Pivots::new();
    for (mut row, mut rhs) in rows {
        let hits: Vec<usize> = row.keys().filter(|c| pivots.contains_key(c)).copied().collect();
        for c in hits {
            let Some(k) = row.get(&c).cloned() else { continue };
            let (prow, prhs) = &pivots[&c];
            axpy(&mut row, &-&k, prow);
            rhs -= &(&k * prhs);
        }
        let Some((&pc, lead)) = row.iter().next() else {
            if rhs.is_zero() {
                continue;
            }
            return Err(Infeasible);
        };
        let inv = lead.inv().expect("nonzero pivot");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        rhs = &rhs * &inv;
        for (prow, prhs) in pivots.values_mut() {
            if let Some(k) = prow.get(&pc).cloned() {
                axpy(prow, &-&k, &row);
                *prhs -= &(&k * &rhs);
            }
        }
        pivots.insert(pc, (row, rhs));
    }
    Ok(pivots)
}

/// `row += k · other`.
fn axpy(row: &mut SparseRow, k: &Scalar, other: &SparseRow) {
    for (&c, v) in other {
        let e = row.entry(c).or_insert_with(Scalar::zero);
        *e += &(k * v);
        if e.is_zero() {
            row.remove(&c);
        }
    }
}

/// Reduced row echelon form of a list of vectors; zero rows are dropped and
/// each remaining row is monic at its first nonzero entry.
pub fn echelonize(vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = vs.first().map_or(0, Vec::len);
    let rows = vs.iter().map(|v| {
        let r: SparseRow = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        (r, Scalar::zero())
    });
    let pivots = gauss_jordan(rows).expect("homogeneous rows are consistent");
    pivots
        .into_values()
        .map(|(r, _)| {
            let mut v = vec![Scalar::zero(); n];
            for (c, x) in r {
                v[c] = x;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn identity_system() {
        let sys = LinearSystem::from_dense(&[vec![s(1), s(0)], vec![s(0), s(1)]], &[s(2), s(3)]);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.particular, vec![s(2), s(3)]);
        assert!(sol.nullspace.is_empty());
        assert_eq!(sol.rank, 2);
    }

    #[test]
    fn underdetermined_system() {
        let sys = LinearSystem::from_dense(&[vec![s(1), s(1)]], &[s(0)]);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.nullspace, vec![vec![s(-1), s(1)]]);
    }

    #[test]
    fn inconsistent_system() {
        let sys = LinearSystem::from_dense(&[vec![s(1)], vec![s(1)]], &[s(0), s(1)]);
        assert_eq!(sys.solve(), Err(Infeasible));
    }

    #[test]
    fn irrational_entries() {
        // [[√2, i], [1, 1]] x = [1, 0]
        let a = vec![vec![Scalar::sqrt2(), Scalar::i()], vec![s(1), s(1)]];
        let sys = LinearSystem::from_dense(&a, &[s(1), s(0)]);
        let x = sys.solve().unwrap().particular;
        let r0 = &(&a[0][0] * &x[0]) + &(&a[0][1] * &x[1]);
        let r1 = &x[0] + &x[1];
        assert!(r0.is_one() && r1.is_zero());
    }

    #[test]
    fn echelon_rows_are_monic() {
        let e = echelonize(&[vec![s(0), s(2), s(4)], vec![s(3), s(3), s(0)], vec![s(3), s(5), s(4)]]);
        assert_eq!(e, vec![vec![s(1), s(0), s(-2)], vec![s(0), s(1), s(2)]]);
    }
}
