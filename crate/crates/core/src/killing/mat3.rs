//! 3×3 matrices over polynomials and Laurent polynomials in `λ` with matrix coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{DiffPoly, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mat3 {
    pub e: [[DiffPoly; 3]; 3],
}

impl Mat3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { DiffPoly::one() } else { DiffPoly::zero() })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> DiffPoly) -> Self {
        Mat3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_scalars(rows: [[Scalar; 3]; 3]) -> Self {
        Self::from_fn(|i, j| DiffPoly::constant(rows[i][j].clone()))
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> Mat3 {
        Self::from_fn(|i, j| f(&self.e[i][j]))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(DiffPoly::is_zero)
    }

    pub fn trace(&self) -> DiffPoly {
        &(&self.e[0][0] + &self.e[1][1]) + &self.e[2][2]
    }

    pub fn transpose(&self) -> Mat3 {
        Self::from_fn(|i, j| self.e[j][i].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Mat3 {
        self.map(|p| p.scale(c))
    }

    pub fn mul_fn(&self, p: &DiffPoly) -> Mat3 {
        self.map(|x| x * p)
    }

    pub fn bracket(&self, o: &Mat3) -> Mat3 {
        &(self * o) - &(o * self)
    }
}

impl Add for &Mat3 {
    type Output = Mat3;
    fn add(self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.e[i][j] + &o.e[i][j])
    }
}

impl Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.e[i][j] - &o.e[i][j])
    }
}

impl Neg for &Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.map(|p| -p)
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, o: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| {
            let mut acc = DiffPoly::zero();
            for k in 0..3 {
                if !self.e[i][k].is_zero() && !o.e[k][j].is_zero() {
                    acc += &(&self.e[i][k] * &o.e[k][j]);
                }
            }
            acc
        })
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.e.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// `Σ_k λ^k M_k` with finitely many nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopMatrix {
    pub coeffs: BTreeMap<i32, Mat3>,
}

impl LoopMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: i32, m: Mat3) -> Self {
        let mut l = Self::zero();
        l.insert(k, m);
        l
    }

    pub fn insert(&mut self, k: i32, m: Mat3) {
        if m.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, m);
        }
    }

    pub fn get(&self, k: i32) -> Mat3 {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &LoopMatrix) -> LoopMatrix {
        let mut out = self.clone();
        for (&k, m) in &o.coeffs {
            let s = &out.get(k) + m;
            out.insert(k, s);
        }
        out
    }

    /// Graded bracket: `[λ^i X, λ^j Y] = λ^{i+j}[X, Y]`.
    pub fn bracket(&self, o: &LoopMatrix) -> LoopMatrix {
        let mut out = LoopMatrix::zero();
        for (&i, x) in &self.coeffs {
            for (&j, y) in &o.coeffs {
                let s = &out.get(i + j) + &x.bracket(y);
                out.insert(i + j, s);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_brackets() {
        let a = Mat3::from_fn(|i, j| DiffPoly::int((i * 3 + j) as i64));
        assert_eq!(&a * &Mat3::identity(), a);
        assert!(a.bracket(&a).is_zero());
        assert_eq!(a.trace(), DiffPoly::int(12));
        let b = a.transpose();
        assert_eq!(a.bracket(&b), -&b.bracket(&a));
    }

    #[test]
    fn loop_bracket_adds_degrees() {
        let a = Mat3::from_fn(|i, j| DiffPoly::int((i == 0 && j == 1) as i64));
        let b = a.transpose();
        let l = LoopMatrix::single(-1, a.clone()).bracket(&LoopMatrix::single(2, b.clone()));
        assert_eq!(l.coeffs.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(l.get(1), a.bracket(&b));
    }
}
