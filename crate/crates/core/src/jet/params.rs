//! The potential `f = e^{−αu} − e^{2αu}` and the memoized sequence `T^i`.

use std::sync::{Arc, Mutex};

use num_rational::Rational64;
use num_traits::Zero;

use crate::algebra::{DiffPoly, Scalar};
use crate::error::Error;

/// Binomial coefficient as an exact scalar.
pub(crate) fn binom(n: u32, k: u32) -> Scalar {
    let mut num: i128 = 1;
    for j in 0..k as i128 {
        num = num * (n as i128 - j) / (j + 1);
    }
    Scalar::int(num as i64)
}

#[derive(Debug)]
pub struct SystemParams {
    alpha: Rational64,
    f: DiffPoly,
    f_u: DiffPoly,
    f_uu: DiffPoly,
    t: Mutex<Vec<Arc<DiffPoly>>>,
    tb: Mutex<Vec<Arc<DiffPoly>>>,
}

impl SystemParams {
    pub fn new(alpha: Rational64) -> Result<Self, Error> {
        if alpha.is_zero() {
            return Err(Error::Precondition("alpha must be nonzero".into()));
        }
        let f = &DiffPoly::exp(-alpha) - &DiffPoly::exp(alpha * 2);
        let f_u = f.partial_u();
        let f_uu = f_u.partial_u();
        Ok(SystemParams {
            alpha,
            t: Mutex::new(vec![Arc::new(f.clone())]),
            tb: Mutex::new(vec![Arc::new(f.clone())]),
            f,
            f_u,
            f_uu,
        })
    }

    /// The normalized equation, `α = −1`: `f = e^u − e^{−2u}`.
    pub fn tzitzeica() -> Self {
        Self::new(Rational64::from_integer(-1)).unwrap()
    }

    pub fn alpha(&self) -> Rational64 {
        self.alpha
    }

    pub fn is_normalized(&self) -> bool {
        self.alpha == Rational64::from_integer(-1)
    }

    pub fn f(&self) -> &DiffPoly {
        &self.f
    }

    pub fn f_u(&self) -> &DiffPoly {
        &self.f_u
    }

    pub fn f_uu(&self) -> &DiffPoly {
        &self.f_uu
    }

    /// `T^0 = f`, `T^{i+1} = Σ_j C(i,j) u_{i−j} T^j_u`.
    pub fn t(&self, i: u32) -> Arc<DiffPoly> {
        let mut memo = self.t.lock().unwrap();
        while memo.len() <= i as usize {
            let n = memo.len() as u32 - 1;
            let mut next = DiffPoly::zero();
            for j in 0..=n {
                let term = &DiffPoly::u(n - j) * &memo[j as usize].partial_u();
                next += &term.scale(&binom(n, j));
            }
            memo.push(Arc::new(next));
        }
        memo[i as usize].clone()
    }

    /// Conjugate sequence `T̄^i`.
    pub fn tb(&self, i: u32) -> Arc<DiffPoly> {
        {
            let memo = self.tb.lock().unwrap();
            if let Some(t) = memo.get(i as usize) {
                return t.clone();
            }
        }
        let fresh: Vec<_> = (0..=i).map(|k| self.t(k)).collect();
        let mut memo = self.tb.lock().unwrap();
        while memo.len() <= i as usize {
            let k = memo.len();
            memo.push(Arc::new(fresh[k].conjugate()));
        }
        memo[i as usize].clone()
    }
}
