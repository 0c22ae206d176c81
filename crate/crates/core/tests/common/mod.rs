//! Test oracle: truncated Taylor-series solutions of `u_{zz̄} = e^{2αu} − e^{−αu}`.
//!
//! A solution is built from random Goursat data `u(z,0)`, `u(0,z̄)` and every
//! jet variable is read off as a series derivative, so the checks below are
//! independent of the symbolic total-derivative machinery.

#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tzitzeica::algebra::{DiffPoly, Generator};

/// Coefficients `c[m][n]` of `Σ c_{mn} z^m z̄^n`, valid for `m + n ≤ deg`.
#[derive(Clone, Debug)]
pub struct Series {
    pub deg: usize,
    pub c: Vec<Vec<Complex64>>,
}

impl Series {
    pub fn zero(deg: usize) -> Self {
        Series {
            deg,
            c: vec![vec![Complex64::new(0.0, 0.0); deg + 1]; deg + 1],
        }
    }

    pub fn constant(deg: usize, x: Complex64) -> Self {
        let mut s = Self::zero(deg);
        s.c[0][0] = x;
        s
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        if m + n <= self.deg {
            self.c[m][n]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn add(&self, o: &Series) -> Series {
        let deg = self.deg.min(o.deg);
        let mut s = Series::zero(deg);
        for m in 0..=deg {
            for n in 0..=deg - m {
                s.c[m][n] = self.c[m][n] + o.c[m][n];
            }
        }
        s
    }

    pub fn scale(&self, k: Complex64) -> Series {
        let mut s = self.clone();
        for row in &mut s.c {
            for x in row {
                *x *= k;
            }
        }
        s
    }

    pub fn mul(&self, o: &Series) -> Series {
        let deg = self.deg.min(o.deg);
        let mut s = Series::zero(deg);
        for m1 in 0..=deg {
            for n1 in 0..=deg - m1 {
                let a = self.c[m1][n1];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for m2 in 0..=deg - m1 - n1 {
                    for n2 in 0..=deg - m1 - n1 - m2 {
                        s.c[m1 + m2][n1 + n2] += a * o.c[m2][n2];
                    }
                }
            }
        }
        s
    }

    pub fn dz(&self) -> Series {
        if self.deg == 0 {
            return Series::zero(0);
        }
        let deg = self.deg - 1;
        let mut s = Series::zero(deg);
        for m in 0..=deg {
            for n in 0..=deg - m {
                s.c[m][n] = self.c[m + 1][n] * (m + 1) as f64;
            }
        }
        s
    }

    pub fn dzb(&self) -> Series {
        if self.deg == 0 {
            return Series::zero(0);
        }
        let deg = self.deg - 1;
        let mut s = Series::zero(deg);
        for m in 0..=deg {
            for n in 0..=deg - m {
                s.c[m][n] = self.c[m][n + 1] * (n + 1) as f64;
            }
        }
        s
    }

    /// `exp(k·self)` by the finite Taylor sum of the nilpotent part.
    pub fn exp_scaled(&self, k: f64) -> Series {
        let c0 = self.c[0][0] * k;
        let mut nil = self.scale(Complex64::new(k, 0.0));
        nil.c[0][0] = Complex64::new(0.0, 0.0);
        let mut acc = Series::constant(self.deg, Complex64::new(1.0, 0.0));
        let mut pow = acc.clone();
        for j in 1..=self.deg {
            pow = pow.mul(&nil).scale(Complex64::new(1.0 / j as f64, 0.0));
            acc = acc.add(&pow);
        }
        acc.scale(c0.exp())
    }

    pub fn max_abs_up_to(&self, deg: usize) -> f64 {
        let mut best: f64 = 0.0;
        for m in 0..=deg.min(self.deg) {
            for n in 0..=deg.min(self.deg) - m {
                best = best.max(self.c[m][n].norm());
            }
        }
        best
    }
}

/// Jet data of one series solution.
pub struct Solution {
    pub alpha: f64,
    pub u: Series,
    pub du: Vec<Series>,
    pub dub: Vec<Series>,
    pub z: Series,
    pub zb: Series,
}

impl Solution {
    /// Random real-analytic solution with `u(z̄) = conj(u(z))` data, to degree `deg`.
    pub fn random(alpha: f64, deg: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut u = Series::zero(deg);
        u.c[0][0] = Complex64::new(rng.gen_range(-0.3..0.3), 0.0);
        for m in 1..=deg {
            let x = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (0.7f64).powi(m as i32);
            u.c[m][0] = x;
            u.c[0][m] = x.conj();
        }
        // (m+1)(n+1) c_{m+1,n+1} = [e^{2αu} − e^{−αu}]_{m,n}, filled by total degree.
        for k in 2..=deg {
            let rhs = u
                .exp_scaled(2.0 * alpha)
                .add(&u.exp_scaled(-alpha).scale(Complex64::new(-1.0, 0.0)));
            for m in 1..k {
                let n = k - m;
                u.c[m][n] = rhs.c[m - 1][n - 1] / ((m * n) as f64);
            }
        }
        let mut du = Vec::new();
        let mut dub = Vec::new();
        let (mut a, mut b) = (u.dz(), u.dzb());
        for _ in 0..deg {
            du.push(a.clone());
            dub.push(b.clone());
            a = a.dz();
            b = b.dzb();
        }
        let mut z = Series::zero(deg);
        let mut zb = Series::zero(deg);
        if deg >= 1 {
            z.c[1][0] = Complex64::new(1.0, 0.0);
            zb.c[0][1] = Complex64::new(1.0, 0.0);
        }
        Solution {
            alpha,
            u,
            du,
            dub,
            z,
            zb,
        }
    }

    /// The potential `f(u) = e^{−αu} − e^{2αu}` and `f_u` along the solution.
    pub fn f(&self) -> Series {
        self.u
            .exp_scaled(-self.alpha)
            .add(&self.u.exp_scaled(2.0 * self.alpha).scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn f_u(&self) -> Series {
        let a = self.alpha;
        self.u
            .exp_scaled(-a)
            .scale(Complex64::new(-a, 0.0))
            .add(&self.u.exp_scaled(2.0 * a).scale(Complex64::new(-2.0 * a, 0.0)))
    }

    /// A polynomial evaluated along the solution.
    pub fn eval(&self, p: &DiffPoly) -> Series {
        let deg = self.u.deg;
        let mut acc = Series::zero(deg);
        for (m, c) in p.terms() {
            let mut t = self.u.exp_scaled(m.exp_u().to_f64().unwrap());
            t = t.scale(c.to_complex());
            for (g, e) in m.powers() {
                let s = match g {
                    Generator::Z => &self.z,
                    Generator::Zb => &self.zb,
                    Generator::U(j) => &self.du[j as usize],
                    Generator::Ub(j) => &self.dub[j as usize],
                };
                for _ in 0..e {
                    t = t.mul(s);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Relative size of `P_{zz̄} + f_u·P` in low-order coefficients.
    pub fn linearization_residual(&self, p: &DiffPoly, check_deg: usize) -> f64 {
        let ps = self.eval(p);
        let lhs = ps.dz().dzb();
        let rhs = self.f_u().mul(&ps);
        let res = lhs.add(&rhs);
        res.max_abs_up_to(check_deg)
            / lhs
                .max_abs_up_to(check_deg)
                .max(rhs.max_abs_up_to(check_deg))
                .max(1e-300)
    }

    /// Relative size of `∂_z̄P − ∂_zQ` for the one-form `P dz + Q dz̄`.
    pub fn closedness_residual(&self, p: &DiffPoly, q: &DiffPoly, check_deg: usize) -> f64 {
        let a = self.eval(p).dzb();
        let b = self.eval(q).dz();
        let res = a.add(&b.scale(Complex64::new(-1.0, 0.0)));
        res.max_abs_up_to(check_deg) / a.max_abs_up_to(check_deg).max(b.max_abs_up_to(check_deg)).max(1e-300)
    }

    /// Relative size of `(∂_zG − P, ∂_z̄G − Q)`.
    pub fn potential_residual(&self, g: &DiffPoly, p: &DiffPoly, q: &DiffPoly, check_deg: usize) -> f64 {
        let gs = self.eval(g);
        let (ps, qs) = (self.eval(p), self.eval(q));
        let r1 = gs.dz().add(&ps.scale(Complex64::new(-1.0, 0.0)));
        let r2 = gs.dzb().add(&qs.scale(Complex64::new(-1.0, 0.0)));
        let scale = ps.max_abs_up_to(check_deg).max(qs.max_abs_up_to(check_deg)).max(1e-300);
        r1.max_abs_up_to(check_deg).max(r2.max_abs_up_to(check_deg)) / scale
    }
}

/// Tolerance for the series oracle; symbolic checks are exact.
pub const SERIES_TOL: f64 = 1e-8;

/// True when `P` solves the linearized equation along three random solutions.
pub fn in_kernel(alpha: f64, p: &DiffPoly) -> bool {
    let need = p.max_u_order().max(p.max_ub_order()).unwrap_or(0) as usize + 1;
    (0..3).all(|seed| {
        let sol = Solution::random(alpha, need + 5, 100 + seed);
        sol.linearization_residual(p, 2) < SERIES_TOL
    })
}
