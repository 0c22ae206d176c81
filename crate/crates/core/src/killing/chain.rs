//! Killing fields built from the stages of one recursion step.

use num_rational::Rational64;

use crate::algebra::{big, DiffPoly, Scalar, Unit};
use crate::error::Error;
use crate::jet::{e_minus1, e_minus1bar, SystemParams};
use crate::recursion::RecursionTrace;

use super::connection::Connection;
use super::eigen::{g0, g1, g2, g3, g4, g5};
use super::mat3::{LoopMatrix, Mat3};

fn e(n: i64, d: i64) -> DiffPoly {
    DiffPoly::exp(Rational64::new(n, d))
}

fn sc(u: Unit, n: i64, d: i64) -> Scalar {
    Scalar::unit(u, big(n) / big(d))
}

/// Component functions of `X^{6n}, …, X^{6n+6}`. The stage `j` steps past
/// `a` is divided by `3^{⌈j/2⌉}` relative to the recursion trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingChain {
    pub a: DiffPoly,
    pub b: DiffPoly,
    pub c: DiffPoly,
    pub f: DiffPoly,
    pub r: DiffPoly,
    pub s: DiffPoly,
    pub t: DiffPoly,
    pub v: DiffPoly,
    pub a_next: DiffPoly,
}

impl KillingChain {
    pub fn from_trace(params: &SystemParams, tr: &RecursionTrace) -> Result<Self, Error> {
        if !params.is_normalized() {
            return Err(Error::Precondition("Killing fields exist only for alpha = -1".into()));
        }
        let by = |p: &DiffPoly, d: i64| p.scale(&Scalar::frac(1, d));
        let (b, f, r, s, t, a_next) = (
            by(&tr.b, 3),
            by(&tr.f, 3),
            by(&tr.r, 9),
            by(&tr.s, 9),
            by(&tr.t, 27),
            by(&tr.a_next, 27),
        );
        // c = ½(a₋₁ + i√2 b)
        let c = (&e_minus1(params, &tr.a) + &b.scale(&Scalar::i_sqrt2())).scale(&Scalar::frac(1, 2));
        // v = (1/√2)(i e^{−u} t + s₋₁)
        let v = (&(&e(-1, 1) * &t).scale(&Scalar::i()) + &e_minus1(params, &s)).scale(&sc(Unit::Sqrt2, 1, 2));
        Ok(KillingChain {
            a: tr.a.clone(),
            b,
            c,
            f,
            r,
            s,
            t,
            v,
            a_next,
        })
    }

    pub fn fields(&self) -> [(&'static str, &DiffPoly); 9] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("f", &self.f),
            ("r", &self.r),
            ("s", &self.s),
            ("t", &self.t),
            ("v", &self.v),
            ("a'", &self.a_next),
        ]
    }
}

/// `X^{6n} + λX^{6n+1} + … + λ⁶X^{6n+6}`, stored at powers `6n … 6n+6`.
pub fn assemble_killing_field(chain: &KillingChain, n: i32) -> LoopMatrix {
    let k = &chain;
    let blocks = [
        g0(&k.a),
        g1(&(&e(-1, 2) * &k.b), &(&e(1, 1) * &k.c)),
        g2(&k.f),
        g3(&k.r),
        g4(&(&e(1, 2) * &k.s)),
        g5(&(&e(1, 2) * &k.t), &k.v),
        g0(&k.a_next),
    ];
    let mut out = LoopMatrix::zero();
    for (j, m) in blocks.into_iter().enumerate() {
        out.insert(6 * n + j as i32, m);
    }
    out
}

/// The sixteen scalar equations equivalent to the Killing equation, as `(name, residual)`.
pub fn component_equations_check(params: &SystemParams, k: &KillingChain) -> Vec<(&'static str, DiffPoly)> {
    let d = |p: &DiffPoly| e_minus1(params, p);
    let db = |p: &DiffPoly| e_minus1bar(params, p);
    let (u0, ub0) = (DiffPoly::u(0), DiffPoly::ub(0));
    let i = DiffPoly::constant(Scalar::i());
    let s2 = Scalar::sqrt2();
    let half = Scalar::frac(1, 2);
    let three_over_s2 = sc(Unit::Sqrt2, 3, 2);
    let i_over_s2 = sc(Unit::ISqrt2, 1, 2);
    vec![
        ("abc", &(&d(&k.a) + &k.b.scale(&Scalar::i_sqrt2())) - &k.c.scale_int(2)),
        ("bf", &(&d(&k.b) - &(&u0 * &k.b)) + &(&(&i * &e(-1, 2)) * &k.f)),
        (
            "cf",
            &(&d(&k.c) + &(&u0 * &k.c).scale_int(2)) + &(&e(-1, 2) * &k.f).scale(&s2),
        ),
        (
            "f",
            &(&d(&k.f) + &(&u0 * &k.f).scale(&half)) - &(&e(1, 2) * &k.r).scale(&three_over_s2),
        ),
        ("r", &d(&k.r) + &(&e(1, 1) * &k.s).scale(&s2)),
        ("stv", &(&d(&k.s) - &k.v.scale(&s2)) + &(&(&i * &e(-1, 1)) * &k.t)),
        ("ta", &(&d(&k.t) + &(&u0 * &k.t)) - &k.a_next.scale(&i_over_s2)),
        ("va", &(&d(&k.v) - &(&u0 * &k.v)) - &(&e(-1, 1) * &k.a_next)),
        (
            "abcbar",
            &(&db(&k.a_next) - &(&e(1, 1) * &k.t).scale(&Scalar::i_sqrt2())) + &(&e(-1, 1) * &k.v).scale_int(2),
        ),
        ("babar", &db(&k.b) + &(&e(1, 1) * &k.a).scale(&i_over_s2)),
        ("cfbar", &db(&k.c) + &(&e(-2, 1) * &k.a)),
        (
            "fbar",
            &(&(&db(&k.f) - &(&ub0 * &k.f).scale(&half)) + &(&(&i * &e(-3, 2)) * &k.b)) - &(&e(3, 2) * &k.c).scale(&s2),
        ),
        ("rbar", &db(&k.r) + &(&e(1, 2) * &k.f).scale(&s2)),
        ("stvbar", &(&db(&k.s) + &(&ub0 * &k.s)) - &k.r.scale(&three_over_s2)),
        ("tabar", &db(&k.t) + &(&(&i * &e(-1, 1)) * &k.s)),
        ("vabar", &(&db(&k.v) + &(&ub0 * &k.v)) + &(&e(1, 1) * &k.s).scale(&s2)),
    ]
}

/// `ζ` and `ζ̄` parts of `dX^m + [ψ₀, X^m] + [ψ₋₁, X^{m+1}] + [ψ₁, X^{m−1}]` modulo the ideal.
pub fn matrix_killing_residual(params: &SystemParams, conn: &Connection, x: &LoopMatrix, m: i32) -> (Mat3, Mat3) {
    let xm = x.get(m);
    let mut zeta = xm.map(|p| e_minus1(params, p));
    let mut zetabar = xm.map(|p| e_minus1bar(params, p));
    for (k, y) in [(0, xm.clone()), (-1, x.get(m + 1)), (1, x.get(m - 1))] {
        zeta = &zeta + &conn.zeta.get(k).bracket(&y);
        zetabar = &zetabar + &conn.zetabar.get(k).bracket(&y);
    }
    (zeta, zetabar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::killing::{build_connection, in_eigenspace};
    use crate::recursion::{p_step, v5};

    fn p() -> SystemParams {
        SystemParams::tzitzeica()
    }

    fn chain(seed: &DiffPoly) -> KillingChain {
        KillingChain::from_trace(&p(), &p_step(&p(), seed).unwrap()).unwrap()
    }

    #[test]
    fn sixteen_equations_vanish() {
        for seed in [DiffPoly::u(0), v5()] {
            let k = chain(&seed);
            let eqs = component_equations_check(&p(), &k);
            assert_eq!(eqs.len(), 16);
            for (name, r) in eqs {
                assert!(r.is_zero(), "{}: {}", name, r);
            }
        }
    }

    #[test]
    fn matrix_killing_equation_holds_inside_the_window() {
        let pr = p();
        let conn = build_connection(&pr).unwrap();
        for n in [0, 2] {
            let x = assemble_killing_field(&chain(&DiffPoly::u(0)), n);
            for (m, b) in &x.coeffs {
                assert!(in_eigenspace(b, *m));
            }
            for m in 6 * n + 1..=6 * n + 5 {
                let (z, zb) = matrix_killing_residual(&pr, &conn, &x, m);
                assert!(z.is_zero() && zb.is_zero(), "m = {}\n{}\n{}", m, z, zb);
            }
        }
    }

    #[test]
    fn bottom_block_carries_the_seed() {
        let x = assemble_killing_field(&chain(&DiffPoly::u(0)), 0);
        assert_eq!(x.get(0).e[1][2], -DiffPoly::u(0));
        assert_eq!(x.get(0).e[2][1], DiffPoly::u(0));
    }

    #[test]
    fn a_perturbed_chain_fails() {
        let mut k = chain(&DiffPoly::u(0));
        k.r = &k.r + &DiffPoly::u(2);
        let bad: Vec<_> = component_equations_check(&p(), &k)
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(n, _)| n)
            .collect();
        assert!(bad.contains(&"r") && bad.contains(&"f"), "{:?}", bad);
    }
}
