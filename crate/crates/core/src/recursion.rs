//! The order-six recursions `𝒫: V_d → V_{d+6}` and `𝒩: V_d → V_{d−6}`.

use std::fmt;

use num_rational::Rational64;

use crate::algebra::{big, DiffPoly, Scalar, Unit, WeightOf};
use crate::error::Error;
use crate::jet::{e_lin, e_minus1, e_minus1bar, OneFormModI, SystemParams};
use crate::linsolve::{integrate_auto, integrate_oneform, Ansatz, VarClass};

/// Window used when a stage falls outside the known integration classes.
const FALLBACK_WINDOW: u32 = 4;

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn sc(u: Unit, n: i64, d: i64) -> Scalar {
    Scalar::unit(u, big(n) / big(d))
}

fn e(n: i64, d: i64) -> DiffPoly {
    DiffPoly::exp(q(n, d))
}

/// All intermediates of one step. For `𝒩` the same fields hold the
/// reversed chain, so `a` is the output and `a_next` the input.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionTrace {
    pub a: DiffPoly,
    pub alpha: OneFormModI,
    pub b: DiffPoly,
    pub f: DiffPoly,
    pub r: DiffPoly,
    pub s: DiffPoly,
    pub beta: OneFormModI,
    pub t: DiffPoly,
    pub a_next: DiffPoly,
}

impl RecursionTrace {
    /// `(name, polynomial)` for the function stages, in chain order.
    pub fn stages(&self) -> [(&'static str, &DiffPoly); 7] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("f", &self.f),
            ("r", &self.r),
            ("s", &self.s),
            ("t", &self.t),
            ("a'", &self.a_next),
        ]
    }
}

impl fmt::Display for RecursionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, p) in self.stages() {
            writeln!(f, "{} = {}", name, p)?;
        }
        writeln!(f, "alpha = {}", self.alpha)?;
        write!(f, "beta = {}", self.beta)
    }
}

fn homogeneous_weight(p: &DiffPoly) -> Result<i64, Error> {
    match p.weight_of() {
        WeightOf::Homogeneous(d) => Ok(d),
        _ => Err(Error::Precondition(
            "input must be nonzero and weighted homogeneous".into(),
        )),
    }
}

fn check_input(params: &SystemParams, a: &DiffPoly, excluded: [i64; 2]) -> Result<i64, Error> {
    if !params.is_normalized() {
        return Err(Error::Precondition("the recursions require alpha = -1".into()));
    }
    let d = homogeneous_weight(a)?;
    if d % 2 == 0 || excluded.contains(&d) {
        return Err(Error::Precondition(format!("weight {} is not admissible", d)));
    }
    if !e_lin(params, a).is_zero() {
        return Err(Error::Precondition(
            "input is not in the kernel of the linearization".into(),
        ));
    }
    Ok(d)
}

fn integrate_stage(
    params: &SystemParams,
    w: &OneFormModI,
    weight: i64,
    preferred: Option<Ansatz>,
    stage: &str,
) -> Result<DiffPoly, Error> {
    if let Some(a) = preferred {
        if let Ok(g) = integrate_oneform(params, w, &a) {
            return Ok(g);
        }
    }
    integrate_auto(params, w, weight, FALLBACK_WINDOW).map_err(|_| Error::IntegrationFailed { stage: stage.into() })
}

fn class_ansatz(weight: i64, class: VarClass, exp: Rational64) -> Ansatz {
    Ansatz::new(weight, class, &[exp], 0)
}

/// One application of `𝒫` with every intermediate stage.
pub fn p_step(params: &SystemParams, a: &DiffPoly) -> Result<RecursionTrace, Error> {
    let d = check_input(params, a, [-1, -5])?;
    let e1 = |p: &DiffPoly| e_minus1(params, p);
    let u0 = DiffPoly::u(0);
    let i = DiffPoly::constant(Scalar::i());
    let i_over_s2 = sc(Unit::ISqrt2, 1, 2);

    // α = (i/√2)(a₋₁₋₁ + 2u₀a₋₁)ζ − (3i/√2)e^u a ζ̄
    let a1 = e1(a);
    let alpha = OneFormModI::new(
        (&e1(&a1) + &(&u0 * &a1).scale_int(2)).scale(&i_over_s2),
        (&e(1, 1) * a).scale(&sc(Unit::ISqrt2, -3, 2)),
    );
    let (b_class, t_class) = if d > 0 {
        (Some((VarClass::PureU, q(0, 1))), Some((VarClass::PureU, q(0, 1))))
    } else if d < -5 {
        (
            Some((VarClass::PureUbar, q(1, 1))),
            Some((VarClass::PureUbar, q(-1, 1))),
        )
    } else {
        (None, None)
    };
    let b = integrate_stage(
        params,
        &alpha,
        d + 1,
        b_class.map(|(c, x)| class_ansatz(d + 1, c, x)),
        "b",
    )?;

    // f = i e^{u/2}(b₋₁ − u₀b)
    let f = &(&i * &e(1, 2)) * &(&e1(&b) - &(&u0 * &b));
    // r = √2 e^{−u/2}(f₋₁ + ½u₀f)
    let r = (&e(-1, 2) * &(&e1(&f) + &(&u0 * &f).scale(&Scalar::frac(1, 2)))).scale(&Scalar::sqrt2());
    // s = −(1/√2) e^{−u} r₋₁
    let s = (&e(-1, 1) * &e1(&r)).scale(&sc(Unit::Sqrt2, -1, 2));
    // β = i e^u(s₋₁₋₁ − u₀s₋₁)ζ − 3i e^{−u}s ζ̄
    let s1 = e1(&s);
    let beta = OneFormModI::new(
        &(&i * &e(1, 1)) * &(&e1(&s1) - &(&u0 * &s1)),
        (&e(-1, 1) * &s).scale(&Scalar::unit(Unit::I, big(-3))),
    );
    let t = integrate_stage(
        params,
        &beta,
        d + 5,
        t_class.map(|(c, x)| class_ansatz(d + 5, c, x)),
        "t",
    )?;
    // a′ = −i√2(t₋₁ + u₀t)
    let a_next = (&e1(&t) + &(&u0 * &t)).scale(&-Scalar::i_sqrt2());
    Ok(RecursionTrace {
        a: a.clone(),
        alpha,
        b,
        f,
        r,
        s,
        beta,
        t,
        a_next,
    })
}

/// One application of `𝒩`, the inverse of `𝒫`. Every stage carries a
/// factor `1/3` so that both recursions pass through the same intermediates.
pub fn n_step(params: &SystemParams, a_next: &DiffPoly) -> Result<RecursionTrace, Error> {
    let d = check_input(params, a_next, [1, 5])?;
    let ebar = |p: &DiffPoly| e_minus1bar(params, p);
    let ub0 = DiffPoly::ub(0);
    let third = Scalar::frac(1, 3);
    let i = DiffPoly::constant(Scalar::i());
    let i_over_s2 = sc(Unit::ISqrt2, 1, 2);

    // α = (i/√2)[3e^u a′ζ − (a′₋̄₁₋̄₁ + 2ū₀a′₋̄₁)ζ̄], with dG ≡ α for G = e^u t
    let ap1 = ebar(a_next);
    let alpha = OneFormModI::new(
        (&e(1, 1) * a_next).scale(&(&i_over_s2 * &Scalar::int(3))),
        (&ebar(&ap1) + &(&ub0 * &ap1).scale_int(2)).scale(&-&i_over_s2),
    );
    let (g1_class, g2_class) = if d > 0 {
        (Some((VarClass::PureU, q(1, 1))), Some((VarClass::PureU, q(-1, 1))))
    } else if d < 0 {
        (Some((VarClass::PureUbar, q(0, 1))), Some((VarClass::PureUbar, q(0, 1))))
    } else {
        (None, None)
    };
    let g1 = integrate_stage(
        params,
        &alpha,
        d - 1,
        g1_class.map(|(c, x)| class_ansatz(d - 1, c, x)),
        "t",
    )?;
    let t = (&e(-1, 1) * &g1).scale(&third);
    // s = i e^u t₋̄₁
    let s = (&(&i * &e(1, 1)) * &ebar(&t)).scale(&third);
    // r = √2(s₋̄₁ + ū₀s)
    let r = (&ebar(&s) + &(&ub0 * &s)).scale(&(&Scalar::sqrt2() * &third));
    // f = −(1/√2)e^{−u/2} r₋̄₁
    let f = (&e(-1, 2) * &ebar(&r)).scale(&(&sc(Unit::Sqrt2, -1, 2) * &third));
    // β = −3i e^{−3u/2} f ζ + i e^u(g₋̄₁₋̄₁ − ū₀g₋̄₁)ζ̄ with g = e^{−u/2}f, and dH ≡ β for H = e^{−u}b
    let g = &e(-1, 2) * &f;
    let g1b = ebar(&g);
    let beta = OneFormModI::new(
        (&e(-3, 2) * &f).scale(&Scalar::unit(Unit::I, big(-3))),
        &(&i * &e(1, 1)) * &(&ebar(&g1b) - &(&ub0 * &g1b)),
    );
    let h = integrate_stage(
        params,
        &beta,
        d - 5,
        g2_class.map(|(c, x)| class_ansatz(d - 5, c, x)),
        "b",
    )?;
    let b = (&e(1, 1) * &h).scale(&third);
    // a = √2 i e^{−u} b₋̄₁
    let a = (&e(-1, 1) * &ebar(&b)).scale(&(&Scalar::i_sqrt2() * &third));
    Ok(RecursionTrace {
        a,
        alpha,
        b,
        f,
        r,
        s,
        beta,
        t,
        a_next: a_next.clone(),
    })
}

/// `[seed, 𝒫(seed), …, 𝒫ⁿ(seed)]`, each element checked to lie in the kernel.
pub fn chain_generate(params: &SystemParams, seed: &DiffPoly, steps: usize) -> Result<Vec<DiffPoly>, Error> {
    let mut out = vec![seed.clone()];
    for _ in 0..steps {
        let next = p_step(params, out.last().unwrap())?.a_next;
        if !e_lin(params, &next).is_zero() {
            return Err(Error::Residual("recursion output is not in the kernel".into()));
        }
        out.push(next);
    }
    Ok(out)
}

/// The quintic generator of `V_5` at `α = −1`.
pub fn v5() -> DiffPoly {
    "u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5".parse().unwrap()
}
