//! Conservation-law one-forms `φ̃_{P,Q}` and the closedness and triviality tests.

use crate::algebra::{DiffPoly, Scalar, WeightOf};
use crate::error::Error;
use crate::jet::{e_lin, e_minus1, e_minus1bar, OneFormModI, SystemParams};
use crate::linsolve::integrate_auto;

/// The classical weight-zero generating function `q = z u₀ − z̄ ū₀`.
pub fn q_classical() -> DiffPoly {
    &(DiffPoly::z() * DiffPoly::u(0)) - &(DiffPoly::zb() * DiffPoly::ub(0))
}

/// `φ̃_{P,Q} = Q ∂P + P ∂̄Q = (Q e₋₁P) ζ + (P e₋̄₁Q) ζ̄`.
pub fn phi_tilde(params: &SystemParams, p: &DiffPoly, q: &DiffPoly) -> OneFormModI {
    OneFormModI::new(q * &e_minus1(params, p), p * &e_minus1bar(params, q))
}

/// `dG` modulo the ideal.
pub fn d_mod_ideal(params: &SystemParams, g: &DiffPoly) -> OneFormModI {
    OneFormModI::new(e_minus1(params, g), e_minus1bar(params, g))
}

/// `(√−1 / (2(2i−1))) J(P dq − q dP)` modulo the ideal.
pub fn phi_rep(params: &SystemParams, p: &DiffPoly, i: u32) -> OneFormModI {
    let q = q_classical();
    let (dq, dp) = (d_mod_ideal(params, &q), d_mod_ideal(params, p));
    let w = &OneFormModI::new(p * &dq.p, p * &dq.q) - &OneFormModI::new(&q * &dp.p, &q * &dp.q);
    // J is i on ζ and −i on ζ̄
    let jw = OneFormModI::new(w.p.scale(&Scalar::i()), w.q.scale(&-Scalar::i()));
    let c = &Scalar::i() * &Scalar::frac(1, 2 * (2 * i as i64 - 1));
    jw.scale(&c)
}

/// `e₋₁Q − e₋̄₁P` for `ω = Pζ + Qζ̄`; zero iff `ω` is closed modulo the ideal.
pub fn closed_mod_ideal(params: &SystemParams, w: &OneFormModI) -> DiffPoly {
    &e_minus1(params, &w.q) - &e_minus1bar(params, &w.p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    /// `ω ≡ dG` modulo the ideal.
    Trivial(DiffPoly),
    Nontrivial,
}

/// Decides whether a closed homogeneous one-form is exact modulo the ideal by
/// searching for a potential of the same weight, widening the exponential
/// window up to `max_window`. `Nontrivial` means no potential exists in that ansatz.
pub fn triviality_test(params: &SystemParams, w: &OneFormModI, max_window: u32) -> Result<Triviality, Error> {
    if !closed_mod_ideal(params, w).is_zero() {
        return Err(Error::Precondition("form is not closed modulo the ideal".into()));
    }
    let weight = match w.weight_of() {
        WeightOf::Zero => return Ok(Triviality::Trivial(DiffPoly::zero())),
        WeightOf::Homogeneous(d) => d,
        WeightOf::Inhomogeneous => return Err(Error::Precondition("form is not weight homogeneous".into())),
    };
    for window in 0..=max_window {
        if let Ok(g) = integrate_auto(params, w, weight, window) {
            if &d_mod_ideal(params, &g) != w {
                return Err(Error::Residual(format!("potential {} does not reproduce the form", g)));
            }
            return Ok(Triviality::Trivial(g));
        }
    }
    Ok(Triviality::Nontrivial)
}

/// A conservation-law representative together with its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClassRep {
    pub representative: OneFormModI,
    pub weight: WeightOf,
    pub provenance: String,
}

impl CohomologyClassRep {
    /// `φ̃_{P,Q}` for generating functions `P, Q` in the kernel of `ℰ`.
    pub fn from_pair(params: &SystemParams, p: &DiffPoly, q: &DiffPoly) -> Result<Self, Error> {
        for x in [p, q] {
            if !e_lin(params, x).is_zero() {
                return Err(Error::Precondition(format!(
                    "{} is not in the kernel of the linearization",
                    x
                )));
            }
        }
        let representative = phi_tilde(params, p, q);
        let weight = representative.weight_of();
        Ok(CohomologyClassRep {
            representative,
            weight,
            provenance: format!("phi[{}; {}]", p, q),
        })
    }
}
