//! Translation-invariant representatives `φ̂_P`.

use crate::algebra::{DiffPoly, WeightOf};
use crate::error::Error;
use crate::jet::{e_lin, OneFormModI, SystemParams};
use crate::linsolve::integrate_auto;

use super::forms::{d_mod_ideal, phi_tilde, q_classical};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    /// `dA ≡ φ̃_{P,u₀}`.
    pub a: DiffPoly,
    /// `dB ≡ φ̃_{P,ū₀}`.
    pub b: DiffPoly,
    /// `φ̂ = −A ζ + (B − ū₀P) ζ̄`.
    pub phi_hat: OneFormModI,
    /// `G = zA − z̄B`, with `φ̃_{P,q} − dG = φ̂`.
    pub g: DiffPoly,
}

fn integrate(params: &SystemParams, w: &OneFormModI, max_window: u32, stage: &str) -> Result<DiffPoly, Error> {
    let weight = match w.weight_of() {
        WeightOf::Zero => return Ok(DiffPoly::zero()),
        WeightOf::Homogeneous(d) => d,
        WeightOf::Inhomogeneous => return Err(Error::Precondition(format!("{} is not weight homogeneous", stage))),
    };
    (0..=max_window)
        .find_map(|win| integrate_auto(params, w, weight, win).ok())
        .ok_or_else(|| Error::IntegrationFailed { stage: stage.into() })
}

/// Computes `φ̂_P` and checks that it is free of `z, z̄` and cohomologous to `φ̃_{P,q}`.
/// Constants in `A` and `B` are set to zero.
pub fn translation_gauge(params: &SystemParams, p: &DiffPoly, max_window: u32) -> Result<Gauge, Error> {
    if !e_lin(params, p).is_zero() {
        return Err(Error::Precondition(
            "generator is not in the kernel of the linearization".into(),
        ));
    }
    let (u0, ub0) = (DiffPoly::u(0), DiffPoly::ub(0));
    let a = integrate(params, &phi_tilde(params, p, &u0), max_window, "A")?;
    let b = integrate(params, &phi_tilde(params, p, &ub0), max_window, "B")?;
    let g = &(DiffPoly::z() * a.clone()) - &(DiffPoly::zb() * b.clone());
    let phi_hat = OneFormModI::new(-&a, &b - &(&ub0 * p));
    if phi_hat.has_z() {
        return Err(Error::Residual(format!("gauge still depends on z: {}", phi_hat)));
    }
    let diff = &phi_tilde(params, p, &q_classical()) - &phi_hat;
    if diff != d_mod_ideal(params, &g) {
        return Err(Error::Residual("gauge is not cohomologous to phi[P; q]".into()));
    }
    Ok(Gauge { a, b, phi_hat, g })
}
