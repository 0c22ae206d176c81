//! Total derivatives `e₋₁`, `e₋̄₁` on the infinite prolongation and the linearization.

use num_traits::Zero;

use crate::algebra::{big, from_r64, DiffPoly, Generator, JetMonomial};

use super::params::SystemParams;

/// `e₋₁ = ∂_z + u₀∂_u + Σ u_{i+1}∂_{u_i} − Σ T̄^i ∂_{ū_i}`.
pub fn e_minus1(params: &SystemParams, p: &DiffPoly) -> DiffPoly {
    total_derivative(params, p, false)
}

/// `e₋̄₁ = ∂_z̄ + ū₀∂_u + Σ ū_{i+1}∂_{ū_i} − Σ T^i ∂_{u_i}`.
pub fn e_minus1bar(params: &SystemParams, p: &DiffPoly) -> DiffPoly {
    total_derivative(params, p, true)
}

fn total_derivative(params: &SystemParams, p: &DiffPoly, bar: bool) -> DiffPoly {
    let (gz, mk_own): (Generator, fn(u32) -> Generator) = if bar {
        (Generator::Zb, Generator::Ub)
    } else {
        (Generator::Z, Generator::U)
    };
    let mut out = DiffPoly::zero();
    let mut other: Vec<DiffPoly> = Vec::new();
    for (m, c) in p.terms() {
        let q = m.exp_u();
        if !q.is_zero() {
            let k = c.scale(&from_r64(q));
            out.add_term(m.mul(&JetMonomial::var(mk_own(0))), &k);
        }
        for (g, e) in m.powers() {
            let lowered = m.clone().with_power(g, e - 1);
            let k = c.scale(&big(e as i64));
            if g == gz {
                out.add_term(lowered, &k);
            } else if let Some(j) = own_index(g, bar) {
                out.add_term(lowered.mul(&JetMonomial::var(mk_own(j + 1))), &k);
            } else if let Some(j) = other_index(g, bar) {
                if other.len() <= j as usize {
                    other.resize(j as usize + 1, DiffPoly::zero());
                }
                other[j as usize].add_term(lowered, &k);
            }
        }
    }
    for (j, dp) in other.iter().enumerate() {
        if dp.is_zero() {
            continue;
        }
        let t = if bar { params.t(j as u32) } else { params.tb(j as u32) };
        out -= &(dp * &*t);
    }
    out
}

fn own_index(g: Generator, bar: bool) -> Option<u32> {
    match (g, bar) {
        (Generator::U(j), false) | (Generator::Ub(j), true) => Some(j),
        _ => None,
    }
}

fn other_index(g: Generator, bar: bool) -> Option<u32> {
    match (g, bar) {
        (Generator::Ub(j), false) | (Generator::U(j), true) => Some(j),
        _ => None,
    }
}

/// `ℰ(p) = e₋̄₁e₋₁p + f_u·p`.
pub fn e_lin(params: &SystemParams, p: &DiffPoly) -> DiffPoly {
    let mut out = e_minus1bar(params, &e_minus1(params, p));
    out += &(params.f_u() * p);
    out
}

/// Applies `e₋₁` `n` times.
pub fn e_minus1_pow(params: &SystemParams, p: &DiffPoly, n: u32) -> DiffPoly {
    (0..n).fold(p.clone(), |acc, _| e_minus1(params, &acc))
}
