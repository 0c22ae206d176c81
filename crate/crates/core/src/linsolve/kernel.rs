//! The solution spaces `V_d = ker ℰ` and formal integration of one-forms.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::algebra::{DiffPoly, JetMonomial, Scalar};
use crate::jet::{e_lin, e_minus1, e_minus1bar, OneFormModI, SystemParams};

use super::ansatz::{Ansatz, VarClass};
use super::sparse::{echelonize, LinearSystem, SparseRow};

/// Raised when a one-form has no potential in the given ansatz.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotExact;

/// Builds `Σ_c x_c · image(col_c) = target` with one row per output monomial.
fn system_from_images(images: &[Vec<DiffPoly>], target: &[DiffPoly]) -> LinearSystem {
    let mut rows: BTreeMap<(usize, JetMonomial), SparseRow> = BTreeMap::new();
    for (c, parts) in images.iter().enumerate() {
        for (k, p) in parts.iter().enumerate() {
            for (m, v) in p.terms() {
                rows.entry((k, m.clone())).or_default().insert(c, v.clone());
            }
        }
    }
    let mut rhs: BTreeMap<(usize, JetMonomial), Scalar> = BTreeMap::new();
    for (k, p) in target.iter().enumerate() {
        for (m, v) in p.terms() {
            rhs.insert((k, m.clone()), v.clone());
            rows.entry((k, m.clone())).or_default();
        }
    }
    let mut sys = LinearSystem::new(images.len());
    for (key, row) in rows {
        let b = rhs.remove(&key).unwrap_or_default();
        sys.push_row(row, b);
    }
    sys
}

fn combine(ms: &[JetMonomial], xs: &[Scalar]) -> DiffPoly {
    DiffPoly::from_terms(ms.iter().cloned().zip(xs.iter().cloned()))
}

/// Kernel of a linear operator restricted to an ansatz, as an echelonized
/// basis monic in each element's highest monomial.
pub fn kernel_in(ansatz: &Ansatz, op: impl Fn(&DiffPoly) -> DiffPoly) -> Vec<DiffPoly> {
    let images: Vec<Vec<DiffPoly>> = ansatz
        .monomials()
        .iter()
        .map(|m| vec![op(&DiffPoly::monomial(m.clone()))])
        .collect();
    let sys = system_from_images(&images, &[]);
    let sol = sys.solve().expect("homogeneous system is consistent");
    echelonize(&sol.nullspace)
        .iter()
        .map(|v| combine(ansatz.monomials(), v))
        .collect()
}

/// Basis of `V_d`: polynomial solutions of `ℰ(P) = 0` of weight `d` in the
/// `u_j` (for `d > 0`) or the `ū_j` (for `d < 0`).
pub fn kernel_basis(params: &SystemParams, d: i64) -> Vec<DiffPoly> {
    let class = if d > 0 { VarClass::PureU } else { VarClass::PureUbar };
    if d == 0 {
        return Vec::new();
    }
    kernel_in(&Ansatz::pure(d, class), |p| e_lin(params, p))
}

/// Finds `G` in the ansatz with `e₋₁G = P` and `e₋̄₁G = Q` for `ω = Pζ + Qζ̄`.
/// Free coefficients (constants, when the weight is zero) are set to zero.
pub fn integrate_oneform(params: &SystemParams, w: &OneFormModI, ansatz: &Ansatz) -> Result<DiffPoly, NotExact> {
    let images: Vec<Vec<DiffPoly>> = ansatz
        .monomials()
        .iter()
        .map(|m| {
            let p = DiffPoly::monomial(m.clone());
            vec![e_minus1(params, &p), e_minus1bar(params, &p)]
        })
        .collect();
    let sys = system_from_images(&images, &[w.p.clone(), w.q.clone()]);
    let sol = sys.solve().map_err(|_| NotExact)?;
    Ok(combine(ansatz.monomials(), &sol.particular))
}

/// Integration with an ansatz read off from the form itself: every
/// generator family, `z`/`z̄` to first order, the form's exponents and
/// `e^{kα/2·u}` for `|k| ≤ window`.
pub fn integrate_auto(params: &SystemParams, w: &OneFormModI, weight: i64, window: u32) -> Result<DiffPoly, NotExact> {
    let pos = [&w.p, &w.q]
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.pos_weight()))
        .max()
        .unwrap_or(0) as u32;
    let mut exps: Vec<Rational64> = w.p.exps().into_iter().chain(w.q.exps()).collect();
    exps.extend(super::ansatz::exp_window(params.alpha(), window));
    let z_degree = if w.has_z() { 2 } else { 1 };
    let ansatz = Ansatz::new(weight, VarClass::Mixed { max_pos_weight: pos }, &exps, z_degree);
    integrate_oneform(params, w, &ansatz)
}
