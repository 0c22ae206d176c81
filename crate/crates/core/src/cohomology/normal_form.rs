//! Differentiated conservation laws in normal form.

use crate::algebra::{DiffPoly, Generator, Scalar};
use crate::error::Error;
use crate::jet::{binom, d_function, e_lin, e_minus1_pow, Coframe, Form, SystemParams};

/// The contact two-form `ψ = −(i/2)(ζ∧η₁ − ζ̄∧η̄₁)`.
pub fn psi_form() -> Form {
    let a = Form::term(DiffPoly::one(), vec![Coframe::Zeta, Coframe::Eta(1)]);
    let b = Form::term(DiffPoly::one(), vec![Coframe::ZetaBar, Coframe::EtaBar(1)]);
    (&a - &b).scale(&(&Scalar::i() * &Scalar::frac(-1, 2)))
}

/// `ρ = −½ J dA` with the `η₀` component removed.
pub fn rho(params: &SystemParams, a: &DiffPoly) -> Result<Form, Error> {
    let jd = d_function(params, a).j_apply()?;
    let mut out = Form::zero();
    for (k, c) in jd.terms() {
        if k.as_slice() != [Coframe::Eta0] {
            out.add_term(k.clone(), &c.scale(&Scalar::frac(-1, 2)));
        }
    }
    Ok(out)
}

/// `B^{ij} = i Σ_{m=0}^{k−j−i+1} (−1)^{m−i+1} C(m+i−1, i−1) e₋₁^m A_{u_{m+j+i−1}}`.
pub fn b_coefficient(params: &SystemParams, a: &DiffPoly, i: u32, j: u32, k: u32) -> DiffPoly {
    let mut out = DiffPoly::zero();
    let top = k as i64 - j as i64 - i as i64 + 1;
    for m in 0..=top.max(-1) {
        let m = m as u32;
        let da = a.partial(Generator::U(m + j + i - 1));
        if da.is_zero() {
            continue;
        }
        let sign = if (m + i + 1).is_multiple_of(2) { 1 } else { -1 };
        let c = &binom(m + i - 1, i - 1) * &Scalar::int(sign);
        out += &e_minus1_pow(params, &da, m).scale(&c);
    }
    out.scale(&Scalar::i())
}

/// `Φ = η₀∧ρ + Aψ + Σ_{1≤i<j≤k}(B^{ij} η_i∧η_j + B̄^{ij} η̄_i∧η̄_j)`, where
/// `B̄^{ij}` is the conjugate of `B^{ij}` computed from `Ā`.
#[allow(non_snake_case)]
pub fn normal_form_Phi(params: &SystemParams, a: &DiffPoly, k: u32) -> Result<Form, Error> {
    if !a.partial_u().is_zero() {
        return Err(Error::Precondition("generating function depends on u".into()));
    }
    if a.terms().any(|(m, _)| m.has_u() && m.has_ub()) {
        return Err(Error::Precondition("generating function mixes u_i and ub_j".into()));
    }
    if a.max_u_order().max(a.max_ub_order()).is_some_and(|o| o > k) {
        return Err(Error::Precondition(format!(
            "level {} is below the order of the generating function",
            k
        )));
    }
    if !e_lin(params, a).is_zero() {
        return Err(Error::Precondition(
            "generating function is not in the kernel of the linearization".into(),
        ));
    }
    let abar = a.conjugate();
    let mut out = &Form::basis(Coframe::Eta0).wedge(&rho(params, a)?) + &psi_form().mul_fn(a);
    for i in 1..=k {
        for j in i + 1..=k {
            let b = b_coefficient(params, a, i, j, k);
            if !b.is_zero() {
                out.add_term(vec![Coframe::Eta(i), Coframe::Eta(j)], &b);
            }
            let bb = b_coefficient(params, &abar, i, j, k).conjugate();
            if !bb.is_zero() {
                out.add_term(vec![Coframe::EtaBar(i), Coframe::EtaBar(j)], &bb);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::q_classical;
    use crate::jet::d_form;
    use crate::recursion::{p_step, v5};

    fn p() -> SystemParams {
        SystemParams::tzitzeica()
    }

    #[test]
    fn u0_has_no_b_terms_and_the_expected_rho() {
        let pr = p();
        let phi = normal_form_Phi(&pr, &DiffPoly::u(0), 3).unwrap();
        assert!(phi.terms().all(|(k, _)| k
            .iter()
            .any(|c| matches!(c, Coframe::Eta0 | Coframe::Zeta | Coframe::ZetaBar))));
        let expected = Form::parse("-i/2*(u1*Z + (E[1] - E[-2])*Zb + h1)").unwrap();
        assert_eq!(rho(&pr, &DiffPoly::u(0)).unwrap(), expected);
        assert!(d_form(&pr, &phi).is_zero());
    }

    #[test]
    fn normal_forms_are_closed() {
        let pr = p();
        let p7 = p_step(&pr, &DiffPoly::u(0)).unwrap().a_next;
        for (a, k) in [(q_classical(), 2), (v5(), 4), (v5(), 6), (p7, 6), (v5().conjugate(), 5)] {
            let phi = normal_form_Phi(&pr, &a, k).unwrap();
            let r = d_form(&pr, &phi);
            assert!(r.is_zero(), "{}: {}", a, r);
        }
        assert!(normal_form_Phi(&pr, &DiffPoly::zero(), 2).unwrap().is_zero());
    }

    #[test]
    fn preconditions() {
        let pr = p();
        assert!(normal_form_Phi(&pr, &"E[1]".parse().unwrap(), 2).is_err());
        assert!(normal_form_Phi(&pr, &"u0*ub0".parse().unwrap(), 2).is_err());
        assert!(normal_form_Phi(&pr, &v5(), 3).is_err());
        assert!(normal_form_Phi(&pr, &DiffPoly::u(1), 3).is_err());
    }
}
