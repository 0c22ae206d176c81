//! The loop-algebra connection `ψ_λ = λ⁻¹ψ₋₁ + ψ₀ + λψ₁` and the operator `𝒟` on `g_0`.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::algebra::{big, DiffPoly, Scalar, Unit};
use crate::error::Error;
use crate::jet::{d_form, e_minus1, e_minus1bar, Form, SystemParams};

use super::eigen::{g0, g1, g5, in_eigenspace};
use super::mat3::{LoopMatrix, Mat3};

/// A 3×3 matrix of differential forms.
pub type FormMatrix = [[Form; 3]; 3];

fn e(n: i64, d: i64) -> DiffPoly {
    DiffPoly::exp(Rational64::new(n, d))
}

fn require_normalized(params: &SystemParams) -> Result<(), Error> {
    if params.is_normalized() {
        Ok(())
    } else {
        Err(Error::Precondition("the connection exists only for alpha = -1".into()))
    }
}

/// `ψ_λ = M ζ + N ζ̄` with `M, N` Laurent polynomials in `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub zeta: LoopMatrix,
    pub zetabar: LoopMatrix,
}

/// `ζ`-coefficient of `ψ₋₁`, an element of `g_5`.
pub fn a_minus1() -> Mat3 {
    let half_s2 = Scalar::unit(Unit::Sqrt2, big(1) / big(2));
    g5(
        &e(1, 2).scale(&half_s2),
        &e(-1, 1).scale(&Scalar::unit(Unit::I, big(1) / big(2))),
    )
}

/// `ζ̄`-coefficient of `ψ₁`, an element of `g_1`.
pub fn a_plus1() -> Mat3 {
    let half_s2 = Scalar::unit(Unit::Sqrt2, big(1) / big(2));
    g1(
        &e(1, 2).scale(&half_s2),
        &e(-1, 1).scale(&Scalar::unit(Unit::I, big(1) / big(2))),
    )
}

pub fn build_connection(params: &SystemParams) -> Result<Connection, Error> {
    require_normalized(params)?;
    let half_i = Scalar::unit(Unit::I, big(1) / big(2));
    let mut zeta = LoopMatrix::single(-1, a_minus1());
    zeta.insert(0, g0(&DiffPoly::u(0).scale(&-&half_i)));
    let mut zetabar = LoopMatrix::single(1, a_plus1());
    zetabar.insert(0, g0(&DiffPoly::ub(0).scale(&half_i)));
    Ok(Connection { zeta, zetabar })
}

impl Connection {
    /// `ψ_k` as a matrix of one-forms.
    pub fn form_coeff(&self, k: i32) -> FormMatrix {
        let (m, n) = (self.zeta.get(k), self.zetabar.get(k));
        std::array::from_fn(|i| std::array::from_fn(|j| Form::one_form(m.e[i][j].clone(), n.e[i][j].clone())))
    }

    /// Whether each `λ^k` coefficient of `M` and `N` lies in `g_{k mod 6}`.
    pub fn is_twisted(&self) -> bool {
        self.zeta
            .coeffs
            .iter()
            .chain(&self.zetabar.coeffs)
            .all(|(&k, m)| in_eigenspace(m, k))
    }
}

fn wedge_product(a: &FormMatrix, b: &FormMatrix) -> FormMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Form::zero(), |acc, k| &acc + &a[i][k].wedge(&b[k][j])))
    })
}

/// `dψ + ψ∧ψ` reduced modulo the contact ideal, one matrix per power of `λ`.
pub fn flatness_residual(params: &SystemParams, conn: &Connection) -> BTreeMap<i32, FormMatrix> {
    let powers: Vec<i32> = conn
        .zeta
        .coeffs
        .keys()
        .chain(conn.zetabar.coeffs.keys())
        .copied()
        .collect();
    let (lo, hi) = (*powers.iter().min().unwrap_or(&0), *powers.iter().max().unwrap_or(&0));
    let mut out = BTreeMap::new();
    for k in 2 * lo..=2 * hi {
        let mut res: FormMatrix = Default::default();
        if (lo..=hi).contains(&k) {
            let psi = conn.form_coeff(k);
            for (i, row) in res.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = d_form(params, &psi[i][j]);
                }
            }
        }
        for a in lo..=hi {
            let b = k - a;
            if !(lo..=hi).contains(&b) {
                continue;
            }
            let w = wedge_product(&conn.form_coeff(a), &conn.form_coeff(b));
            for i in 0..3 {
                for j in 0..3 {
                    res[i][j] = &res[i][j] + &w[i][j];
                }
            }
        }
        out.insert(k, res.map(|row| row.map(|f| f.reduce_mod_ideal())));
    }
    out
}

/// `κ(X, Y) = tr(XY)`.
pub fn killing_form(x: &Mat3, y: &Mat3) -> DiffPoly {
    (x * y).trace()
}

/// `𝒟(P) = ΔP + 4[A₋₁, [A₁, P]]` on `g_0`-valued functions, where
/// `∂̄∂P = ¼ΔP ζ∧ζ̄`, so that `Δ = −4 e₋̄₁e₋₁`.
#[allow(non_snake_case)]
pub fn D_operator(params: &SystemParams, p: &Mat3) -> Result<Mat3, Error> {
    require_normalized(params)?;
    if !in_eigenspace(p, 0) {
        return Err(Error::NotInG0);
    }
    let lap = p.map(|x| e_minus1bar(params, &e_minus1(params, x)).scale_int(-4));
    let dbl = a_minus1().bracket(&a_plus1().bracket(p)).scale(&Scalar::int(4));
    Ok(&lap + &dbl)
}
