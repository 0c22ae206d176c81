//! Exterior forms in the coframe `ζ, ζ̄, η₀, η_i, η̄_i` with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::parse::{as_scalar, parse_expr, scalar_ident, Expr};
use crate::algebra::{DiffPoly, Generator, Scalar, WeightOf};
use crate::error::Error;

use super::derivations::{e_minus1, e_minus1bar};
use super::params::{binom, SystemParams};

/// Coframe element. The derived order is the canonical wedge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coframe {
    Zeta,
    ZetaBar,
    Eta0,
    /// `η_i`, `i ≥ 1`.
    Eta(u32),
    /// `η̄_i`, `i ≥ 1`.
    EtaBar(u32),
}

impl Coframe {
    pub fn weight(self) -> i64 {
        match self {
            Coframe::Zeta => -1,
            Coframe::ZetaBar => 1,
            Coframe::Eta0 => 0,
            Coframe::Eta(j) => j as i64,
            Coframe::EtaBar(j) => -(j as i64),
        }
    }

    pub fn conj(self) -> Self {
        match self {
            Coframe::Zeta => Coframe::ZetaBar,
            Coframe::ZetaBar => Coframe::Zeta,
            Coframe::Eta0 => Coframe::Eta0,
            Coframe::Eta(j) => Coframe::EtaBar(j),
            Coframe::EtaBar(j) => Coframe::Eta(j),
        }
    }

    pub fn is_eta(self) -> bool {
        !matches!(self, Coframe::Zeta | Coframe::ZetaBar)
    }

    /// `η_j` with `η_0 = η₀`.
    pub fn eta(j: u32) -> Self {
        if j == 0 {
            Coframe::Eta0
        } else {
            Coframe::Eta(j)
        }
    }

    pub fn eta_bar(j: u32) -> Self {
        if j == 0 {
            Coframe::Eta0
        } else {
            Coframe::EtaBar(j)
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Z" => Some(Coframe::Zeta),
            "Zb" => Some(Coframe::ZetaBar),
            "h0" => Some(Coframe::Eta0),
            _ => {
                if let Some(r) = s.strip_prefix("hb") {
                    r.parse().ok().filter(|&j| j > 0).map(Coframe::EtaBar)
                } else if let Some(r) = s.strip_prefix('h') {
                    r.parse().ok().filter(|&j| j > 0).map(Coframe::Eta)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Coframe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coframe::Zeta => write!(f, "Z"),
            Coframe::ZetaBar => write!(f, "Zb"),
            Coframe::Eta0 => write!(f, "h0"),
            Coframe::Eta(j) => write!(f, "h{}", j),
            Coframe::EtaBar(j) => write!(f, "hb{}", j),
        }
    }
}

/// Sorts a wedge of coframe elements; `None` when an element repeats.
fn normalize(mut v: Vec<Coframe>) -> Option<(Vec<Coframe>, bool)> {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// A finite sum of `coefficient · θ₁∧…∧θ_p` with the `θ`s in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    terms: BTreeMap<Vec<Coframe>, DiffPoly>,
}

impl Form {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn function(p: DiffPoly) -> Self {
        Self::term(p, vec![])
    }

    pub fn basis(c: Coframe) -> Self {
        Self::term(DiffPoly::one(), vec![c])
    }

    /// `p · θ₁∧…∧θ_k` for any order of the `θ`s.
    pub fn term(p: DiffPoly, wedge: Vec<Coframe>) -> Self {
        let mut out = Self::zero();
        out.add_term(wedge, &p);
        out
    }

    pub fn one_form(p: DiffPoly, q: DiffPoly) -> Self {
        &Self::term(p, vec![Coframe::Zeta]) + &Self::term(q, vec![Coframe::ZetaBar])
    }

    pub fn add_term(&mut self, wedge: Vec<Coframe>, p: &DiffPoly) {
        if p.is_zero() {
            return;
        }
        let Some((key, odd)) = normalize(wedge) else { return };
        let entry = self.terms.entry(key).or_default();
        if odd {
            *entry -= p;
        } else {
            *entry += p;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Coframe>, &DiffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, wedge: &[Coframe]) -> DiffPoly {
        self.terms.get(wedge).cloned().unwrap_or_default()
    }

    /// Common degree of all terms, `None` for zero or mixed degree.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Highest `i` such that `η_i` or `η̄_i` appears.
    pub fn level(&self) -> u32 {
        self.terms
            .keys()
            .flatten()
            .map(|c| match c {
                Coframe::Eta(j) | Coframe::EtaBar(j) => *j,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn mul_fn(&self, p: &DiffPoly) -> Form {
        let mut out = Form::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &(c * p));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        self.mul_fn(&DiffPoly::constant(c.clone()))
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut out = Form::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.add_term(k, &(c1 * c2));
            }
        }
        out
    }

    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero();
        for (k, c) in &self.terms {
            out.add_term(k.iter().map(|x| x.conj()).collect(), &c.conjugate());
        }
        out
    }

    pub fn weight_of(&self) -> WeightOf {
        let mut w = None;
        for (k, c) in &self.terms {
            let kw: i64 = k.iter().map(|x| x.weight()).sum();
            match c.weight_of() {
                WeightOf::Homogeneous(cw) => match w {
                    None => w = Some(cw + kw),
                    Some(x) if x != cw + kw => return WeightOf::Inhomogeneous,
                    _ => {}
                },
                WeightOf::Inhomogeneous => return WeightOf::Inhomogeneous,
                WeightOf::Zero => {}
            }
        }
        w.map_or(WeightOf::Zero, WeightOf::Homogeneous)
    }

    /// Drops every term containing some `η`.
    pub fn reduce_mod_ideal(&self) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| !k.iter().any(|c| c.is_eta()))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `J` on one-forms: `i` on `ζ, η_i`, `−i` on `ζ̄, η̄_i`, identity on `η₀`.
    pub fn j_apply(&self) -> Result<Form, Error> {
        let mut out = Form::zero();
        for (k, c) in &self.terms {
            let [b] = k.as_slice() else {
                return Err(Error::Precondition("J acts on one-forms".into()));
            };
            let s = match b {
                Coframe::Zeta | Coframe::Eta(_) => Scalar::i(),
                Coframe::ZetaBar | Coframe::EtaBar(_) => -Scalar::i(),
                Coframe::Eta0 => Scalar::one(),
            };
            out.add_term(k.clone(), &c.scale(&s));
        }
        Ok(out)
    }

    /// Interior product with the vector field dual to `c`.
    pub fn interior(&self, c: Coframe) -> Form {
        let mut out = Form::zero();
        for (k, p) in &self.terms {
            if let Some(pos) = k.iter().position(|x| *x == c) {
                let mut rest = k.clone();
                rest.remove(pos);
                let p = if pos % 2 == 1 { -p } else { p.clone() };
                out.add_term(rest, &p);
            }
        }
        out
    }

    /// Text such as `u1*Z - (E[1] - E[-2])*Zb + h1`; parsed by [`Form::parse`].
    pub fn parse(s: &str) -> Result<Form, Error> {
        eval_form(&parse_expr(s)?)
    }
}

fn eval_form(e: &Expr) -> Result<Form, Error> {
    Ok(match e {
        Expr::Ident(s, pos) => match Coframe::parse(s) {
            Some(c) => Form::basis(c),
            None => Form::function(
                scalar_ident(s).ok_or_else(|| Error::parse(*pos, format!("unknown identifier '{}'", s)))?,
            ),
        },
        Expr::Int(_) | Expr::Exp(_) => Form::function(crate::algebra::parse::parse_poly_expr(e)?),
        Expr::Add(a, b) => &eval_form(a)? + &eval_form(b)?,
        Expr::Sub(a, b) => &eval_form(a)? - &eval_form(b)?,
        Expr::Mul(a, b) | Expr::Wedge(a, b, _) => eval_form(a)?.wedge(&eval_form(b)?),
        Expr::Div(a, b, pos) => {
            let b = eval_form(b)?;
            let d = (b.degree().unwrap_or(0) == 0)
                .then(|| as_scalar(&b.coeff(&[])))
                .flatten()
                .and_then(|c| c.inv())
                .ok_or_else(|| Error::parse(*pos, "division by a non-constant or zero"))?;
            eval_form(a)?.scale(&d)
        }
        Expr::Neg(a) => -&eval_form(a)?,
        Expr::Pow(a, n) => {
            let a = eval_form(a)?;
            if a.degree().unwrap_or(0) != 0 {
                return Err(Error::parse(0, "power of a form of positive degree"));
            }
            Form::function(a.coeff(&[]).pow(*n))
        }
    })
}

impl Add for &Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        self + &-o
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let basis: Vec<String> = k.iter().map(|b| b.to_string()).collect();
            let basis = basis.join("^");
            let (neg, coeff) = if c.len() == 1 {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(r) => (true, r.to_string()),
                    None => (false, s),
                }
            } else {
                (false, format!("({})", c))
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (coeff.as_str(), basis.is_empty()) {
                (c, true) => write!(f, "{}", c)?,
                ("1", false) => write!(f, "{}", basis)?,
                (c, false) => write!(f, "{}*{}", c, basis)?,
            }
        }
        Ok(())
    }
}

/// `Pζ + Qζ̄`, a one-form with no `η` components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneFormModI {
    pub p: DiffPoly,
    pub q: DiffPoly,
}

impl OneFormModI {
    pub fn new(p: DiffPoly, q: DiffPoly) -> Self {
        OneFormModI { p, q }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Reduces a one-form modulo the ideal and keeps its `ζ, ζ̄` parts.
    pub fn from_form(w: &Form) -> Result<Self, Error> {
        let r = w.reduce_mod_ideal();
        if !matches!(r.degree(), None | Some(1)) || (r.degree().is_none() && !r.is_zero()) {
            return Err(Error::Precondition("expected a one-form".into()));
        }
        Ok(OneFormModI {
            p: r.coeff(&[Coframe::Zeta]),
            q: r.coeff(&[Coframe::ZetaBar]),
        })
    }

    pub fn to_form(&self) -> Form {
        Form::one_form(self.p.clone(), self.q.clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        OneFormModI::new(self.p.scale(c), self.q.scale(c))
    }

    /// Weight of the form (coefficient of `ζ` carries weight one more than the form).
    pub fn weight_of(&self) -> WeightOf {
        self.to_form().weight_of()
    }

    pub fn has_z(&self) -> bool {
        self.p.has_z() || self.q.has_z()
    }
}

impl Add for &OneFormModI {
    type Output = OneFormModI;
    fn add(self, o: &OneFormModI) -> OneFormModI {
        OneFormModI::new(&self.p + &o.p, &self.q + &o.q)
    }
}

impl Sub for &OneFormModI {
    type Output = OneFormModI;
    fn sub(self, o: &OneFormModI) -> OneFormModI {
        OneFormModI::new(&self.p - &o.p, &self.q - &o.q)
    }
}

impl fmt::Display for OneFormModI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

/// `dp = e₋₁p ζ + e₋̄₁p ζ̄ + p_u η₀ + Σ p_{u_{i−1}} η_i + Σ p_{ū_{i−1}} η̄_i`.
pub fn d_function(params: &SystemParams, p: &DiffPoly) -> Form {
    let mut out = Form::one_form(e_minus1(params, p), e_minus1bar(params, p));
    out.add_term(vec![Coframe::Eta0], &p.partial_u());
    for g in p.generators() {
        match g {
            Generator::U(j) => out.add_term(vec![Coframe::Eta(j + 1)], &p.partial(g)),
            Generator::Ub(j) => out.add_term(vec![Coframe::EtaBar(j + 1)], &p.partial(g)),
            _ => {}
        }
    }
    out
}

/// `τ^i = Σ_j C(i,j) T^j_u η_{i−j}`.
pub fn tau(params: &SystemParams, i: u32) -> Form {
    let mut out = Form::zero();
    for j in 0..=i {
        let c = params.t(j).partial_u().scale(&binom(i, j));
        out.add_term(vec![Coframe::eta(i - j)], &c);
    }
    out
}

/// Exterior derivative of a single coframe element.
pub fn d_coframe(params: &SystemParams, c: Coframe) -> Form {
    let z = || Form::basis(Coframe::Zeta);
    let zb = || Form::basis(Coframe::ZetaBar);
    match c {
        Coframe::Zeta | Coframe::ZetaBar => Form::zero(),
        Coframe::Eta0 => &z().wedge(&Form::basis(Coframe::Eta(1))) + &zb().wedge(&Form::basis(Coframe::EtaBar(1))),
        Coframe::Eta(i) => &tau(params, i - 1).wedge(&zb()) - &Form::basis(Coframe::Eta(i + 1)).wedge(&z()),
        Coframe::EtaBar(i) => {
            &tau(params, i - 1).conjugate().wedge(&z()) - &Form::basis(Coframe::EtaBar(i + 1)).wedge(&zb())
        }
    }
}

pub fn d_form(params: &SystemParams, w: &Form) -> Form {
    let mut out = Form::zero();
    for (k, c) in w.terms() {
        let rest = Form::term(DiffPoly::one(), k.clone());
        out = &out + &d_function(params, c).wedge(&rest);
        for (pos, b) in k.iter().enumerate() {
            let db = d_coframe(params, *b);
            if db.is_zero() {
                continue;
            }
            let before = Form::term(c.clone(), k[..pos].to_vec());
            let after = Form::term(DiffPoly::one(), k[pos + 1..].to_vec());
            let piece = before.wedge(&db).wedge(&after);
            out = if pos % 2 == 1 { &out - &piece } else { &out + &piece };
        }
    }
    out
}

/// `du = u₀ζ + ū₀ζ̄ + η₀`.
pub fn du() -> Form {
    &Form::one_form(DiffPoly::u(0), DiffPoly::ub(0)) + &Form::basis(Coframe::Eta0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random::{random_poly, RandomPolyConfig};
    use num_rational::Rational64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p() -> SystemParams {
        SystemParams::tzitzeica()
    }

    #[test]
    fn differentials_of_generators() {
        let p = p();
        let du0 = d_function(&p, &DiffPoly::u(0));
        assert_eq!(du0, Form::parse("u1*Z - (E[1] - E[-2])*Zb + h1").unwrap());
        assert_eq!(d_function(&p, &DiffPoly::z()), Form::basis(Coframe::Zeta));
        let e = DiffPoly::exp(Rational64::from_integer(1));
        assert_eq!(d_function(&p, &e), du().mul_fn(&e));
    }

    #[test]
    fn structure_equations() {
        let p = p();
        assert_eq!(
            d_form(&p, &Form::basis(Coframe::Eta0)),
            Form::parse("Z^h1 + Zb^hb1").unwrap()
        );
        assert!(d_form(&p, &Form::basis(Coframe::Zeta)).is_zero());
        assert!(d_form(&p, &d_function(&p, &DiffPoly::u(0))).is_zero());
        let dh1 = d_form(&p, &Form::basis(Coframe::Eta(1)));
        let expect =
            &Form::term(p.f_u().clone(), vec![Coframe::Eta0, Coframe::ZetaBar]) - &Form::parse("h2^Z").unwrap();
        assert_eq!(dh1, expect);
    }

    #[test]
    fn reduction_and_j() {
        let p = p();
        let r = d_function(&p, &DiffPoly::u(0)).reduce_mod_ideal();
        assert_eq!(r, Form::parse("u1*Z - (E[1] - E[-2])*Zb").unwrap());
        assert!(Form::parse("h1^Z").unwrap().reduce_mod_ideal().is_zero());
        let zz = Form::parse("u0*Z^Zb").unwrap();
        assert_eq!(zz.reduce_mod_ideal(), zz);
        assert_eq!(
            Form::basis(Coframe::Zeta).j_apply().unwrap(),
            Form::basis(Coframe::Zeta).scale(&Scalar::i())
        );
        assert_eq!(
            Form::basis(Coframe::ZetaBar).j_apply().unwrap(),
            Form::basis(Coframe::ZetaBar).scale(&-Scalar::i())
        );
        assert_eq!(
            Form::basis(Coframe::Eta0).j_apply().unwrap(),
            Form::basis(Coframe::Eta0)
        );
        assert!(zz.j_apply().is_err());
    }

    #[test]
    fn j_squared_is_minus_one_off_eta0() {
        let w = Form::parse("u0*Z + ub1*Zb + h2 - 3*hb1").unwrap();
        assert_eq!(w.j_apply().unwrap().j_apply().unwrap(), -&w);
    }

    #[test]
    fn antisymmetry_and_text() {
        let a = Form::parse("Zb^Z").unwrap();
        assert_eq!(a, -&Form::parse("Z^Zb").unwrap());
        assert!(Form::parse("h1^h1").unwrap().is_zero());
        let w = Form::parse("-1/2*u0^2*Z + (E[1] + 1/2*E[-2])*Zb + i*h0^hb2").unwrap();
        assert_eq!(Form::parse(&w.to_string()).unwrap(), w);
        assert!(Form::parse("Z^2").is_err());
    }

    #[test]
    fn dt_congruence_mod_zeta_bar() {
        let p = p();
        for i in 0..5 {
            let dt = d_function(&p, &p.t(i));
            let lhs = &dt - &Form::term((*p.t(i + 1)).clone(), vec![Coframe::Zeta]);
            let lhs = &lhs - &tau(&p, i);
            assert!(lhs.terms().all(|(k, _)| k == &vec![Coframe::ZetaBar]), "i = {}", i);
        }
    }

    #[test]
    fn d_squared_vanishes_on_random_input() {
        let p = p();
        let cfg = RandomPolyConfig {
            exps: vec![
                Rational64::from_integer(0),
                Rational64::from_integer(1),
                Rational64::new(-1, 2),
            ],
            z_vars: true,
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = random_poly(&mut rng, &cfg);
            assert!(d_form(&p, &d_function(&p, &x)).is_zero());
            let basis = [
                Coframe::Zeta,
                Coframe::ZetaBar,
                Coframe::Eta0,
                Coframe::Eta(2),
                Coframe::EtaBar(3),
            ];
            let b = basis[rng.gen_range(0..basis.len())];
            let w = Form::term(x, vec![b]);
            assert!(d_form(&p, &d_form(&p, &w)).is_zero());
        }
    }

    #[test]
    fn d_preserves_weight() {
        let p = p();
        let x: DiffPoly = "u1*u0 + E[1]*u1*ub0*u0^2".parse().unwrap();
        assert_eq!(x.weight_of(), WeightOf::Homogeneous(3));
        assert_eq!(d_function(&p, &x).weight_of(), WeightOf::Homogeneous(3));
        let w = Form::term(x, vec![Coframe::Eta(1)]);
        assert_eq!(d_form(&p, &w).weight_of(), WeightOf::Homogeneous(4));
    }
}
