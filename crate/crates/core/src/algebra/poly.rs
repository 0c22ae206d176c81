//! Exponential-differential polynomials with coefficients in ℚ(i, √2).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{factor_tokens, Generator, JetMonomial};
use super::scalar::{fmt_rational, Scalar, Unit};
use crate::error::Error;

/// Result of [`DiffPoly::weight_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightOf {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

/// A finite sum of `Scalar · JetMonomial`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<JetMonomial, Scalar>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, JetMonomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::int(n))
    }

    pub fn term(c: Scalar, m: JetMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn monomial(m: JetMonomial) -> Self {
        Self::term(Scalar::one(), m)
    }

    pub fn var(g: Generator) -> Self {
        Self::monomial(JetMonomial::var(g))
    }

    pub fn u(j: u32) -> Self {
        Self::var(Generator::U(j))
    }

    pub fn ub(j: u32) -> Self {
        Self::var(Generator::Ub(j))
    }

    pub fn z() -> Self {
        Self::var(Generator::Z)
    }

    pub fn zb() -> Self {
        Self::var(Generator::Zb)
    }

    /// `e^{q·u}`.
    pub fn exp(q: Rational64) -> Self {
        Self::monomial(JetMonomial::exp(q))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (JetMonomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&JetMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &JetMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest term in the canonical order.
    pub fn leading(&self) -> Option<(&JetMonomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: JetMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> DiffPoly {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> DiffPoly {
        self.scale(&Scalar::int(n))
    }

    pub fn mul_monomial(&self, m: &JetMonomial) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Multiplies by `e^{q·u}`.
    pub fn mul_exp(&self, q: Rational64) -> DiffPoly {
        if q.is_zero() {
            return self.clone();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone().with_exp_u(m.exp_u() + q), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn conjugate(&self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    pub fn weight_of(&self) -> WeightOf {
        let mut w = None;
        for m in self.terms.keys() {
            match w {
                None => w = Some(m.weight()),
                Some(x) if x != m.weight() => return WeightOf::Inhomogeneous,
                _ => {}
            }
        }
        w.map_or(WeightOf::Zero, WeightOf::Homogeneous)
    }

    /// The common weight, if any; the zero polynomial is homogeneous of every weight.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        matches!(self.weight_of(), WeightOf::Zero) || self.weight_of() == WeightOf::Homogeneous(d)
    }

    /// Formal partial derivative in a generator.
    pub fn partial(&self, g: Generator) -> DiffPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.power(g);
            if e > 0 {
                out.add_term(m.clone().with_power(g, e - 1), &c.scale(&big(e as i64)));
            }
        }
        out
    }

    /// Partial derivative in `u` itself, acting only on `e^{q·u}`.
    pub fn partial_u(&self) -> DiffPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let q = m.exp_u();
            if !q.is_zero() {
                out.add_term(m.clone(), &c.scale(&from_r64(q)));
            }
        }
        out
    }

    pub fn max_u_order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_u_order()).max()
    }

    pub fn max_ub_order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_ub_order()).max()
    }

    /// Exponents `q` of the `e^{q·u}` factors that occur.
    pub fn exps(&self) -> BTreeSet<Rational64> {
        self.terms.keys().map(|m| m.exp_u()).collect()
    }

    /// Generators that occur with nonzero power.
    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.powers().map(|(g, _)| g)).collect()
    }

    pub fn has_z(&self) -> bool {
        self.terms.keys().any(|m| m.has_z())
    }

    pub fn eval_numeric(&self, assignment: &HashMap<Generator, Complex64>, u: f64) -> Result<Complex64, Error> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex() * (m.exp_u().to_f64().unwrap_or(f64::NAN) * u).exp();
            for (g, e) in m.powers() {
                let x = assignment
                    .get(&g)
                    .ok_or_else(|| Error::MissingAssignment(g.to_string()))?;
                v *= x.powi(e as i32);
            }
            acc += v;
        }
        Ok(acc)
    }
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub(crate) fn from_r64(q: Rational64) -> BigRational {
    BigRational::new((*q.numer()).into(), (*q.denom()).into())
}

impl From<Scalar> for DiffPoly {
    fn from(c: Scalar) -> Self {
        DiffPoly::constant(c)
    }
}

impl From<Generator> for DiffPoly {
    fn from(g: Generator) -> Self {
        DiffPoly::var(g)
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, o: &DiffPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, o: &DiffPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, o: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, o: DiffPoly) -> DiffPoly {
        self += &o;
        self
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, o: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, o: DiffPoly) -> DiffPoly {
        self -= &o;
        self
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, o: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, o: DiffPoly) -> DiffPoly {
        &self * &o
    }
}

impl Mul<&Scalar> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, c: &Scalar) -> DiffPoly {
        self.scale(c)
    }
}

/// Writes one term with its sign handled by the caller; `mag` is the
/// coefficient with a positive leading component.
fn write_term(f: &mut fmt::Formatter<'_>, c: &Scalar, m: &JetMonomial) -> fmt::Result {
    let factors = factor_tokens(m);
    let mono = factors.join("*");
    match c.as_monomial() {
        Some((unit, q)) => {
            let q = q.abs();
            let mut parts = Vec::new();
            if !q.is_one() || (unit == Unit::One && mono.is_empty()) {
                parts.push(fmt_rational(&q));
            }
            if unit != Unit::One {
                parts.push(unit.symbol().to_string());
            }
            if !mono.is_empty() {
                parts.push(mono);
            }
            write!(f, "{}", parts.join("*"))
        }
        None => {
            if mono.is_empty() {
                write!(f, "({})", c)
            } else {
                write!(f, "({})*{}", c, mono)
            }
        }
    }
}

/// Sign used when printing: a single-component coefficient carries its own
/// sign; a multi-component one is always printed in parentheses after `+`.
fn is_negative(c: &Scalar) -> bool {
    c.as_monomial().is_some_and(|(_, q)| q.is_negative())
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_term(f, c, m)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for DiffPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        super::parse::parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn additive_inverse_and_like_terms() {
        let u0 = DiffPoly::u(0);
        assert!((&u0 + &-&u0).is_zero());
        assert_eq!((&u0 + &DiffPoly::ub(0)).len(), 2);
        let e = DiffPoly::exp(r(1, 1));
        assert_eq!(&e + &e, e.scale_int(2));
    }

    #[test]
    fn products() {
        let (u0, ub0) = (DiffPoly::u(0), DiffPoly::ub(0));
        assert_eq!(&(&u0 + &ub0) * &(&u0 - &ub0), &u0.pow(2) - &ub0.pow(2));
        let h = DiffPoly::exp(r(1, 2));
        assert_eq!(&h * &h, DiffPoly::exp(r(1, 1)));
        let is2 = DiffPoly::constant(Scalar::i_sqrt2());
        assert_eq!(&is2 * &is2, DiffPoly::int(-2));
    }

    #[test]
    fn conjugation() {
        let p = &DiffPoly::exp(r(1, 1)) * &DiffPoly::u(1);
        assert_eq!(p.conjugate(), &DiffPoly::exp(r(1, 1)) * &DiffPoly::ub(1));
        let q = &(&DiffPoly::z() * &DiffPoly::u(0)) - &(&DiffPoly::zb() * &DiffPoly::ub(0));
        assert_eq!(q.conjugate(), -&q);
        let iu = DiffPoly::u(0).scale(&Scalar::i());
        assert_eq!(iu.conjugate(), DiffPoly::ub(0).scale(&-Scalar::i()));
    }

    #[test]
    fn weights() {
        let p = &(&DiffPoly::z() * &DiffPoly::ub(2)) * &DiffPoly::u(1).pow(2);
        assert_eq!(p.weight_of(), WeightOf::Homogeneous(0));
        let v5: DiffPoly = "u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5".parse().unwrap();
        assert_eq!(v5.weight_of(), WeightOf::Homogeneous(5));
        assert_eq!((&DiffPoly::u(0) + &DiffPoly::u(1)).weight_of(), WeightOf::Inhomogeneous);
        assert_eq!(DiffPoly::zero().weight_of(), WeightOf::Zero);
    }

    #[test]
    fn partials() {
        assert_eq!(
            DiffPoly::u(0).pow(5).partial(Generator::U(0)),
            DiffPoly::u(0).pow(4).scale_int(5)
        );
        assert_eq!(
            DiffPoly::exp(r(-2, 1)).partial_u(),
            DiffPoly::exp(r(-2, 1)).scale_int(-2)
        );
        assert_eq!((&DiffPoly::z() * &DiffPoly::u(0)).partial(Generator::Z), DiffPoly::u(0));
        assert!(DiffPoly::u(0).partial_u().is_zero());
    }

    #[test]
    fn numeric_evaluation() {
        let mut a = HashMap::new();
        a.insert(Generator::U(0), Complex64::new(2.0, 0.0));
        assert_eq!(
            DiffPoly::u(0).pow(2).eval_numeric(&a, 0.0).unwrap(),
            Complex64::new(4.0, 0.0)
        );
        assert_eq!(
            DiffPoly::exp(r(1, 1)).eval_numeric(&a, 0.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        a.insert(Generator::U(0), Complex64::new(1.0, 1.0));
        a.insert(Generator::Ub(0), Complex64::new(1.0, -1.0));
        let v = (&DiffPoly::u(0) * &DiffPoly::ub(0)).eval_numeric(&a, 0.3).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!(matches!(
            DiffPoly::u(3).eval_numeric(&a, 0.0),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn display_is_highest_jet_first() {
        let v5: DiffPoly = "u0^5 - 5*u1^2*u0 + u4 - 5*u2*u0^2 + 5*u2*u1".parse().unwrap();
        assert_eq!(v5.to_string(), "u4 + 5*u2*u1 - 5*u2*u0^2 - 5*u1^2*u0 + u0^5");
        let p: DiffPoly = "-28/3*u1^3*u0 + i*s2*ub0 + (2 + i)*E[1/2]*u0".parse().unwrap();
        let again: DiffPoly = p.to_string().parse().unwrap();
        assert_eq!(p, again);
    }
}
