//! Jet monomials `e^{q·u} · z^a · z̄^b · Π u_j^{n_j} · Π ū_j^{m_j}`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

/// A polynomial generator. `u` itself only enters through `e^{q·u}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Z,
    Zb,
    U(u32),
    Ub(u32),
}

impl Generator {
    pub fn weight(self) -> i64 {
        match self {
            Generator::Z => -1,
            Generator::Zb => 1,
            Generator::U(j) => j as i64 + 1,
            Generator::Ub(j) => -(j as i64 + 1),
        }
    }

    pub fn conj(self) -> Self {
        match self {
            Generator::Z => Generator::Zb,
            Generator::Zb => Generator::Z,
            Generator::U(j) => Generator::Ub(j),
            Generator::Ub(j) => Generator::U(j),
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "z" => Some(Generator::Z),
            "zb" => Some(Generator::Zb),
            _ => {
                if let Some(rest) = name.strip_prefix("ub") {
                    rest.parse().ok().map(Generator::Ub)
                } else if let Some(rest) = name.strip_prefix('u') {
                    rest.parse().ok().map(Generator::U)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Z => write!(f, "z"),
            Generator::Zb => write!(f, "zb"),
            Generator::U(j) => write!(f, "u{}", j),
            Generator::Ub(j) => write!(f, "ub{}", j),
        }
    }
}

/// Exponent data of one term. Trailing zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetMonomial {
    exp_u: Rational64,
    z: u32,
    zb: u32,
    u: Vec<u32>,
    ub: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn get(v: &[u32], j: u32) -> u32 {
    v.get(j as usize).copied().unwrap_or(0)
}

fn set(v: &mut Vec<u32>, j: u32, e: u32) {
    let j = j as usize;
    if v.len() <= j {
        if e == 0 {
            return;
        }
        v.resize(j + 1, 0);
    }
    v[j] = e;
    trim(v);
}

impl JetMonomial {
    pub fn one() -> Self {
        JetMonomial {
            exp_u: Rational64::zero(),
            z: 0,
            zb: 0,
            u: Vec::new(),
            ub: Vec::new(),
        }
    }

    pub fn var(g: Generator) -> Self {
        Self::one().with_power(g, 1)
    }

    /// `e^{q·u}`.
    pub fn exp(q: Rational64) -> Self {
        let mut m = Self::one();
        m.exp_u = q;
        m
    }

    pub fn from_parts(exp_u: Rational64, powers: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut m = Self::exp(exp_u);
        for (g, e) in powers {
            let cur = m.power(g);
            m = m.with_power(g, cur + e);
        }
        m
    }

    pub fn exp_u(&self) -> Rational64 {
        self.exp_u
    }

    pub fn power(&self, g: Generator) -> u32 {
        match g {
            Generator::Z => self.z,
            Generator::Zb => self.zb,
            Generator::U(j) => get(&self.u, j),
            Generator::Ub(j) => get(&self.ub, j),
        }
    }

    pub fn with_power(mut self, g: Generator, e: u32) -> Self {
        match g {
            Generator::Z => self.z = e,
            Generator::Zb => self.zb = e,
            Generator::U(j) => set(&mut self.u, j, e),
            Generator::Ub(j) => set(&mut self.ub, j, e),
        }
        self
    }

    pub fn with_exp_u(mut self, q: Rational64) -> Self {
        self.exp_u = q;
        self
    }

    /// Nonzero powers in a fixed order: z, zb, u0, u1, ..., ub0, ub1, ...
    pub fn powers(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        let zs = [(Generator::Z, self.z), (Generator::Zb, self.zb)];
        let us = self.u.iter().enumerate().map(|(j, &e)| (Generator::U(j as u32), e));
        let ubs = self.ub.iter().enumerate().map(|(j, &e)| (Generator::Ub(j as u32), e));
        zs.into_iter().chain(us).chain(ubs).filter(|&(_, e)| e > 0)
    }

    pub fn is_one(&self) -> bool {
        self.exp_u.is_zero() && self.z == 0 && self.zb == 0 && self.u.is_empty() && self.ub.is_empty()
    }

    /// True when no generator (other than possibly `e^{qu}`) appears.
    pub fn is_pure_exponential(&self) -> bool {
        self.z == 0 && self.zb == 0 && self.u.is_empty() && self.ub.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.zb as i64 - self.z as i64 + self.pos_weight() as i64 - self.neg_weight() as i64
    }

    /// Weight carried by the `u_j` factors.
    pub fn pos_weight(&self) -> u64 {
        self.u.iter().enumerate().map(|(j, &e)| (j as u64 + 1) * e as u64).sum()
    }

    /// Absolute weight carried by the `ū_j` factors.
    pub fn neg_weight(&self) -> u64 {
        self.ub
            .iter()
            .enumerate()
            .map(|(j, &e)| (j as u64 + 1) * e as u64)
            .sum()
    }

    /// Highest `j` with `u_j` present.
    pub fn max_u_order(&self) -> Option<u32> {
        self.u.len().checked_sub(1).map(|j| j as u32)
    }

    pub fn max_ub_order(&self) -> Option<u32> {
        self.ub.len().checked_sub(1).map(|j| j as u32)
    }

    pub fn has_u(&self) -> bool {
        !self.u.is_empty()
    }

    pub fn has_ub(&self) -> bool {
        !self.ub.is_empty()
    }

    pub fn has_z(&self) -> bool {
        self.z > 0 || self.zb > 0
    }

    pub fn mul(&self, o: &JetMonomial) -> JetMonomial {
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
                .collect()
        };
        JetMonomial {
            exp_u: self.exp_u + o.exp_u,
            z: self.z + o.z,
            zb: self.zb + o.zb,
            u: add(&self.u, &o.u),
            ub: add(&self.ub, &o.ub),
        }
    }

    /// Swaps `z ↔ z̄` and `u_j ↔ ū_j`; `e^{qu}` is real.
    pub fn conj(&self) -> JetMonomial {
        JetMonomial {
            exp_u: self.exp_u,
            z: self.zb,
            zb: self.z,
            u: self.ub.clone(),
            ub: self.u.clone(),
        }
    }

    /// Lexicographic comparison with generators ranked
    /// `z < zb < u0 < u1 < … < ub0 < ub1 < …`, highest rank compared first.
    fn cmp_lex(&self, o: &Self) -> Ordering {
        let cmp_vec = |a: &[u32], b: &[u32]| -> Ordering {
            let n = a.len().max(b.len());
            for k in (0..n).rev() {
                let c = get(a, k as u32).cmp(&get(b, k as u32));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        };
        cmp_vec(&self.ub, &o.ub)
            .then_with(|| cmp_vec(&self.u, &o.u))
            .then_with(|| self.zb.cmp(&o.zb))
            .then_with(|| self.z.cmp(&o.z))
    }
}

/// Canonical order: weight first, then lexicographic, then the exponent of `e^{qu}`.
impl Ord for JetMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight()
            .cmp(&o.weight())
            .then_with(|| self.cmp_lex(o))
            .then_with(|| self.exp_u.cmp(&o.exp_u))
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub(crate) fn fmt_q(q: Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Factors of the monomial as grammar tokens, e.g. `["E[1/2]", "z", "u2", "u0^2"]`.
pub(crate) fn factor_tokens(m: &JetMonomial) -> Vec<String> {
    let mut out = Vec::new();
    if !m.exp_u.is_zero() {
        out.push(format!("E[{}]", fmt_q(m.exp_u)));
    }
    let mut push = |g: Generator, e: u32| {
        if e == 1 {
            out.push(g.to_string());
        } else if e > 1 {
            out.push(format!("{}^{}", g, e));
        }
    };
    push(Generator::Z, m.z);
    push(Generator::Zb, m.zb);
    for (j, &e) in m.ub.iter().enumerate().rev() {
        push(Generator::Ub(j as u32), e);
    }
    for (j, &e) in m.u.iter().enumerate().rev() {
        push(Generator::U(j as u32), e);
    }
    out
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = factor_tokens(self);
        if t.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", t.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_follow_the_table() {
        let m = JetMonomial::from_parts(
            Rational64::zero(),
            [(Generator::Z, 1), (Generator::Ub(2), 1), (Generator::U(1), 2)],
        );
        assert_eq!(m.weight(), 0);
        assert_eq!(JetMonomial::exp(Rational64::new(-2, 1)).weight(), 0);
        assert_eq!(m.conj().weight(), 0);
        assert_eq!(JetMonomial::var(Generator::Ub(3)).weight(), -4);
    }

    #[test]
    fn lex_order_puts_highest_jet_last() {
        let u4 = JetMonomial::var(Generator::U(4));
        let u2u1 = JetMonomial::from_parts(Rational64::zero(), [(Generator::U(2), 1), (Generator::U(1), 1)]);
        let u05 = JetMonomial::from_parts(Rational64::zero(), [(Generator::U(0), 5)]);
        assert!(u4 > u2u1 && u2u1 > u05);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let m = JetMonomial::var(Generator::U(3)).with_power(Generator::U(3), 0);
        assert!(m.is_one());
        assert_eq!(m, JetMonomial::one());
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [
            Generator::Z,
            Generator::Zb,
            Generator::U(0),
            Generator::U(12),
            Generator::Ub(3),
        ] {
            assert_eq!(Generator::parse(&g.to_string()), Some(g));
        }
        assert_eq!(Generator::parse("v1"), None);
        assert_eq!(Generator::parse("u"), None);
    }
}
