//! Weighted-homogeneous monomial bases.

use num_rational::Rational64;

use crate::algebra::{Generator, JetMonomial};

/// Which generators an ansatz may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarClass {
    /// Only `u_j`.
    PureU,
    /// Only `ū_j`.
    PureUbar,
    /// `u_j`, `ū_j`, `z`, `z̄` with the `u`-weight of every monomial at most `max_pos_weight`.
    Mixed { max_pos_weight: u32 },
}

/// All multisets of positive parts summing to `n`, largest part first.
fn partitions(n: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        prefix.push(p);
        partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// Jet monomials in one family (`u` or `ū`) of total weight `n`.
fn jet_monomials(n: u32, bar: bool) -> Vec<JetMonomial> {
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|ps| {
            let g = |j: u32| if bar { Generator::Ub(j) } else { Generator::U(j) };
            JetMonomial::from_parts(Rational64::from_integer(0), ps.into_iter().map(|p| (g(p - 1), 1)))
        })
        .collect()
}

/// Monomials of weight `d` in a class, without exponentials, highest first.
pub fn enumerate_monomials(d: i64, class: VarClass) -> Vec<JetMonomial> {
    enumerate_with(d, class, 0)
}

fn enumerate_with(d: i64, class: VarClass, z_degree: u32) -> Vec<JetMonomial> {
    let mut out = Vec::new();
    match class {
        VarClass::PureU if d >= 0 => out = jet_monomials(d as u32, false),
        VarClass::PureUbar if d <= 0 => out = jet_monomials((-d) as u32, true),
        VarClass::PureU | VarClass::PureUbar => {}
        VarClass::Mixed { max_pos_weight } => {
            for zp in 0..=z_degree {
                for zbp in 0..=(z_degree - zp) {
                    for a in 0..=max_pos_weight as i64 {
                        // a - b - zp + zbp = d
                        let b = a - d - zp as i64 + zbp as i64;
                        if b < 0 {
                            continue;
                        }
                        let zs = JetMonomial::from_parts(
                            Rational64::from_integer(0),
                            [(Generator::Z, zp), (Generator::Zb, zbp)],
                        );
                        for mu in jet_monomials(a as u32, false) {
                            for mb in jet_monomials(b as u32, true) {
                                out.push(zs.mul(&mu).mul(&mb));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| y.cmp(x));
    out
}

/// Candidate unknowns `e^{qu}·m` for an integration or kernel problem.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub weight: i64,
    pub class: VarClass,
    pub exps: Vec<Rational64>,
    pub z_degree: u32,
    monomials: Vec<JetMonomial>,
}

impl Ansatz {
    pub fn new(weight: i64, class: VarClass, exps: &[Rational64], z_degree: u32) -> Self {
        let base = enumerate_with(
            weight,
            class,
            if matches!(class, VarClass::Mixed { .. }) {
                z_degree
            } else {
                0
            },
        );
        let mut exps = exps.to_vec();
        exps.sort();
        exps.dedup();
        let mut monomials: Vec<JetMonomial> = exps
            .iter()
            .flat_map(|&q| base.iter().map(move |m| m.clone().with_exp_u(q)))
            .collect();
        monomials.sort_by(|x, y| y.cmp(x));
        Ansatz {
            weight,
            class,
            exps,
            z_degree,
            monomials,
        }
    }

    /// Polynomial ansatz in one jet family.
    pub fn pure(weight: i64, class: VarClass) -> Self {
        Self::new(weight, class, &[Rational64::from_integer(0)], 0)
    }

    /// Column labels, highest monomial first.
    pub fn monomials(&self) -> &[JetMonomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Exponents `k·α/2` for `|k| ≤ window`.
pub fn exp_window(alpha: Rational64, window: u32) -> Vec<Rational64> {
    let w = window as i64;
    (-w..=w).map(|k| alpha * Rational64::new(k, 2)).collect()
}
