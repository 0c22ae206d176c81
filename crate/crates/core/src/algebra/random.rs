//! Seeded random polynomials for identity testing.

use num_rational::Rational64;
use rand::Rng;

use super::monomial::{Generator, JetMonomial};
use super::poly::DiffPoly;
use super::scalar::{Scalar, Unit};
use num_rational::BigRational;

#[derive(Clone, Debug)]
pub struct RandomPolyConfig {
    pub max_terms: usize,
    /// Highest jet index `j` used for `u_j` (and `ū_j` when enabled).
    pub max_order: u32,
    pub max_degree: u32,
    pub exps: Vec<Rational64>,
    pub conjugate_jets: bool,
    pub z_vars: bool,
    /// Allow `i`, `√2` and `i√2` components in coefficients.
    pub irrational: bool,
}

impl Default for RandomPolyConfig {
    fn default() -> Self {
        RandomPolyConfig {
            max_terms: 4,
            max_order: 3,
            max_degree: 3,
            exps: vec![Rational64::from_integer(0)],
            conjugate_jets: true,
            z_vars: false,
            irrational: true,
        }
    }
}

fn random_scalar<R: Rng>(rng: &mut R, irrational: bool) -> Scalar {
    let mut s = Scalar::zero();
    let units: &[Unit] = if irrational { &Unit::ALL } else { &Unit::ALL[..1] };
    while s.is_zero() {
        for &u in units {
            if u == Unit::One || rng.gen_bool(0.3) {
                let n = rng.gen_range(-5i64..=5);
                let d = rng.gen_range(1i64..=3);
                s += &Scalar::unit(u, BigRational::new(n.into(), d.into()));
            }
        }
    }
    s
}

pub fn random_monomial<R: Rng>(rng: &mut R, cfg: &RandomPolyConfig) -> JetMonomial {
    let mut gens = Vec::new();
    for j in 0..=cfg.max_order {
        gens.push(Generator::U(j));
        if cfg.conjugate_jets {
            gens.push(Generator::Ub(j));
        }
    }
    if cfg.z_vars {
        gens.push(Generator::Z);
        gens.push(Generator::Zb);
    }
    let q = cfg.exps[rng.gen_range(0..cfg.exps.len())];
    let deg = rng.gen_range(0..=cfg.max_degree);
    let powers: Vec<_> = (0..deg).map(|_| (gens[rng.gen_range(0..gens.len())], 1)).collect();
    JetMonomial::from_parts(q, powers)
}

pub fn random_poly<R: Rng>(rng: &mut R, cfg: &RandomPolyConfig) -> DiffPoly {
    let n = rng.gen_range(1..=cfg.max_terms.max(1));
    let mut p = DiffPoly::zero();
    for _ in 0..n {
        let m = random_monomial(rng, cfg);
        p.add_term(m, &random_scalar(rng, cfg.irrational));
    }
    p
}

/// A random polynomial in which every term has weight `d`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, cfg: &RandomPolyConfig, d: i64) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..200 {
        if p.len() >= cfg.max_terms {
            break;
        }
        let m = random_monomial(rng, cfg);
        if m.weight() == d {
            p.add_term(m, &random_scalar(rng, cfg.irrational));
        }
    }
    p
}
