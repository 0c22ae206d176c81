//! Structured term-by-term serialization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::{fmt_q, Generator, JetMonomial};
use super::parse::{parse_big_rational, parse_r64};
use super::poly::DiffPoly;
use super::scalar::{fmt_rational, Scalar};
use crate::error::Error;

/// One term: coefficient components `[1, i, s2, i*s2]`, the exponent of
/// `e^{qu}`, and generator powers. Rationals are strings such as `"-28/3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: [String; 4],
    pub exp_u: String,
    pub powers: BTreeMap<String, u32>,
}

/// Terms in descending canonical order.
pub fn to_records(p: &DiffPoly) -> Vec<TermRecord> {
    p.terms()
        .rev()
        .map(|(m, c)| TermRecord {
            coeff: c.components().clone().map(|q| fmt_rational(&q)),
            exp_u: fmt_q(m.exp_u()),
            powers: m.powers().map(|(g, e)| (g.to_string(), e)).collect(),
        })
        .collect()
}

pub fn from_records(rs: &[TermRecord]) -> Result<DiffPoly, Error> {
    let mut p = DiffPoly::zero();
    for r in rs {
        let mut cs = Vec::with_capacity(4);
        for s in &r.coeff {
            cs.push(parse_big_rational(s).ok_or_else(|| Error::Data(format!("bad rational '{}'", s)))?);
        }
        let [a, b, c, d]: [_; 4] = cs.try_into().unwrap();
        let q = parse_r64(&r.exp_u).ok_or_else(|| Error::Data(format!("bad exponent '{}'", r.exp_u)))?;
        let mut powers = Vec::new();
        for (g, &e) in &r.powers {
            let g = Generator::parse(g).ok_or_else(|| Error::Data(format!("unknown generator '{}'", g)))?;
            powers.push((g, e));
        }
        p.add_term(JetMonomial::from_parts(q, powers), &Scalar::from_parts(a, b, c, d));
    }
    Ok(p)
}

pub fn to_json(p: &DiffPoly) -> serde_json::Value {
    serde_json::to_value(to_records(p)).expect("records serialize")
}

pub fn from_json(v: &serde_json::Value) -> Result<DiffPoly, Error> {
    let rs: Vec<TermRecord> = serde_json::from_value(v.clone()).map_err(|e| Error::Data(e.to_string()))?;
    from_records(&rs)
}
