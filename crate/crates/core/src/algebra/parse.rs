//! Text grammar shared by polynomials and forms.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := ['-'] postfix
//! postfix := atom ('^' (integer | atom))*
//! atom    := integer | ident | 'E[' rational ']' | '(' expr ')'
//! ```
//!
//! `x^n` with an integer `n` is a power; any other `^` is a wedge product.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use super::monomial::Generator;
use super::poly::DiffPoly;
use super::scalar::Scalar;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident(String, usize),
    Exp(Rational64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Wedge(Box<Expr>, Box<Expr>, usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Exp(Rational64),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < cs.len() {
        let (pos, c) = cs[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let st = k;
            while k < cs.len() && cs[k].1.is_ascii_digit() {
                k += 1;
            }
            let txt: String = cs[st..k].iter().map(|x| x.1).collect();
            out.push((Tok::Int(txt.parse().unwrap()), pos));
        } else if c == 'E' && cs.get(k + 1).map(|x| x.1) == Some('[') {
            let close = cs[k..]
                .iter()
                .position(|x| x.1 == ']')
                .map(|p| p + k)
                .ok_or_else(|| Error::parse(pos, "unterminated E["))?;
            let txt: String = cs[k + 2..close].iter().map(|x| x.1).collect();
            let q = parse_r64(txt.trim()).ok_or_else(|| Error::parse(pos, format!("bad exponent '{}'", txt)))?;
            out.push((Tok::Exp(q), pos));
            k = close + 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = k;
            while k < cs.len() && (cs[k].1.is_ascii_alphanumeric() || cs[k].1 == '_') {
                k += 1;
            }
            out.push((Tok::Ident(cs[st..k].iter().map(|x| x.1).collect()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            k += 1;
        } else {
            return Err(Error::parse(pos, format!("unexpected character '{}'", c)));
        }
    }
    Ok(out)
}

pub(crate) fn parse_r64(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational64::new(n.trim().parse().ok()?, d))
        }
        None => s.parse().ok().map(Rational64::from_integer),
    }
}

pub(crate) fn parse_big_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    k: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.k += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, Error> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.atom()?;
        while self.peek() == Some(&Tok::Sym('^')) {
            let pos = self.pos();
            self.k += 1;
            if let Some(Tok::Int(n)) = self.peek() {
                let n = n.to_u32().ok_or_else(|| Error::parse(pos, "exponent too large"))?;
                self.k += 1;
                lhs = Expr::Pow(Box::new(lhs), n);
            } else {
                lhs = Expr::Wedge(Box::new(lhs), Box::new(self.atom()?), pos);
            }
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let pos = self.pos();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.k += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.k += 1;
                Ok(Expr::Ident(s, pos))
            }
            Some(Tok::Exp(q)) => {
                self.k += 1;
                Ok(Expr::Exp(q))
            }
            Some(Tok::Sym('(')) => {
                self.k += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(Error::parse(pos, format!("unexpected token {:?}", t))),
            None => Err(Error::parse(pos, "unexpected end of input")),
        }
    }
}

/// Parses text into an expression tree; identifiers are left unresolved.
pub fn parse_expr(s: &str) -> Result<Expr, Error> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        k: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.k != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Polynomial meaning of an identifier: a generator or one of `i`, `s2`.
pub(crate) fn scalar_ident(name: &str) -> Option<DiffPoly> {
    match name {
        "i" => Some(DiffPoly::constant(Scalar::i())),
        "s2" => Some(DiffPoly::constant(Scalar::sqrt2())),
        _ => Generator::parse(name).map(DiffPoly::var),
    }
}

/// Reads a polynomial constant as an invertible scalar, for division.
pub(crate) fn as_scalar(p: &DiffPoly) -> Option<Scalar> {
    match p.len() {
        0 => Some(Scalar::zero()),
        1 => {
            let (m, c) = p.leading()?;
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

pub(crate) fn parse_poly_expr(e: &Expr) -> Result<DiffPoly, Error> {
    Ok(match e {
        Expr::Int(n) => DiffPoly::constant(Scalar::rational(BigRational::from_integer(n.clone()))),
        Expr::Ident(s, pos) => {
            scalar_ident(s).ok_or_else(|| Error::parse(*pos, format!("unknown identifier '{}'", s)))?
        }
        Expr::Exp(q) => DiffPoly::exp(*q),
        Expr::Add(a, b) => parse_poly_expr(a)? + parse_poly_expr(b)?,
        Expr::Sub(a, b) => parse_poly_expr(a)? - parse_poly_expr(b)?,
        Expr::Mul(a, b) => parse_poly_expr(a)? * parse_poly_expr(b)?,
        Expr::Div(a, b, pos) => {
            let d = as_scalar(&parse_poly_expr(b)?).and_then(|c| c.inv());
            let d = d.ok_or_else(|| Error::parse(*pos, "division by a non-constant or zero"))?;
            parse_poly_expr(a)?.scale(&d)
        }
        Expr::Neg(a) => -parse_poly_expr(a)?,
        Expr::Pow(a, n) => parse_poly_expr(a)?.pow(*n),
        Expr::Wedge(_, _, pos) => return Err(Error::parse(*pos, "wedge product in a polynomial")),
    })
}

pub fn parse_poly(s: &str) -> Result<DiffPoly, Error> {
    parse_poly_expr(&parse_expr(s)?)
}
