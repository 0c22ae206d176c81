//! Exact scalars in the field ℚ(i, √2).
//!
//! An element is stored as four rationals `(c1, ci, cs, cis)` standing for
//! `c1 + ci·i + cs·√2 + cis·i√2`. Every constant that shows up in the
//! recursions (√2, 1/√2, i√2, ...) lives here, so no floating point ever
//! enters the symbolic layer.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Basis element of ℚ(i, √2) over ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    One,
    I,
    Sqrt2,
    ISqrt2,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::Sqrt2, Unit::ISqrt2];

    fn index(self) -> usize {
        self as usize
    }

    /// Text used by the polynomial grammar (`i`, `s2`, `i*s2`).
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::One => "",
            Unit::I => "i",
            Unit::Sqrt2 => "s2",
            Unit::ISqrt2 => "i*s2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: [BigRational; 4],
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn from_parts(c1: BigRational, ci: BigRational, cs: BigRational, cis: BigRational) -> Self {
        Scalar { c: [c1, ci, cs, cis] }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::unit(Unit::One, q)
    }

    /// `q` times a basis unit.
    pub fn unit(u: Unit, q: BigRational) -> Self {
        let mut s = Self::zero();
        s.c[u.index()] = q;
        s
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn i() -> Self {
        Self::unit(Unit::I, BigRational::one())
    }

    pub fn sqrt2() -> Self {
        Self::unit(Unit::Sqrt2, BigRational::one())
    }

    /// √−2, fixed to mean i·√2.
    pub fn i_sqrt2() -> Self {
        Self::unit(Unit::ISqrt2, BigRational::one())
    }

    pub fn component(&self, u: Unit) -> &BigRational {
        &self.c[u.index()]
    }

    pub fn components(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// `Some((unit, q))` when exactly one component is nonzero.
    pub fn as_monomial(&self) -> Option<(Unit, &BigRational)> {
        let mut found = None;
        for u in Unit::ALL {
            let q = &self.c[u.index()];
            if !q.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((u, q));
            }
        }
        found
    }

    /// The rational value if the scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Complex conjugation `i ↦ −i`; √2 is real.
    pub fn conj(&self) -> Self {
        Scalar {
            c: [
                self.c[0].clone(),
                -self.c[1].clone(),
                self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Scalar {
            c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q],
        }
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Writing `x = p + q√2` with `p, q ∈ ℚ(i)`, the norm `p² − 2q²` lies in
    /// ℚ(i) and `x⁻¹ = (p − q√2)/(p² − 2q²)`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (a, b, c, d) = (&self.c[0], &self.c[1], &self.c[2], &self.c[3]);
        let two = BigRational::from_integer(BigInt::from(2));
        // n = p^2 - 2 q^2 = (a + bi)^2 - 2 (c + di)^2
        let nr = a * a - b * b - &two * (c * c - d * d);
        let ni = &two * a * b - &two * &two * c * d;
        let norm = &nr * &nr + &ni * &ni;
        // 1/n = (nr - ni i) / norm
        let inv_r = &nr / &norm;
        let inv_i = -(&ni / &norm);
        // (p - q s) * (inv_r + inv_i i)
        let p_re = a * &inv_r - b * &inv_i;
        let p_im = a * &inv_i + b * &inv_r;
        let q_re = -(c * &inv_r - d * &inv_i);
        let q_im = -(c * &inv_i + d * &inv_r);
        Some(Scalar {
            c: [p_re, p_im, q_re, q_im],
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        let s2 = std::f64::consts::SQRT_2;
        Complex64::new(f(&self.c[0]) + s2 * f(&self.c[2]), f(&self.c[1]) + s2 * f(&self.c[3]))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] + &o.c[0],
                &self.c[1] + &o.c[1],
                &self.c[2] + &o.c[2],
                &self.c[3] + &o.c[3],
            ],
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for k in 0..4 {
            if !o.c[k].is_zero() {
                self.c[k] += &o.c[k];
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for k in 0..4 {
            if !o.c[k].is_zero() {
                self.c[k] -= &o.c[k];
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // fast path: rational times anything
        if let Some(q) = self.as_rational() {
            return o.scale(q);
        }
        if let Some(q) = o.as_rational() {
            return self.scale(q);
        }
        let [a, b, c, d] = &self.c;
        let [e, f, g, h] = &o.c;
        let two = BigRational::from_integer(BigInt::from(2));
        // i^2 = -1, s^2 = 2, (is)^2 = -2, i*s = is, i*is = -s, s*is = 2i
        let one = a * e - b * f + &two * (c * g - d * h);
        let im = a * f + b * e + &two * (c * h + d * g);
        let sq = a * g + c * e - b * h - d * f;
        let isq = a * h + d * e + b * g + c * f;
        Scalar { c: [one, im, sq, isq] }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

/// Formats a rational the way the polynomial grammar reads it back: `28/3`, `-4`.
pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for u in Unit::ALL {
            let q = &self.c[u.index()];
            if q.is_zero() {
                continue;
            }
            let mag = q.abs();
            let sign = if q.is_negative() { "-" } else { "+" };
            if first {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match (u, mag.is_one()) {
                (Unit::One, _) => write!(f, "{}", fmt_rational(&mag))?,
                (_, true) => write!(f, "{}", u.symbol())?,
                (_, false) => write!(f, "{}*{}", fmt_rational(&mag), u.symbol())?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_identities() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::int(-1));
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::int(2));
        assert_eq!(&Scalar::i_sqrt2() * &Scalar::i_sqrt2(), Scalar::int(-2));
        assert_eq!(&Scalar::i() * &Scalar::sqrt2(), Scalar::i_sqrt2());
        assert_eq!(&Scalar::sqrt2() * &Scalar::i_sqrt2(), &Scalar::i() * &Scalar::int(2));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = Scalar::from_parts(
            BigRational::from_integer(3.into()),
            BigRational::new((-1).into(), 2.into()),
            BigRational::from_integer(2.into()),
            BigRational::new(5.into(), 7.into()),
        );
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(
            Scalar::sqrt2().inv().unwrap(),
            Scalar::unit(Unit::Sqrt2, BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn conj_and_display() {
        let x = &Scalar::int(2) + &Scalar::i_sqrt2();
        assert_eq!(x.conj(), &Scalar::int(2) - &Scalar::i_sqrt2());
        assert_eq!(x.to_string(), "2 + i*s2");
        assert_eq!(Scalar::frac(-28, 3).to_string(), "-28/3");
        let c = x.to_complex();
        assert!((c.re - 2.0).abs() < 1e-15 && (c.im - std::f64::consts::SQRT_2).abs() < 1e-15);
    }
}
