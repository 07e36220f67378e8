//! The rational function field Q(s).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// A reduced fraction `num / den` with `den` monic and `gcd(num, den) = 1`.
///
/// Zero is `0 / 1`. Because the form is canonical, derived equality and hashing
/// agree with equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn int(c: i64) -> Self {
        RatFunc::constant(int(c))
    }

    /// The formal variable `s`.
    pub fn s() -> Self {
        RatFunc::from_poly(Poly::s())
    }

    /// `3 - s`, the reflected parameter.
    pub fn reflected_s() -> Self {
        RatFunc::from_poly(Poly::from_ints(&[3, -1]))
    }

    pub fn linear(slope: Rational, offset: Rational) -> Self {
        RatFunc::from_poly(Poly::linear(slope, offset))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        Ok(Self::normalize_unit(num, den))
    }

    /// Scales a coprime pair so the denominator is monic.
    fn normalize_unit(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == Poly::one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `s0`; a vanishing denominator is an error, never infinity.
    pub fn eval(&self, s0: &Rational) -> Result<Rational> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format_rational(s0)));
        }
        Ok(self.num.eval(s0) / d)
    }

    /// Order of vanishing at `s0` (negative at poles); `None` for the zero
    /// function, whose order is +infinity.
    pub fn valuation(&self, s0: &Rational) -> Option<i64> {
        let zeros = self.num.root_multiplicity(s0)? as i64;
        let poles = self.den.root_multiplicity(s0).unwrap_or(0) as i64;
        Some(zeros - poles)
    }

    /// Like [`RatFunc::valuation`] but reports the zero function as an error.
    pub fn checked_valuation(&self, s0: &Rational) -> Result<i64> {
        self.valuation(s0).ok_or(Error::ZeroFunction)
    }

    /// `f(slope * s + offset)`.
    pub fn compose_affine(&self, slope: &Rational, offset: &Rational) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        // Affine substitution preserves coprimality; only the leading
        // coefficient needs fixing.
        Self::normalize_unit(
            self.num.compose_affine(slope, offset),
            self.den.compose_affine(slope, offset),
        )
    }

    /// `f(3 - s)`.
    pub fn reflect(&self) -> RatFunc {
        self.compose_affine(&int(-1), &int(3))
    }

    /// `f(s + shift)`.
    pub fn shift(&self, shift: &Rational) -> RatFunc {
        self.compose_affine(&Rational::one(), shift)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        // a/b + c/d with g = gcd(b, d): any common factor of the new numerator
        // and denominator divides g.
        let g = Poly::gcd(&self.den, &rhs.den);
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &self.den * &d1;
        let h = Poly::gcd(&num, &g);
        if h.is_constant() {
            RatFunc::normalize_unit(num, den)
        } else {
            RatFunc::normalize_unit(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let cancel = |p: &Poly, g: &Poly| {
            if g.is_constant() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RatFunc::normalize_unit(num, den)
    }
}

/// Panics on division by the zero function, like integer division.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// Wire form: `{"num": ["p/q", ...], "den": ["p/q", ...]}`, ascending degree.
#[derive(Serialize, Deserialize)]
struct RatFuncWire {
    num: Vec<String>,
    den: Vec<String>,
}

impl RatFunc {
    fn to_wire(&self) -> RatFuncWire {
        let coeffs = |p: &Poly| p.coeffs().iter().map(format_rational).collect();
        RatFuncWire {
            num: coeffs(&self.num),
            den: coeffs(&self.den),
        }
    }

    /// Parses the wire form, re-canonicalizing whatever it is given.
    pub fn from_json_value(value: &serde_json::Value) -> Result<RatFunc> {
        let wire: RatFuncWire =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_wire(wire)
    }

    fn from_wire(wire: RatFuncWire) -> Result<RatFunc> {
        let parse = |v: &[String]| -> Result<Poly> {
            Ok(Poly::from_coeffs(
                v.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?,
            ))
        };
        RatFunc::new(parse(&wire.num)?, parse(&wire.den)?)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = RatFuncWire::deserialize(deserializer)?;
        RatFunc::from_wire(wire).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn lin(a: i64, b: i64) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(&[b, a]))
    }

    #[test]
    fn canonical_reduction() {
        let f = RatFunc::new(Poly::from_ints(&[-4, 0, 4]), Poly::from_ints(&[-2, 2])).unwrap();
        // 4(s^2-1) / 2(s-1) = 2(s+1)
        assert_eq!(f, lin(2, 2));
        assert!(f.den().leading().unwrap().is_one());
        assert_eq!(RatFunc::new(Poly::s(), Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        let f = &RatFunc::reflected_s() / &RatFunc::s();
        assert_eq!(f.eval(&rat(3, 2)).unwrap(), int(1));
        let g = lin(1, -2).inv().unwrap();
        assert!(matches!(g.eval(&int(2)), Err(Error::PoleAtPoint(_))));
        let h = &lin(1, 1) / &lin(1, -1);
        assert_eq!(h.eval(&int(3)).unwrap(), int(2));
    }

    #[test]
    fn valuation_examples() {
        let sm2 = lin(1, -2);
        let f = &(&sm2 * &sm2) / &lin(1, 1);
        assert_eq!(f.valuation(&int(2)), Some(2));
        assert_eq!(sm2.inv().unwrap().valuation(&int(2)), Some(-1));
        let one = &sm2 / &sm2;
        assert!(one.is_one());
        assert_eq!(one.valuation(&int(2)), Some(0));
        assert_eq!(RatFunc::zero().valuation(&int(2)), None);
        assert_eq!(RatFunc::zero().checked_valuation(&int(2)), Err(Error::ZeroFunction));
    }

    #[test]
    fn reflect_is_involution() {
        let f = &lin(3, -1) / &(&lin(1, 1) * &lin(2, 5));
        assert_eq!(f.reflect().reflect(), f);
        assert_eq!(RatFunc::s().reflect(), RatFunc::reflected_s());
    }

    #[test]
    fn json_schema() {
        let f = &lin(1, 1) / &lin(2, -1);
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"num": ["1/2", "1/2"], "den": ["-1/2", "1/1"]})
        );
        let back: RatFunc = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
        // non-canonical input is reduced on the way in
        let raw = serde_json::json!({"num": ["-2/1", "2/1"], "den": ["-1/1", "0/1", "1/1"]});
        assert_eq!(RatFunc::from_json_value(&raw).unwrap(), lin(1, 1).inv().unwrap().scale(&int(2)));
    }

    #[test]
    fn display() {
        let f = &lin(1, -1) / &lin(3, 1);
        assert_eq!(f.to_string(), "(1/3*s - 1/3)/(s + 1/3)");
        assert_eq!(RatFunc::int(-2).to_string(), "-2");
    }
}
