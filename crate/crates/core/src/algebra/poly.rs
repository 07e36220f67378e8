//! Dense univariate polynomials over the rationals in the formal variable `s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial is the empty vector and structural equality is equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The polynomial `s`.
    pub fn s() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `slope * s + offset`.
    pub fn linear(slope: Rational, offset: Rational) -> Self {
        Poly::from_coeffs(vec![offset, slope])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::invariant(format!(
                "inexact polynomial division ({self}) / ({divisor})"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y).expect("nonzero divisor");
            x = y;
            y = r.monic();
        }
        x
    }

    /// `p(slope * s + offset)`.
    pub fn compose_affine(&self, slope: &Rational, offset: &Rational) -> Poly {
        let inner = Poly::linear(slope.clone(), offset.clone());
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Multiplicity of `s0` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, s0: &Rational) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.split_root(s0).0)
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Splits `self = (s - s0)^k * rest` with `rest(s0) != 0`.
    pub fn split_root(&self, s0: &Rational) -> (usize, Poly) {
        let lin = Poly::linear(Rational::one(), -s0.clone());
        let mut rest = self.clone();
        let mut k = 0;
        if rest.is_zero() {
            return (0, rest);
        }
        while rest.eval(s0).is_zero() {
            rest = rest.exact_div(&lin).expect("root divides");
            k += 1;
        }
        (k, rest)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}s", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}s^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn ring_examples() {
        let s2m1 = Poly::from_ints(&[-1, 0, 1]);
        let sm1 = Poly::from_ints(&[-1, 1]);
        let sp1 = Poly::from_ints(&[1, 1]);
        assert_eq!(Poly::gcd(&s2m1, &sm1), sm1);
        assert_eq!(&sm1 * &sp1, s2m1);
        let (q, r) = Poly::from_ints(&[1, 0, 1]).divrem(&Poly::s()).unwrap();
        assert_eq!(q, Poly::s());
        assert_eq!(r, Poly::one());
    }

    #[test]
    fn divrem_by_zero_fails() {
        assert_eq!(Poly::s().divrem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        let a = Poly::from_ints(&[-6, 6]);
        let b = Poly::from_ints(&[-2, 0, 2]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[-1, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn compose_reflect() {
        // p(s) = s^2 + 1 at 3 - s is s^2 - 6s + 10
        let p = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.compose_affine(&int(-1), &int(3)), Poly::from_ints(&[10, -6, 1]));
    }

    #[test]
    fn multiplicity() {
        let p = &Poly::from_ints(&[-2, 1]).pow(3) * &Poly::from_ints(&[1, 1]);
        assert_eq!(p.root_multiplicity(&int(2)), Some(3));
        assert_eq!(p.root_multiplicity(&int(-1)), Some(1));
        assert_eq!(p.root_multiplicity(&rat(1, 2)), Some(0));
        assert_eq!(Poly::zero().root_multiplicity(&int(0)), None);
        let (k, rest) = p.split_root(&int(2));
        assert_eq!(k, 3);
        assert_eq!(rest, Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).to_string(), "s^2 - 1");
        assert_eq!(Poly::linear(rat(-1, 2), rat(3, 2)).to_string(), "-1/2*s + 3/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
