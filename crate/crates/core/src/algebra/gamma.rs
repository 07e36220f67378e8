//! Rising and falling factorials, integer binomials and ratios of Gamma
//! functions whose arguments differ by integers.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// `(base)_len = base (base + 1) ... (base + len - 1)`.
pub fn pochhammer(base: &Poly, len: usize) -> Poly {
    let mut acc = Poly::one();
    for i in 0..len {
        acc = &acc * &(base + &Poly::constant(int(i as i64)));
    }
    acc
}

/// `(base)^-_len = base (base - 1) ... (base - len + 1)`.
pub fn falling(base: &Poly, len: usize) -> Poly {
    let mut acc = Poly::one();
    for i in 0..len {
        acc = &acc * &(base - &Poly::constant(int(i as i64)));
    }
    acc
}

pub fn pochhammer_q(base: &Rational, len: usize) -> Rational {
    (0..len).fold(Rational::one(), |acc, i| acc * (base + int(i as i64)))
}

pub fn falling_q(base: &Rational, len: usize) -> Rational {
    (0..len).fold(Rational::one(), |acc, i| acc * (base - int(i as i64)))
}

/// Pochhammer symbol of an affine argument `slope * s + offset`, as a rational
/// function. Convenience for the closed eigenvalue formulas.
pub fn poch_affine(slope: Rational, offset: Rational, len: usize) -> RatFunc {
    RatFunc::from_poly(pochhammer(&Poly::linear(slope, offset), len))
}

pub fn factorial(k: u64) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// Integer binomial with the Gamma-function convention: zero when `y < 0` or
/// `y > x >= 0`.
pub fn binomial(x: i64, y: i64) -> Rational {
    if y < 0 || (x >= 0 && y > x) {
        return Rational::zero();
    }
    falling_q(&int(x), y as usize) / factorial(y as u64)
}

/// `prod_i Gamma(base + num_i) / Gamma(base + den_i)`.
///
/// Each numerator offset is paired with an unused denominator offset at an
/// integer distance, and each pair collapses to a Pochhammer factor. Offsets
/// that cannot be paired do not give a rational function and are rejected.
pub fn gamma_ratio(base: &Poly, num: &[Rational], den: &[Rational]) -> Result<RatFunc> {
    if num.len() != den.len() {
        return Err(Error::UnpairableOffsets(format!(
            "{} numerator offsets vs {} denominator offsets",
            num.len(),
            den.len()
        )));
    }
    let mut used = vec![false; den.len()];
    let mut top = Poly::one();
    let mut bottom = Poly::one();
    for p in num {
        let slot = (0..den.len())
            .find(|&i| !used[i] && (p - &den[i]).is_integer())
            .ok_or_else(|| {
                Error::UnpairableOffsets(format!(
                    "offset {} has no partner at an integer distance",
                    format_rational(p)
                ))
            })?;
        used[slot] = true;
        let q = &den[slot];
        let diff = (p - q).to_integer().to_i64().expect("small offset difference");
        let len = diff.unsigned_abs() as usize;
        if diff >= 0 {
            // Gamma(b+p)/Gamma(b+q) = (b+q)_{p-q}
            top = &top * &pochhammer(&(base + &Poly::constant(q.clone())), len);
        } else {
            bottom = &bottom * &pochhammer(&(base + &Poly::constant(p.clone())), len);
        }
    }
    RatFunc::new(top, bottom)
}

/// Integer-offset form of [`gamma_ratio`].
pub fn gamma_ratio_int(base: &Poly, num: &[i64], den: &[i64]) -> Result<RatFunc> {
    let lift = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
    gamma_ratio(base, &lift(num), &lift(den))
}

/// `true` when `x` is a nonnegative integer.
pub fn is_nonneg_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn pochhammer_examples() {
        let half_s = Poly::linear(rat(1, 2), int(0));
        assert_eq!(pochhammer(&half_s, 0), Poly::one());
        assert_eq!(pochhammer(&Poly::s(), 2), Poly::from_ints(&[0, 1, 1]));
        let refl = Poly::linear(rat(-1, 2), rat(3, 2));
        assert_eq!(pochhammer(&refl, 1), refl);
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling_q(&int(2), 1), int(2));
        assert_eq!(falling_q(&int(3), 2), int(6));
        // (m+n-k+1)^-_k at m = n = k = 1
        assert_eq!(falling_q(&int(2), 1), int(2));
        assert_eq!(falling(&Poly::s(), 2), Poly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, -1), int(0));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(binomial(0, 0), int(1));
        // negative upper argument keeps the polynomial value
        assert_eq!(binomial(-2, 2), int(3));
    }

    #[test]
    fn gamma_ratio_examples() {
        let x = Poly::s();
        let r = gamma_ratio_int(&x, &[2], &[0]).unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::from_ints(&[0, 1, 1])));
        let r = gamma_ratio_int(&x, &[0], &[1]).unwrap();
        assert_eq!(r, RatFunc::s().inv().unwrap());
        let b = Poly::linear(rat(1, 2), rat(3, 2));
        assert!(gamma_ratio_int(&b, &[0, 1], &[1, 0]).unwrap().is_one());
    }

    #[test]
    fn gamma_ratio_rejects_unpairable() {
        let x = Poly::s();
        assert!(matches!(
            gamma_ratio_int(&x, &[1, 2], &[0]),
            Err(Error::UnpairableOffsets(_))
        ));
        assert!(matches!(
            gamma_ratio(&x, &[rat(1, 2)], &[int(0)]),
            Err(Error::UnpairableOffsets(_))
        ));
        assert_eq!(
            gamma_ratio(&x, &[rat(5, 2)], &[rat(1, 2)]).unwrap(),
            RatFunc::from_poly(pochhammer(&Poly::linear(int(1), rat(1, 2)), 2))
        );
    }
}
