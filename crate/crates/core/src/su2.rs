//! SU(2) calculus on the polynomial model of `Gamma_m`.
//!
//! `xi_a^m` is the monomial `z^((m-a)/2)`, so the highest weight vector is the
//! constant 1. Rankin-Cohen brackets realize the projections
//! `Gamma_m (x) Gamma_n -> Gamma_{m+n-2k}`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::gamma::{binomial, factorial, falling_q, pochhammer_q};
use crate::algebra::{int, RatFunc, Rational};
use crate::error::{Error, Result};

/// `|a| <= m` and `a = m (mod 2)`.
pub fn weight_valid(m: i64, a: i64) -> bool {
    m >= 0 && a.abs() <= m && (m - a).rem_euclid(2) == 0
}

fn check_weight(m: i64, a: i64) -> Result<()> {
    if weight_valid(m, a) {
        Ok(())
    } else {
        Err(Error::precondition(format!("weight {a} is not a weight of Gamma_{m}")))
    }
}

fn check_bracket(m: i64, n: i64, k: i64) -> Result<()> {
    if m < 0 || n < 0 || k < 0 || k > m.min(n) {
        Err(Error::precondition(format!(
            "bracket order {k} out of range for Gamma_{m} (x) Gamma_{n}"
        )))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    H,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::H, Generator::E, Generator::F];

    /// Image of `xi_a^m` as (target weight, coefficient).
    fn act_on_weight(self, m: i64, a: i64) -> (i64, Rational) {
        match self {
            Generator::H => (a, int(a)),
            Generator::E => (a + 2, Rational::new((m - a).into(), 2.into())),
            Generator::F => (a - 2, Rational::new((m + a).into(), 2.into())),
        }
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, RatFunc>, key: K, value: RatFunc) {
    if value.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(RatFunc::zero);
    *entry = &*entry + &value;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, RatFunc>) {
    map.retain(|_, v| !v.is_zero());
}

/// An element of `Gamma_m` in the weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepElement {
    m: i64,
    coeffs: BTreeMap<i64, RatFunc>,
}

impl RepElement {
    pub fn zero(m: i64) -> Self {
        RepElement {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(m: i64, a: i64) -> Result<Self> {
        check_weight(m, a)?;
        let mut v = RepElement::zero(m);
        v.coeffs.insert(a, RatFunc::one());
        Ok(v)
    }

    pub fn from_coeffs(m: i64, coeffs: impl IntoIterator<Item = (i64, RatFunc)>) -> Result<Self> {
        let mut v = RepElement::zero(m);
        for (a, c) in coeffs {
            check_weight(m, a)?;
            add_into(&mut v.coeffs, a, c);
        }
        Ok(v)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn coeff(&self, a: i64) -> RatFunc {
        self.coeffs.get(&a).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, RatFunc> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &RepElement) -> RepElement {
        assert_eq!(self.m, other.m, "adding elements of different representations");
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            add_into(&mut out.coeffs, *a, c.clone());
        }
        prune(&mut out.coeffs);
        out
    }

    pub fn scale(&self, c: &RatFunc) -> RepElement {
        let mut out = RepElement::zero(self.m);
        for (a, v) in &self.coeffs {
            add_into(&mut out.coeffs, *a, v * c);
        }
        out
    }
}

/// Action of `H`, `E`, `F` on `Gamma_m`. At the boundary the coefficient
/// vanishes by itself, so no weight ever leaves the valid range.
pub fn sl2_act(gen: Generator, v: &RepElement) -> RepElement {
    let mut out = RepElement::zero(v.m);
    for (&a, c) in &v.coeffs {
        let (b, k) = gen.act_on_weight(v.m, a);
        if k.is_zero() {
            continue;
        }
        debug_assert!(weight_valid(v.m, b));
        add_into(&mut out.coeffs, b, c.scale(&k));
    }
    prune(&mut out.coeffs);
    out
}

/// `||z^k||_m^2 = binom(m, k)^-1`.
pub fn norm_sq(m: i64, k: i64) -> Result<Rational> {
    if m < 0 || k < 0 || k > m {
        return Err(Error::precondition(format!("monomial degree {k} out of range for Gamma_{m}")));
    }
    Ok(binomial(m, k).recip())
}

/// An element of `Gamma_m (x) Gamma_n`, keyed by the weight pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorElement {
    m: i64,
    n: i64,
    coeffs: BTreeMap<(i64, i64), RatFunc>,
}

impl TensorElement {
    pub fn zero(m: i64, n: i64) -> Self {
        TensorElement {
            m,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(m: i64, n: i64, a: i64, b: i64) -> Result<Self> {
        check_weight(m, a)?;
        check_weight(n, b)?;
        let mut t = TensorElement::zero(m, n);
        t.coeffs.insert((a, b), RatFunc::one());
        Ok(t)
    }

    pub fn from_coeffs(
        m: i64,
        n: i64,
        coeffs: impl IntoIterator<Item = ((i64, i64), RatFunc)>,
    ) -> Result<Self> {
        let mut t = TensorElement::zero(m, n);
        for ((a, b), c) in coeffs {
            check_weight(m, a)?;
            check_weight(n, b)?;
            add_into(&mut t.coeffs, (a, b), c);
        }
        Ok(t)
    }

    pub fn factors(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn coeff(&self, a: i64, b: i64) -> RatFunc {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<(i64, i64), RatFunc> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Diagonal action `X (x) 1 + 1 (x) X`.
pub fn tensor_act(gen: Generator, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.m, t.n);
    for (&(a, b), c) in &t.coeffs {
        let (a2, k1) = gen.act_on_weight(t.m, a);
        if !k1.is_zero() {
            add_into(&mut out.coeffs, (a2, b), c.scale(&k1));
        }
        let (b2, k2) = gen.act_on_weight(t.n, b);
        if !k2.is_zero() {
            add_into(&mut out.coeffs, (a, b2), c.scale(&k2));
        }
    }
    prune(&mut out.coeffs);
    out
}

/// Coefficient `c` with `RC_k(xi_a^m (x) xi_b^n) = c xi_{a+b}^{m+n-2k}`.
///
/// The bracket is `sum_j (-1)^j binom(k,j) / ((-m)_j (-n)_{k-j}) d_z^j f d_w^{k-j} g`
/// restricted to `z = w`. On monomials `z^p`, `w^q` the derivatives contribute
/// the falling factorials `(p)^-_j (q)^-_{k-j}`.
pub fn rc_coefficient(m: i64, n: i64, k: i64, a: i64, b: i64) -> Rational {
    let p = int((m - a) / 2);
    let q = int((n - b) / 2);
    let mut c = Rational::zero();
    for j in 0..=k {
        let term = binomial(k, j)
            * falling_q(&p, j as usize)
            * falling_q(&q, (k - j) as usize)
            / (pochhammer_q(&int(-m), j as usize) * pochhammer_q(&int(-n), (k - j) as usize));
        if j % 2 == 0 {
            c += term;
        } else {
            c -= term;
        }
    }
    c
}

/// `RC_k` applied to a tensor, extended linearly.
pub fn rc_bracket(m: i64, n: i64, k: i64, t: &TensorElement) -> Result<RepElement> {
    check_bracket(m, n, k)?;
    if (t.m, t.n) != (m, n) {
        return Err(Error::precondition(format!(
            "tensor lives in Gamma_{} (x) Gamma_{}, not Gamma_{m} (x) Gamma_{n}",
            t.m, t.n
        )));
    }
    let target = m + n - 2 * k;
    let mut out = RepElement::zero(target);
    for (&(a, b), v) in &t.coeffs {
        let c = rc_coefficient(m, n, k, a, b);
        if c.is_zero() {
            continue;
        }
        if !weight_valid(target, a + b) {
            return Err(Error::invariant(format!(
                "bracket RC_{k} sends weight ({a},{b}) outside Gamma_{target} with coefficient {c}"
            )));
        }
        add_into(&mut out.coeffs, a + b, v.scale(&c));
    }
    prune(&mut out.coeffs);
    Ok(out)
}

/// `RC_k^* 1 = (z - w)^k`: coefficient `(-1)^(k-j) binom(k, j)` on `z^j w^(k-j)`.
pub fn rc_adjoint_on_constant(m: i64, n: i64, k: i64) -> Result<TensorElement> {
    check_bracket(m, n, k)?;
    let mut t = TensorElement::zero(m, n);
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
        let c = binomial(k, j) * int(sign);
        add_into(&mut t.coeffs, (m - 2 * j, n - 2 * (k - j)), RatFunc::constant(c));
    }
    Ok(t)
}

/// Square norm of `(z - w)^k` by direct expansion in the monomial basis.
pub fn norm_sq_direct(m: i64, n: i64, k: i64) -> Result<Rational> {
    check_bracket(m, n, k)?;
    let mut acc = Rational::zero();
    for j in 0..=k {
        let b = binomial(k, j);
        acc += &b * &b * norm_sq(m, j)? * norm_sq(n, k - j)?;
    }
    Ok(acc)
}

/// Scalar by which `RC_k RC_k^*` acts on the constant 1.
pub fn rc_rc_adjoint_scalar(m: i64, n: i64, k: i64) -> Result<Rational> {
    let t = rc_adjoint_on_constant(m, n, k)?;
    let img = rc_bracket(m, n, k, &t)?;
    let top = m + n - 2 * k;
    if img.coeffs.keys().any(|&a| a != top) {
        return Err(Error::invariant("RC_k RC_k^* 1 is not a multiple of 1"));
    }
    img.coeff(top)
        .as_constant()
        .ok_or_else(|| Error::invariant("RC_k RC_k^* 1 depends on s"))
}

/// `k! (m+n-k+1)^-_k / ((m)^-_k (n)^-_k)`, the Gauss-sum evaluation.
pub fn gauss_norm_formula(m: i64, n: i64, k: i64) -> Rational {
    norm_formula_with_top(m, n, k, m + n - k + 1)
}

/// The same shape with the falling factorial started at `m + n - 2k + 2`.
pub fn shifted_norm_formula(m: i64, n: i64, k: i64) -> Rational {
    norm_formula_with_top(m, n, k, m + n - 2 * k + 2)
}

fn norm_formula_with_top(m: i64, n: i64, k: i64, top: i64) -> Rational {
    let k_us = k as usize;
    factorial(k as u64) * falling_q(&int(top), k_us)
        / (falling_q(&int(m), k_us) * falling_q(&int(n), k_us))
}

/// Components of `t` in each summand `Gamma_{m+n-2k}`.
pub fn tensor_decompose(m: i64, n: i64, t: &TensorElement) -> Result<BTreeMap<i64, RepElement>> {
    (0..=m.min(n))
        .map(|k| Ok((k, rc_bracket(m, n, k, t)?)))
        .collect()
}

/// `sum_k (m+n-2k+1) == (m+1)(n+1)`.
pub fn decomposition_is_complete(m: i64, n: i64) -> bool {
    (0..=m.min(n)).map(|k| m + n - 2 * k + 1).sum::<i64>() == (m + 1) * (n + 1)
}

/// Rank of the full bracket map on `Gamma_m (x) Gamma_n` as a linear map into
/// the direct sum; equals `(m+1)(n+1)` exactly when the brackets are jointly
/// injective.
pub fn decomposition_rank(m: i64, n: i64) -> Result<usize> {
    use crate::algebra::RFMatrix;
    let mut row_index = BTreeMap::new();
    for k in 0..=m.min(n) {
        let top = m + n - 2 * k;
        for c in (-top..=top).step_by(2) {
            let len = row_index.len();
            row_index.insert((k, c), len);
        }
    }
    let mut cols = Vec::new();
    for a in (-m..=m).step_by(2) {
        for b in (-n..=n).step_by(2) {
            let t = TensorElement::basis(m, n, a, b)?;
            let mut col = vec![RatFunc::zero(); row_index.len()];
            for (k, v) in tensor_decompose(m, n, &t)? {
                for (c, x) in v.coeffs() {
                    col[row_index[&(k, *c)]] = x.clone();
                }
            }
            cols.push(col);
        }
    }
    Ok(RFMatrix::from_columns(&cols, row_index.len()).rank())
}

impl Default for RepElement {
    fn default() -> Self {
        RepElement::zero(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn sl2_examples() {
        let top = RepElement::basis(4, 4).unwrap();
        assert!(sl2_act(Generator::E, &top).is_zero());
        let v = RepElement::basis(3, 1).unwrap();
        assert_eq!(sl2_act(Generator::H, &v), v);
        let w = RepElement::basis(1, 1).unwrap();
        assert_eq!(sl2_act(Generator::F, &w), RepElement::basis(1, -1).unwrap());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_sq(2, 1).unwrap(), rat(1, 2));
        assert_eq!(norm_sq(5, 0).unwrap(), int(1));
        assert_eq!(norm_sq(4, 2).unwrap(), rat(1, 6));
        assert!(norm_sq(2, 3).is_err());
    }

    #[test]
    fn bracket_examples() {
        let t = TensorElement::basis(3, 1, 3, 1).unwrap();
        assert_eq!(rc_bracket(3, 1, 0, &t).unwrap(), RepElement::basis(4, 4).unwrap());
        let t = TensorElement::basis(1, 1, 1, 1).unwrap();
        assert!(rc_bracket(1, 1, 1, &t).unwrap().is_zero());
        assert_eq!(rc_rc_adjoint_scalar(1, 1, 1).unwrap(), int(2));
        assert!(rc_bracket(1, 1, 2, &t).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let t0 = rc_adjoint_on_constant(2, 2, 0).unwrap();
        assert_eq!(t0, TensorElement::basis(2, 2, 2, 2).unwrap());
        let t1 = rc_adjoint_on_constant(1, 1, 1).unwrap();
        // z (x) 1 has weights (-1, 1); 1 (x) w has (1, -1)
        assert_eq!(t1.coeff(-1, 1), RatFunc::one());
        assert_eq!(t1.coeff(1, -1), RatFunc::int(-1));
        let t2 = rc_adjoint_on_constant(2, 2, 2).unwrap();
        assert_eq!(t2.coeff(-2, 2), RatFunc::one());
        assert_eq!(t2.coeff(0, 0), RatFunc::int(-2));
        assert_eq!(t2.coeff(2, -2), RatFunc::one());
    }

    #[test]
    fn direct_norms() {
        assert_eq!(norm_sq_direct(1, 1, 1).unwrap(), int(2));
        assert_eq!(norm_sq_direct(2, 2, 2).unwrap(), int(3));
        assert_eq!(norm_sq_direct(2, 2, 1).unwrap(), int(1));
    }

    #[test]
    fn decompose_examples() {
        let t = TensorElement::basis(2, 3, 2, 3).unwrap();
        let parts = tensor_decompose(2, 3, &t).unwrap();
        assert!(!parts[&0].is_zero());
        assert!(parts.iter().filter(|(k, _)| **k > 0).all(|(_, v)| v.is_zero()));
        let t = TensorElement::basis(1, 1, 1, -1).unwrap();
        let parts = tensor_decompose(1, 1, &t).unwrap();
        assert!(!parts[&0].is_zero() && !parts[&1].is_zero());
        let parts = tensor_decompose(2, 2, &TensorElement::zero(2, 2)).unwrap();
        assert!(parts.values().all(RepElement::is_zero));
        assert!(decomposition_is_complete(3, 5));
        assert_eq!(decomposition_rank(2, 3).unwrap(), 12);
    }
}
