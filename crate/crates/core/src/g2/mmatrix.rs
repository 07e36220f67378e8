//! Closed-form coefficients of `(RC_l ⊗ RC_l') R_s^±` on the ζ basis.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{KType, ZetaVector};
use crate::algebra::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The pair of bracket degrees `(l, l')`, with `l` acting on `Γ_3 ⊗ Γ_n` and
/// `l'` on `Γ_1 ⊗ Γ_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub l: i64,
    pub lp: i64,
}

impl Edge {
    pub const ALL: [Edge; 8] = [
        Edge { l: 0, lp: 0 },
        Edge { l: 0, lp: 1 },
        Edge { l: 1, lp: 0 },
        Edge { l: 1, lp: 1 },
        Edge { l: 2, lp: 0 },
        Edge { l: 2, lp: 1 },
        Edge { l: 3, lp: 0 },
        Edge { l: 3, lp: 1 },
    ];

    /// Brackets exist only for `l <= min(3, n)` and `l' <= min(1, m)`.
    pub fn valid_for(&self, kt: KType) -> bool {
        (0..=3.min(kt.n)).contains(&self.l) && (0..=1.min(kt.m)).contains(&self.lp)
    }

    pub fn target(&self, kt: KType) -> KType {
        KType {
            n: kt.n + 3 - 2 * self.l,
            m: kt.m + 1 - 2 * self.lp,
        }
    }

    /// The edge joining `src` to `tgt`, if any.
    pub fn between(src: KType, tgt: KType) -> Result<Edge> {
        let dl = src.n + 3 - tgt.n;
        let dlp = src.m + 1 - tgt.m;
        if dl.rem_euclid(2) != 0 || dlp.rem_euclid(2) != 0 {
            return Err(Error::precondition(format!("{tgt} is not adjacent to {src}")));
        }
        let e = Edge { l: dl / 2, lp: dlp / 2 };
        if !e.valid_for(src) {
            return Err(Error::precondition(format!("{tgt} is not adjacent to {src}")));
        }
        Ok(e)
    }
}

fn c(x: i64) -> RatFunc {
    RatFunc::int(x)
}

/// `x s + y`.
fn lin(x: i64, y: i64) -> RatFunc {
    RatFunc::linear(crate::algebra::int(x), crate::algebra::int(y))
}

fn q(num: i64, den: i64) -> RatFunc {
    RatFunc::constant(crate::algebra::rat(num, den))
}

/// `M^+_{l,l'}` at source weight `a`.
fn m_plus(l: i64, lp: i64, n: i64, m: i64, a: i64) -> RatFunc {
    match (l, lp) {
        (0, 0) => lin(2, -2 * a + m + n) * q(1, 2),
        (0, 1) => c(a - m) * lin(2, -2 * a - m - 2 + n) * q(1, 4 * m),
        (1, 0) => c(3 * a - n) * lin(6, -6 * a - 6 + 3 * m + n) * q(1, 12 * n),
        (1, 1) => c((a - m) * (3 * a - n)) * lin(6, -6 * a - 12 + n - 3 * m) * q(1, 24 * m * n),
        (2, 0) => {
            c((3 * a - n) * (n - 3 * a - 2)) * lin(-6, 6 * a - 3 * m + n + 8) * q(1, 24 * (n - 1) * n)
        }
        (2, 1) => {
            c((a - m) * (n - 3 * a) * (n - 3 * a - 2))
                * lin(6, -6 * a - 14 - 3 * m - n)
                * q(1, 48 * m * (n - 1) * n)
        }
        (3, 0) => {
            c((n - 3 * a) * (n - 3 * a - 2) * (n - 3 * a - 4))
                * lin(-2, 2 * a - m + n + 2)
                * q(1, 16 * (n - 2) * (n - 1) * n)
        }
        (3, 1) => {
            c((a - m) * (3 * a - n) * (n - 3 * a - 2) * (n - 3 * a - 4))
                * lin(2, -2 * a - 4 - m - n)
                * q(1, 32 * m * (n - 2) * (n - 1) * n)
        }
        _ => unreachable!("edge validated by caller"),
    }
}

/// `M^-_{l,l'}` at source weight `a`, entry by entry as printed.
fn m_minus(l: i64, lp: i64, n: i64, m: i64, a: i64) -> RatFunc {
    match (l, lp) {
        (0, 0) => -(lin(2, 2 * a + m + n) * q(1, 2)),
        (0, 1) => c(-a - m) * lin(2, 2 * a - m - 2 + n) * q(1, 4 * m),
        (1, 0) => c(-3 * a - n) * lin(6, 6 * a - 6 + 3 * m + n) * q(1, 12 * n),
        (1, 1) => c((a + m) * (-3 * a - n)) * lin(6, 6 * a - 12 + n - 3 * m) * q(1, 24 * m * n),
        (2, 0) => {
            c((3 * a + n) * (n + 3 * a - 2)) * lin(-6, -6 * a - 3 * m + n + 8) * q(1, 24 * (n - 1) * n)
        }
        (2, 1) => {
            c((-a - m) * (n + 3 * a) * (n + 3 * a - 2))
                * lin(6, 6 * a - 14 - 3 * m - n)
                * q(1, 48 * m * (n - 1) * n)
        }
        (3, 0) => {
            c((n + 3 * a) * (n + 3 * a - 2) * (n + 3 * a - 4))
                * lin(-2, -2 * a - m + n + 2)
                * q(1, 16 * (n - 2) * (n - 1) * n)
        }
        (3, 1) => {
            c((a + m) * (-3 * a - n) * (n + 3 * a - 2) * (n + 3 * a - 4))
                * lin(2, 2 * a - 4 - m - n)
                * q(1, 32 * m * (n - 2) * (n - 1) * n)
        }
        _ => unreachable!("edge validated by caller"),
    }
}

/// `M^±_{l,l'}` for the K-type `kt` at ζ weight `a`.
pub fn m_entry(sign: Sign, edge: Edge, kt: KType, a: i64) -> Result<RatFunc> {
    if !edge.valid_for(kt) {
        return Err(Error::precondition(format!(
            "no bracket pair (l, l') = ({}, {}) out of {kt}",
            edge.l, edge.lp
        )));
    }
    if !kt.weight_valid(a) {
        return Err(Error::precondition(format!("{a} is not a ζ weight of {kt}")));
    }
    Ok(match sign {
        Sign::Plus => m_plus(edge.l, edge.lp, kt.n, kt.m, a),
        Sign::Minus => m_minus(edge.l, edge.lp, kt.n, kt.m, a),
    })
}

/// Both `M^+` and `M^-` for every valid edge, as functions of the weight `a`.
pub fn m_matrices(kt: KType, a: i64) -> Result<BTreeMap<Edge, (RatFunc, RatFunc)>> {
    Edge::ALL
        .iter()
        .filter(|e| e.valid_for(kt))
        .map(|&e| Ok((e, (m_entry(Sign::Plus, e, kt, a)?, m_entry(Sign::Minus, e, kt, a)?))))
        .collect()
}

/// `(RC_l ⊗ RC_l') R_s` applied to a vector of `kt`, landing in `edge.target(kt)`.
pub fn rs_apply(edge: Edge, v: &ZetaVector) -> Result<ZetaVector> {
    let kt = v.ktype();
    let tgt = edge.target(kt);
    let mut out = ZetaVector::zero(tgt);
    for (&a, coef) in v.coeffs() {
        let plus = m_entry(Sign::Plus, edge, kt, a)?;
        let minus = m_entry(Sign::Minus, edge, kt, a)?;
        out.add_term(a + 1, coef * &plus)?;
        out.add_term(a - 1, coef * &minus)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_is_plus_reflected_in_the_weight() {
        for kt in KType::up_to(16) {
            for a in kt.zeta_weights() {
                for e in Edge::ALL.iter().filter(|e| e.valid_for(kt)) {
                    let p = m_plus(e.l, e.lp, kt.n, kt.m, -a);
                    let mi = m_entry(Sign::Minus, *e, kt, a).unwrap();
                    let sign = if (e.l + e.lp) % 2 == 0 { -1 } else { 1 };
                    assert_eq!(mi, p.scale(&crate::algebra::int(sign)), "{kt} a={a} {e:?}");
                }
            }
        }
    }

    #[test]
    fn edges() {
        let kt = KType::new(0, 0).unwrap();
        let valid: Vec<_> = Edge::ALL.iter().filter(|e| e.valid_for(kt)).collect();
        assert_eq!(valid, vec![&Edge { l: 0, lp: 0 }]);
        assert_eq!(
            Edge::between(KType::new(3, 3).unwrap(), KType::new(6, 2).unwrap()).unwrap(),
            Edge { l: 0, lp: 1 }
        );
        assert!(Edge::between(kt, KType::new(2, 0).unwrap()).is_err());
    }

    #[test]
    fn trivial_ktype_goes_to_zeta_plus_and_minus() {
        let kt = KType::new(0, 0).unwrap();
        let v = ZetaVector::basis(kt, 0).unwrap();
        let out = rs_apply(Edge { l: 0, lp: 0 }, &v).unwrap();
        assert_eq!(out.coeff(1), RatFunc::s());
        assert_eq!(out.coeff(-1), -RatFunc::s());
    }
}
