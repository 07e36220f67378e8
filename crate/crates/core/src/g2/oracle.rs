//! Direct evaluation of `(RC_l ⊗ RC_l') R_s^±` from the `p_C`-valued formula and
//! the bracket coefficients, used to cross-check the closed forms in
//! [`super::mmatrix`].

use super::mmatrix::{Edge, Sign};
use super::{KType, ZetaVector};
use crate::algebra::RatFunc;
use crate::error::{Error, Result};
use crate::su2::{rc_bracket, TensorElement};

/// One term `coef · (ξ^3_α ⊠ ξ^1_β) ⊗ (ξ^n_x ⊠ ξ^m_y)`.
struct Term {
    coef: RatFunc,
    alpha: i64,
    beta: i64,
    x: i64,
    y: i64,
}

fn r_terms(sign: Sign, kt: KType, a: i64) -> Vec<Term> {
    let (n, m) = (kt.n, kt.m);
    let s = RatFunc::s();
    let half = |v: i64| RatFunc::constant(crate::algebra::rat(v, 2));
    match sign {
        Sign::Plus => vec![
            Term { coef: &s + &RatFunc::int(a), alpha: 3, beta: 1, x: 3 * a, y: a },
            Term { coef: half(n - 3 * a), alpha: 1, beta: 1, x: 3 * a + 2, y: a },
            Term { coef: half(m - a), alpha: 3, beta: -1, x: 3 * a, y: a + 2 },
        ],
        Sign::Minus => vec![
            Term { coef: RatFunc::int(a) - s, alpha: -3, beta: -1, x: 3 * a, y: a },
            Term { coef: -half(n + 3 * a), alpha: -1, beta: -1, x: 3 * a - 2, y: a },
            Term { coef: -half(m + a), alpha: -3, beta: 1, x: 3 * a, y: a - 2 },
        ],
    }
}

/// `(RC_l ⊗ RC_l') R_s^± ζ_a`, computed term by term.
pub fn rs_oracle(sign: Sign, edge: Edge, kt: KType, a: i64) -> Result<ZetaVector> {
    if !edge.valid_for(kt) {
        return Err(Error::precondition(format!("edge {edge:?} is not valid for {kt}")));
    }
    let tgt = edge.target(kt);
    let mut out = ZetaVector::zero(tgt);
    for t in r_terms(sign, kt, a) {
        if t.coef.is_zero() {
            continue;
        }
        let left = rc_bracket(3, kt.n, edge.l, &TensorElement::basis(3, kt.n, t.alpha, t.x)?)?;
        let right = rc_bracket(1, kt.m, edge.lp, &TensorElement::basis(1, kt.m, t.beta, t.y)?)?;
        for (&w1, c1) in left.coeffs() {
            for (&w2, c2) in right.coeffs() {
                if w1 != 3 * w2 {
                    return Err(Error::invariant(format!(
                        "bracket output ({w1},{w2}) is not L0-invariant"
                    )));
                }
                out.add_term(w2, &(&t.coef * c1) * c2)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::mmatrix::m_entry;

    #[test]
    fn agrees_with_closed_form_on_small_ktypes() {
        for kt in KType::up_to(10) {
            for a in kt.zeta_weights() {
                for e in Edge::ALL.iter().filter(|e| e.valid_for(kt)) {
                    for (sign, shift) in [(Sign::Plus, 1), (Sign::Minus, -1)] {
                        let got = rs_oracle(sign, *e, kt, a).unwrap();
                        let want = m_entry(sign, *e, kt, a).unwrap();
                        assert_eq!(got.coeff(a + shift), want, "{kt} a={a} {e:?} {sign:?}");
                    }
                }
            }
        }
    }
}
