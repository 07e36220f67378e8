//! Transition matrices `T_{n,m}^{n',m'}(s)` in the ordered bases.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::basis::ordered_basis;
use super::mmatrix::{rs_apply, Edge};
use super::KType;
use crate::algebra::{linsolve_many, RFMatrix, RatFunc};
use crate::error::Result;

/// Whether to evaluate at `s` or at `3 - s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Param {
    #[default]
    S,
    Reflected,
}

/// Matrix of `(RC_l ⊗ RC_l') R_s : (n,m) -> (n',m')` with respect to the
/// ordered bases at the same parameter. Rows index target slots.
pub fn transition_matrix(src: KType, tgt: KType, param: Param) -> Result<Arc<RFMatrix>> {
    let t = transition_at_s(src, tgt)?;
    Ok(match param {
        Param::S => t,
        Param::Reflected => Arc::new(t.reflect()),
    })
}

type Cache = RwLock<HashMap<(KType, KType), Arc<RFMatrix>>>;

fn transition_at_s(src: KType, tgt: KType) -> Result<Arc<RFMatrix>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("transition cache poisoned").get(&(src, tgt)) {
        return Ok(t.clone());
    }
    let t = Arc::new(compute(src, tgt)?);
    let mut w = cache.write().expect("transition cache poisoned");
    Ok(w.entry((src, tgt)).or_insert(t).clone())
}

fn compute(src: KType, tgt: KType) -> Result<RFMatrix> {
    let edge = Edge::between(src, tgt)?;
    let sb = ordered_basis(src)?;
    let tb = ordered_basis(tgt)?;
    let images: Vec<Vec<RatFunc>> = sb
        .vectors
        .iter()
        .map(|v| rs_apply(edge, v).map(|w| w.coords()))
        .collect::<Result<_>>()?;
    let y = RFMatrix::from_columns(&images, tgt.dim());
    linsolve_many(&tb.matrix(), &y)
}

/// Source K-types adjacent to `kt` through a valid edge, with the edge.
pub fn neighbours_out(kt: KType) -> Vec<(Edge, KType)> {
    Edge::ALL
        .iter()
        .filter(|e| e.valid_for(kt))
        .map(|e| (*e, e.target(kt)))
        .filter(|(_, t)| t.occurs())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, RatFunc};

    fn kt(n: i64, m: i64) -> KType {
        KType::new(n, m).unwrap()
    }

    #[test]
    fn trivial_to_three_one() {
        let t = transition_matrix(kt(0, 0), kt(3, 1), Param::S).unwrap();
        assert_eq!(t.rows(), 2);
        assert_eq!(t.get(0, 0), &RatFunc::s());
        assert!(t.get(1, 0).is_zero());
        let tr = transition_matrix(kt(0, 0), kt(3, 1), Param::Reflected).unwrap();
        assert_eq!(tr.get(0, 0), &RatFunc::reflected_s());
    }

    #[test]
    fn three_three_to_six_two() {
        let t = transition_matrix(kt(3, 3), kt(6, 2), Param::S).unwrap();
        // The off-diagonal pair is (2-s)/3; see the steep-edge sign in verify::v_action.
        let third = RatFunc::linear(crate::algebra::rat(-1, 3), crate::algebra::rat(2, 3));
        let num = Poly::from_ints(&[-1, 1]) * Poly::from_ints(&[2, 1]);
        let last = RatFunc::new(num.scale(&crate::algebra::int(-2)), Poly::from_ints(&[1, 1])).unwrap();
        let want = RFMatrix::from_rows(vec![
            vec![RatFunc::zero(), third.clone()],
            vec![third, RatFunc::zero()],
            vec![RatFunc::zero(), last],
        ]);
        assert_eq!(*t, want);
    }
}
