//! The `v` / `v'` bases of the multiplicity spaces.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::{KType, ZetaVector};
use crate::algebra::{binomial, gamma_ratio_int, int, rat, Poly, RFMatrix, RatFunc, Rational};
use crate::error::{Error, Result};

/// `d_{n,m}(s + shift, a, k)`.
///
/// The sign and binomial are `(-1)^((A-a)/2 - k) binom(A - 2k, (A-a)/2 - k)` with
/// `A = a(n,m)`, and the Gamma quotient has the shared base `(1 + r + s)/2`:
/// `Γ(b+2k) Γ(b+A) / (Γ(b + k + (A-a)/2) Γ(b + k + (A+a)/2))`.
pub fn d_coeff_shifted(kt: KType, a: i64, k: i64, shift: i64) -> Result<RatFunc> {
    let big_a = kt.a();
    if big_a < 0 {
        return Err(Error::InvalidKType {
            n: kt.n,
            m: kt.m,
            reason: "does not occur".into(),
        });
    }
    if (big_a - a).rem_euclid(2) != 0 {
        return Err(Error::precondition(format!(
            "weight {a} has the wrong parity for {kt} (a(n,m) = {big_a})"
        )));
    }
    if k < 0 || 2 * k > big_a {
        return Err(Error::precondition(format!("index k = {k} out of range for {kt}")));
    }
    let down = (big_a - a) / 2 - k;
    let bin = binomial(big_a - 2 * k, down);
    if bin == int(0) {
        return Ok(RatFunc::zero());
    }
    let sign = if down.rem_euclid(2) == 0 { 1 } else { -1 };
    // b = (1 + r + s + shift) / 2
    let base = Poly::linear(rat(1, 2), rat(1 + kt.r() + shift, 2));
    let g = gamma_ratio_int(
        &base,
        &[2 * k, big_a],
        &[k + (big_a - a) / 2, k + (big_a + a) / 2],
    )?;
    Ok(g.scale(&(bin * int(sign))))
}

pub fn d_coeff(kt: KType, a: i64, k: i64) -> Result<RatFunc> {
    d_coeff_shifted(kt, a, k, 0)
}

/// `v_{n,m}(s,k) = sum_a d(s,a,k) ζ_a`; requires `0 <= 2k <= a(n,m)`.
pub fn basis_v(kt: KType, k: i64) -> Result<ZetaVector> {
    if k < 0 || 2 * k > kt.a() {
        return Err(Error::precondition(format!("v index k = {k} out of range for {kt}")));
    }
    let mut v = ZetaVector::zero(kt);
    for a in kt.zeta_weights() {
        v.add_term(a, d_coeff(kt, a, k)?)?;
    }
    Ok(v)
}

/// `v'_{n,m}(s,k) = sum_a a/(a(n,m)-2k) d(s+1,a,k) ζ_a`; requires `0 <= 2k <= a(n,m)-1`.
pub fn basis_vp(kt: KType, k: i64) -> Result<ZetaVector> {
    let big_a = kt.a();
    if k < 0 || 2 * k > big_a - 1 {
        return Err(Error::precondition(format!("v' index k = {k} out of range for {kt}")));
    }
    let mut v = ZetaVector::zero(kt);
    for a in kt.zeta_weights() {
        let c = d_coeff_shifted(kt, a, k, 1)?.scale(&Rational::new(a.into(), (big_a - 2 * k).into()));
        v.add_term(a, c)?;
    }
    Ok(v)
}

/// Which family and index sits in a slot of the ordered basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SlotKind {
    V(i64),
    VPrime(i64),
}

impl SlotKind {
    pub fn of_slot(j: usize) -> SlotKind {
        if j % 2 == 0 {
            SlotKind::V(j as i64 / 2)
        } else {
            SlotKind::VPrime((j as i64 - 1) / 2)
        }
    }
}

/// `(v(s,0), v'(s,0), v(s,1), v'(s,1), ...)`, of length `a(n,m) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedBasis {
    pub ktype: KType,
    pub vectors: Vec<ZetaVector>,
}

impl OrderedBasis {
    pub fn new(kt: KType) -> Result<Self> {
        if !kt.occurs() {
            return Err(Error::InvalidKType {
                n: kt.n,
                m: kt.m,
                reason: "does not occur".into(),
            });
        }
        let vectors = (0..kt.dim())
            .map(|j| match SlotKind::of_slot(j) {
                SlotKind::V(k) => basis_v(kt, k),
                SlotKind::VPrime(k) => basis_vp(kt, k),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrderedBasis { ktype: kt, vectors })
    }

    /// Columns are the basis vectors in ζ coordinates.
    pub fn matrix(&self) -> RFMatrix {
        let cols: Vec<Vec<RatFunc>> = self.vectors.iter().map(ZetaVector::coords).collect();
        RFMatrix::from_columns(&cols, self.ktype.dim())
    }
}

/// Shared, memoized ordered basis at the formal parameter `s`.
pub fn ordered_basis(kt: KType) -> Result<Arc<OrderedBasis>> {
    static CACHE: OnceLock<RwLock<HashMap<KType, Arc<OrderedBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().expect("basis cache poisoned").get(&kt) {
        return Ok(b.clone());
    }
    let b = Arc::new(OrderedBasis::new(kt)?);
    let mut w = cache.write().expect("basis cache poisoned");
    Ok(w.entry(kt).or_insert(b).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::zeta::{has_parity, w_action};

    fn kt(n: i64, m: i64) -> KType {
        KType::new(n, m).unwrap()
    }

    #[test]
    fn d_coefficient_boundary_values() {
        for (n, m) in [(3, 3), (6, 2), (9, 5), (12, 4), (15, 9)] {
            let k0 = kt(n, m);
            let big_a = k0.a();
            for k in 0..=big_a / 2 {
                assert!(d_coeff(k0, big_a - 2 * k, k).unwrap().is_one());
                let sign = if m % 2 == 0 { 1 } else { -1 };
                assert_eq!(d_coeff(k0, 2 * k - big_a, k).unwrap(), RatFunc::int(sign));
                for a in k0.zeta_weights() {
                    if a.abs() > big_a - 2 * k {
                        assert!(d_coeff(k0, a, k).unwrap().is_zero());
                    }
                }
            }
        }
        assert!(d_coeff(kt(3, 3), 1, 0).unwrap().is_one());
    }

    #[test]
    fn small_bases() {
        assert_eq!(basis_v(kt(0, 0), 0).unwrap(), ZetaVector::basis(kt(0, 0), 0).unwrap());
        let v = basis_v(kt(3, 3), 0).unwrap();
        assert_eq!(v.coeff(1), RatFunc::one());
        assert_eq!(v.coeff(-1), RatFunc::int(-1));
        assert!(basis_v(kt(3, 3), 1).is_err());
        assert!(basis_vp(kt(0, 0), 0).is_err());
    }

    #[test]
    fn bases_have_the_stated_parity() {
        for total in (0..=20).step_by(2) {
            for n in 0..=total {
                let k0 = kt(n, total - n);
                if !k0.occurs() {
                    continue;
                }
                let b = OrderedBasis::new(k0).unwrap();
                for (j, v) in b.vectors.iter().enumerate() {
                    assert!(has_parity(v, k0.slot_parity(j)), "{k0} slot {j}");
                    assert_eq!(w_action(&w_action(v)), *v);
                }
                assert_eq!(b.matrix().rank(), k0.dim(), "{k0} basis is degenerate");
            }
        }
    }
}
