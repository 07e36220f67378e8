//! Vectors in the L0-invariants of a K-type, written in the ζ basis.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::KType;
use crate::algebra::{rat, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaVector {
    ktype: KType,
    coeffs: BTreeMap<i64, RatFunc>,
}

impl ZetaVector {
    pub fn zero(ktype: KType) -> Self {
        ZetaVector {
            ktype,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(ktype: KType, a: i64) -> Result<Self> {
        let mut v = ZetaVector::zero(ktype);
        v.add_term(a, RatFunc::one())?;
        Ok(v)
    }

    pub fn from_coeffs(ktype: KType, coeffs: impl IntoIterator<Item = (i64, RatFunc)>) -> Result<Self> {
        let mut v = ZetaVector::zero(ktype);
        for (a, c) in coeffs {
            v.add_term(a, c)?;
        }
        Ok(v)
    }

    /// Adds `c ζ_a`; a nonzero coefficient on an invalid weight is an error.
    pub fn add_term(&mut self, a: i64, c: RatFunc) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if !self.ktype.weight_valid(a) {
            return Err(Error::invariant(format!(
                "weight {a} is not a ζ weight of {}",
                self.ktype
            )));
        }
        let e = self.coeffs.entry(a).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.coeffs.remove(&a);
        }
        Ok(())
    }

    pub fn ktype(&self) -> KType {
        self.ktype
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

    /// Coordinates along [`KType::zeta_weights`].
    pub fn coords(&self) -> Vec<RatFunc> {
        self.ktype.zeta_weights().iter().map(|&a| self.coeff(a)).collect()
    }

    pub fn add(&self, other: &ZetaVector) -> Result<ZetaVector> {
        if self.ktype != other.ktype {
            return Err(Error::precondition("adding ζ vectors of different K-types"));
        }
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(*a, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> ZetaVector {
        let mut out = ZetaVector::zero(self.ktype);
        if c.is_zero() {
            return out;
        }
        for (a, v) in &self.coeffs {
            out.coeffs.insert(*a, v * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> ZetaVector {
        let mut out = ZetaVector::zero(self.ktype);
        for (a, v) in &self.coeffs {
            let c = f(v);
            if !c.is_zero() {
                out.coeffs.insert(*a, c);
            }
        }
        out
    }

    /// Substitutes `s -> 3 - s` in every coefficient.
    pub fn reflect(&self) -> ZetaVector {
        self.map_coeffs(RatFunc::reflect)
    }
}

impl Serialize for ZetaVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            ktype: KType,
            coeffs: BTreeMap<String, &'a RatFunc>,
        }
        Wire {
            ktype: self.ktype,
            coeffs: self.coeffs.iter().map(|(a, c)| (a.to_string(), c)).collect(),
        }
        .serialize(serializer)
    }
}

/// `w ζ_a = (-1)^((m+n)/2 + a) ζ_{-a}`, extended linearly.
pub fn w_action(v: &ZetaVector) -> ZetaVector {
    let h = v.ktype.half_sum();
    let mut out = ZetaVector::zero(v.ktype);
    for (&a, c) in &v.coeffs {
        let c = if (h + a).rem_euclid(2) == 0 { c.clone() } else { -c };
        out.coeffs.insert(-a, c);
    }
    out
}

/// Basis of the `(-1)^eps` eigenspace of `w`: the symmetrized vectors
/// `ζ_a + (-1)^((m+n)/2 + a + eps) ζ_{-a}` for `0 <= a <= a(n,m)` of the right
/// parity, omitting those that vanish. At `a = 0` the surviving vector is
/// reported as `ζ_0` rather than `2 ζ_0`.
pub fn parity_basis(ktype: KType, eps: u8) -> Vec<ZetaVector> {
    let h = ktype.half_sum();
    let mut out = Vec::new();
    for a in ktype.zeta_weights().into_iter().filter(|&a| a >= 0) {
        let sign = if (h + a + eps as i64).rem_euclid(2) == 0 { 1 } else { -1 };
        let v = if a == 0 {
            if sign == 1 {
                ZetaVector::basis(ktype, 0).expect("zero weight is valid")
            } else {
                continue;
            }
        } else {
            ZetaVector::from_coeffs(
                ktype,
                [(a, RatFunc::one()), (-a, RatFunc::constant(rat(sign, 1)))],
            )
            .expect("symmetric weights are valid")
        };
        out.push(v);
    }
    out
}

/// `true` when `w v = (-1)^eps v`.
pub fn has_parity(v: &ZetaVector, eps: u8) -> bool {
    let wv = w_action(v);
    if eps % 2 == 0 {
        wv == *v
    } else {
        wv == v.scale(&RatFunc::int(-1))
    }
}

impl Default for ZetaVector {
    fn default() -> Self {
        ZetaVector::zero(KType { n: 0, m: 0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kt(n: i64, m: i64) -> KType {
        KType::new(n, m).unwrap()
    }

    #[test]
    fn w_action_examples() {
        let z = ZetaVector::basis(kt(0, 0), 0).unwrap();
        assert_eq!(w_action(&z), z);
        let z1 = ZetaVector::basis(kt(3, 3), 1).unwrap();
        assert_eq!(w_action(&z1), ZetaVector::basis(kt(3, 3), -1).unwrap());
    }

    #[test]
    fn parity_basis_examples() {
        assert_eq!(parity_basis(kt(0, 0), 0), vec![ZetaVector::basis(kt(0, 0), 0).unwrap()]);
        assert!(parity_basis(kt(0, 0), 1).is_empty());
        assert_eq!(parity_basis(kt(3, 3), 0).len(), 1);
        assert_eq!(parity_basis(kt(3, 3), 1).len(), 1);
        let k = kt(6, 2);
        assert_eq!(parity_basis(k, 0).len(), 2);
        assert_eq!(parity_basis(k, 1).len(), 1);
        for eps in 0..2 {
            for v in parity_basis(k, eps) {
                assert!(has_parity(&v, eps));
            }
        }
    }

    #[test]
    fn invalid_weight_rejected() {
        assert!(ZetaVector::basis(kt(6, 2), 4).is_err());
    }
}
