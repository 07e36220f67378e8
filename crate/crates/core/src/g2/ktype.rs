use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The K-type `Gamma_n (x) Gamma_m` of `(SU(2) x SU(2)) / {±(I,I)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KType {
    pub n: i64,
    pub m: i64,
}

impl KType {
    /// Requires `n, m >= 0` and `n = m (mod 2)`. The K-type need not occur in
    /// the principal series; see [`KType::occurs`].
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 0 || m < 0 {
            return Err(Error::InvalidKType {
                n,
                m,
                reason: "indices must be nonnegative".into(),
            });
        }
        if (n - m).rem_euclid(2) != 0 {
            return Err(Error::InvalidKType {
                n,
                m,
                reason: "n and m must have the same parity".into(),
            });
        }
        Ok(KType { n, m })
    }

    /// Like [`KType::new`] but also requires the K-type to occur.
    pub fn occurring(n: i64, m: i64) -> Result<Self> {
        let kt = KType::new(n, m)?;
        if !kt.occurs() {
            return Err(Error::InvalidKType {
                n,
                m,
                reason: "the L0-invariants are zero, so this K-type does not occur".into(),
            });
        }
        Ok(kt)
    }

    /// `a(n,m)` by the closed formula; `-1` exactly when `n = 1`.
    pub fn a(&self) -> i64 {
        let q = self.n / 3;
        if self.n % 3 == 1 {
            (q - 1).min(self.m)
        } else {
            q.min(self.m)
        }
    }

    /// `a(n,m)` as one less than the number of ζ weights.
    pub fn a_direct(&self) -> i64 {
        let bound = self.n.max(self.m);
        (-bound..=bound)
            .filter(|&a| 3 * a.abs() <= self.n && a.abs() <= self.m && (a - self.n).rem_euclid(2) == 0)
            .count() as i64
            - 1
    }

    pub fn occurs(&self) -> bool {
        self.a() >= 0
    }

    /// Dimension of the L0-invariants, `a(n,m) + 1`.
    pub fn dim(&self) -> usize {
        (self.a() + 1).max(0) as usize
    }

    /// `r(n,m) = (n+m)/2 - 2 a(n,m)`.
    pub fn r(&self) -> i64 {
        (self.n + self.m) / 2 - 2 * self.a()
    }

    /// Half the total degree, whose parity is the ε of the `v` vectors.
    pub fn half_sum(&self) -> i64 {
        (self.n + self.m) / 2
    }

    pub fn is_mult_one(&self) -> bool {
        self.occurs() && self.a() == 0
    }

    /// ζ weights `-a(n,m), -a(n,m)+2, ..., a(n,m)`.
    pub fn zeta_weights(&self) -> Vec<i64> {
        let a = self.a();
        if a < 0 {
            return Vec::new();
        }
        (0..=a).map(|i| -a + 2 * i).collect()
    }

    pub fn weight_valid(&self, a: i64) -> bool {
        3 * a.abs() <= self.n && a.abs() <= self.m && (a - self.n).rem_euclid(2) == 0
    }

    /// The principal series `I(ε, s)` that slot `j` of the ordered basis lives in:
    /// `ε = (n+m)/2 + j (mod 2)`.
    pub fn slot_parity(&self, j: usize) -> u8 {
        ((self.half_sum() + j as i64).rem_euclid(2)) as u8
    }

    /// Slots of the ordered basis of parity `eps`, ascending.
    pub fn eps_slots(&self, eps: u8) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.slot_parity(j) == eps).collect()
    }

    /// All occurring K-types with `n + m <= bound`, ordered by `(n+m, n)`.
    pub fn up_to(bound: i64) -> Vec<KType> {
        let mut out = Vec::new();
        for total in (0..=bound).step_by(2) {
            for n in 0..=total {
                let kt = KType { n, m: total - n };
                if kt.occurs() {
                    out.push(kt);
                }
            }
        }
        out
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

impl std::str::FromStr for KType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected n,m, got {s:?}")))?;
        let n = a.trim().parse().map_err(|_| Error::Parse(format!("bad n in {s:?}")))?;
        let m = b.trim().parse().map_err(|_| Error::Parse(format!("bad m in {s:?}")))?;
        KType::new(n, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_examples() {
        assert_eq!(KType::new(6, 2).unwrap().a(), 2);
        assert_eq!(KType::new(3, 3).unwrap().a(), 1);
        assert_eq!(KType::new(0, 0).unwrap().a(), 0);
        assert_eq!(KType::new(7, 3).unwrap().a(), 1);
        assert_eq!(KType::new(1, 5).unwrap().a(), -1);
        assert!(KType::new(2, 1).is_err());
        assert!(KType::occurring(1, 1).is_err());
    }

    #[test]
    fn slots_and_parity() {
        let kt = KType::new(6, 2).unwrap();
        assert_eq!(kt.eps_slots(0), vec![0, 2]);
        assert_eq!(kt.eps_slots(1), vec![1]);
        assert_eq!(kt.r(), 0);
        assert_eq!(kt.zeta_weights(), vec![-2, 0, 2]);
    }

    #[test]
    fn parse() {
        assert_eq!("6,2".parse::<KType>().unwrap(), KType { n: 6, m: 2 });
        assert_eq!("(3, 3)".parse::<KType>().unwrap(), KType { n: 3, m: 3 });
        assert!("3".parse::<KType>().is_err());
    }
}
