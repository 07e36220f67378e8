//! The named subrepresentations: ladder, double ladder, limit of discrete
//! series and the quaternionic discrete series, as K-type sets plus the
//! vanishing pattern that cuts them out.

use std::fmt;

use serde::Serialize;

use super::eigen::{eigenvalue_mu, NormalizationChoice};
use super::reducibility::{eigenvalue_table, ser_rational};
use crate::algebra::{int, pochhammer, rat, Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::g2::KType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubrepName {
    Ladder,
    DoubleLadder,
    /// Limit of discrete series at `(ε, s) = (1, 2)`.
    Lds,
    /// Quaternionic discrete series with parameter `k` (even, `>= 6`).
    Qds(i64),
}

impl SubrepName {
    /// `name` is one of `ladder`, `double-ladder`, `lds`, `qds`; `qds` needs `k`.
    pub fn parse(name: &str, k: Option<i64>) -> Result<Self> {
        match name.trim().replace('_', "-").as_str() {
            "ladder" => Ok(SubrepName::Ladder),
            "double-ladder" => Ok(SubrepName::DoubleLadder),
            "lds" => Ok(SubrepName::Lds),
            "qds" => {
                let k = k.ok_or_else(|| Error::precondition("qds needs k"))?;
                if k < 6 || k % 2 != 0 {
                    return Err(Error::precondition(format!("qds needs an even k >= 6, got {k}")));
                }
                Ok(SubrepName::Qds(k))
            }
            other => Err(Error::precondition(format!("unknown subrepresentation {other:?}"))),
        }
    }
}

impl fmt::Display for SubrepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubrepName::Ladder => f.write_str("ladder"),
            SubrepName::DoubleLadder => f.write_str("double-ladder"),
            SubrepName::Lds => f.write_str("lds"),
            SubrepName::Qds(k) => write!(f, "qds({k})"),
        }
    }
}

/// What the vanishing orders at a K-type should look like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// Exactly these orders, slot by slot.
    Orders(Vec<i64>),
    /// Some slot has order `>= 1`, none is negative.
    SomeVanishing,
    /// Every order is 0.
    Regular,
    /// The single slot has order exactly `n`.
    Exactly(i64),
    /// The single slot has order below `n`.
    Below(i64),
    /// Not part of the pattern.
    Unconstrained,
}

impl Expectation {
    fn holds(&self, orders: &[i64]) -> bool {
        match self {
            Expectation::Orders(want) => want == orders,
            Expectation::SomeVanishing => orders.iter().any(|&o| o >= 1) && orders.iter().all(|&o| o >= 0),
            Expectation::Regular => orders.iter().all(|&o| o == 0),
            Expectation::Exactly(n) => orders == [*n],
            Expectation::Below(n) => orders.len() == 1 && orders[0] < *n,
            Expectation::Unconstrained => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSubrep {
    pub name: SubrepName,
    pub eps: u8,
    #[serde(serialize_with = "ser_rational")]
    pub s0: Rational,
    pub description: String,
}

pub fn special_subrep(name: SubrepName) -> Result<SpecialSubrep> {
    let (eps, s0, description) = match name {
        SubrepName::Ladder => (1, rat(2, 3), "K-types (3m+2, m); slot 0 regular, every other slot a simple pole".to_string()),
        SubrepName::DoubleLadder => (
            0,
            rat(1, 3),
            "K-types (3m, m) and (3m+4, m); slot 0 regular, every other slot a simple pole".to_string(),
        ),
        SubrepName::Lds => (
            1,
            int(2),
            "kernel K-types (3m, m+2r) r>=1, (3m+2, m+2r) r>=2, (3m+4, m+2r) r>=3".to_string(),
        ),
        SubrepName::Qds(k) => {
            if k < 6 || k % 2 != 0 {
                return Err(Error::precondition(format!("qds needs an even k >= 6, got {k}")));
            }
            let s = k / 2;
            (
                ((s + 1) % 2) as u8,
                int(s),
                format!(
                    "order-2 multiplicity-one K-types (0, 2r) r>={}, (2, 2r) r>={}, (4, 2r) r>={}",
                    s - 1,
                    s,
                    s + 1
                ),
            )
        }
    };
    Ok(SpecialSubrep { name, eps, s0, description })
}

/// `(n, m) = (3p + shift, p + 2r)` with `p >= 0`, `r >= r_min`.
fn in_tall_family(kt: KType, shift: i64, r_min: i64) -> bool {
    let rest = kt.n - shift;
    if rest < 0 || rest % 3 != 0 {
        return false;
    }
    let p = rest / 3;
    let d = kt.m - p;
    d >= 0 && d % 2 == 0 && d / 2 >= r_min
}

impl SpecialSubrep {
    pub fn norm(&self) -> NormalizationChoice {
        NormalizationChoice::standard(self.eps)
    }

    /// K-type membership. For `qds` this is the order-2 multiplicity-one set.
    pub fn contains(&self, kt: KType) -> bool {
        if !kt.occurs() || kt.eps_slots(self.eps).is_empty() {
            return false;
        }
        match self.name {
            SubrepName::Ladder => in_tall_family(kt, 2, 0) && kt.m == (kt.n - 2) / 3,
            SubrepName::DoubleLadder => {
                (kt.n == 3 * kt.m) || (kt.n >= 4 && kt.n - 4 == 3 * kt.m)
            }
            SubrepName::Lds => in_tall_family(kt, 0, 1) || in_tall_family(kt, 2, 2) || in_tall_family(kt, 4, 3),
            SubrepName::Qds(k) => {
                let s = k / 2;
                let r = kt.m / 2;
                kt.m % 2 == 0
                    && match kt.n {
                        0 => r >= s - 1,
                        2 => r >= s,
                        4 => r >= s + 1,
                        _ => false,
                    }
            }
        }
    }

    /// The expected orders at `kt` on its slots of parity `eps`.
    pub fn expected(&self, kt: KType) -> Expectation {
        let slots = kt.eps_slots(self.eps);
        match self.name {
            SubrepName::Ladder | SubrepName::DoubleLadder => Expectation::Orders(
                slots
                    .iter()
                    .map(|&j| if j == 0 && self.contains(kt) { 0 } else { -1 })
                    .collect(),
            ),
            SubrepName::Lds => {
                if self.contains(kt) {
                    Expectation::SomeVanishing
                } else {
                    Expectation::Regular
                }
            }
            SubrepName::Qds(_) => {
                if !kt.is_mult_one() {
                    Expectation::Unconstrained
                } else if self.contains(kt) {
                    Expectation::Exactly(2)
                } else {
                    Expectation::Below(2)
                }
            }
        }
    }

    /// Compares actual eigenvalue valuations at `s0` against the pattern for
    /// every K-type with `n + m <= bound`.
    pub fn check(&self, bound: i64) -> Result<PatternReport> {
        let table = eigenvalue_table(self.eps, bound)?;
        let mut report = PatternReport {
            name: self.name,
            eps: self.eps,
            s0: self.s0.clone(),
            bound,
            checked: 0,
            members: Vec::new(),
            mismatches: Vec::new(),
        };
        let mut i = 0;
        while i < table.len() {
            let kt = table[i].0;
            let mut orders = Vec::new();
            while i < table.len() && table[i].0 == kt {
                orders.push(
                    table[i]
                        .2
                        .checked_valuation(&self.s0)
                        .map_err(|_| Error::invariant("an eigenvalue vanishes identically"))?,
                );
                i += 1;
            }
            let want = self.expected(kt);
            if want == Expectation::Unconstrained {
                continue;
            }
            report.checked += 1;
            if self.contains(kt) {
                report.members.push(kt);
            }
            if !want.holds(&orders) {
                report.mismatches.push(PatternMismatch { ktype: kt, expected: want, got: orders });
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternMismatch {
    pub ktype: KType,
    pub expected: Expectation,
    pub got: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub name: SubrepName,
    pub eps: u8,
    #[serde(serialize_with = "ser_rational")]
    pub s0: Rational,
    pub bound: i64,
    pub checked: usize,
    pub members: Vec<KType>,
    pub mismatches: Vec<PatternMismatch>,
}

impl PatternReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `(s+1)_m / (3-s+1)_m`, the value of `μ_0(3m+2, m)` at `3 - s`.
pub fn ladder_reverse_value(m: i64) -> RatFunc {
    let up = pochhammer(&Poly::from_ints(&[1, 1]), m as usize);
    let down = pochhammer(&Poly::from_ints(&[4, -1]), m as usize);
    RatFunc::new(up, down).expect("(4-s)_m is nonzero")
}

/// `μ_0(3m+2, m)` evaluated at `3 - s`, from the closed eigenvalue formula.
pub fn ladder_eigenvalue_reversed(m: i64) -> Result<RatFunc> {
    Ok(eigenvalue_mu(KType { n: 3 * m + 2, m }, 0, NormalizationChoice::standard(1))?.reflect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kt(n: i64, m: i64) -> KType {
        KType::new(n, m).unwrap()
    }

    #[test]
    fn membership_examples() {
        let ladder = special_subrep(SubrepName::Ladder).unwrap();
        assert!(ladder.contains(kt(8, 2)));
        assert!(!ladder.contains(kt(6, 2)));
        let dl = special_subrep(SubrepName::DoubleLadder).unwrap();
        assert!(dl.contains(kt(4, 0)) && dl.contains(kt(0, 0)));
        assert!(!dl.contains(kt(2, 0)));
        let q = special_subrep(SubrepName::Qds(6)).unwrap();
        assert_eq!((q.eps, q.s0.clone()), (0, int(3)));
        assert!(q.contains(kt(0, 4)));
        assert!(SubrepName::parse("qds", Some(5)).is_err());
        assert!(SubrepName::parse("qds", None).is_err());
    }

    #[test]
    fn patterns_hold_on_small_ktypes() {
        for name in [SubrepName::Ladder, SubrepName::DoubleLadder, SubrepName::Lds, SubrepName::Qds(6), SubrepName::Qds(8)] {
            let r = special_subrep(name).unwrap().check(16).unwrap();
            assert!(r.ok(), "{name}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn ladder_reverse_direction() {
        for m in 0..=4 {
            assert_eq!(ladder_eigenvalue_reversed(m).unwrap(), ladder_reverse_value(m), "m = {m}");
        }
    }
}
