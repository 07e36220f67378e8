//! Reducibility of `I(ε, s)` at rational points, by the closed predicate and by
//! scanning eigenvalue valuations, plus per-K-type vanishing orders.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use super::amatrix::a_matrix;
use super::eigen::{eigenvalue_mu, NormalizationChoice};
use crate::algebra::{format_rational, int, rat, smith_local_valuations, LocalSmith, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::g2::KType;

/// Outcome of the closed reducibility predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reducibility {
    pub eps: u8,
    #[serde(serialize_with = "ser_rational")]
    pub s0: Rational,
    pub reducible: bool,
    /// Why the point is (or is not) in the reducible set.
    pub witness: String,
}

pub(crate) fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

/// The arithmetic progression start: 2 for ε = 0, 7/3 for ε = 1.
fn progression_start(eps: u8) -> Rational {
    if eps % 2 == 0 {
        int(2)
    } else {
        rat(7, 3)
    }
}

fn in_integers_from_two(x: &Rational) -> bool {
    x.is_integer() && *x >= int(2)
}

fn in_progression(x: &Rational, start: &Rational) -> bool {
    if x < start {
        return false;
    }
    ((x - start) * rat(3, 2)).is_integer()
}

/// `I(ε, s0)` is reducible iff `s0` or `3 - s0` lies in `Z_{>=2}` or in
/// `c + (2/3) Z_{>=0}`, with `c = 2` (ε = 0) or `c = 7/3` (ε = 1).
pub fn reducibility(eps: u8, s0: &Rational) -> Reducibility {
    let eps = eps % 2;
    let start = progression_start(eps);
    let reflected = int(3) - s0;
    for (label, x) in [("s0", s0), ("3 - s0", &reflected)] {
        if in_integers_from_two(x) {
            return Reducibility {
                eps,
                s0: s0.clone(),
                reducible: true,
                witness: format!("{label} = {} is an integer >= 2", format_rational(x)),
            };
        }
        if in_progression(x, &start) {
            return Reducibility {
                eps,
                s0: s0.clone(),
                reducible: true,
                witness: format!(
                    "{label} = {} lies in {} + (2/3)Z>=0",
                    format_rational(x),
                    format_rational(&start)
                ),
            };
        }
    }
    Reducibility {
        eps,
        s0: s0.clone(),
        reducible: false,
        witness: format!(
            "neither s0 nor 3 - s0 lies in Z>=2 or {} + (2/3)Z>=0",
            format_rational(&start)
        ),
    }
}

/// An eigenvalue slot whose valuation at `s0` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub ktype: KType,
    pub slot: usize,
    /// Valuation of `μ` at `s0`; the valuation at `3 - s0` is its negative.
    pub order: i64,
}

type Table = Vec<(KType, usize, RatFunc)>;

/// Standard-normalized eigenvalues of parity `eps` for `n + m <= bound`, in
/// `(n+m, n, slot)` order.
pub fn eigenvalue_table(eps: u8, bound: i64) -> Result<Arc<Table>> {
    static CACHE: OnceLock<RwLock<HashMap<(u8, i64), Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let eps = eps % 2;
    if let Some(t) = cache.read().expect("eigenvalue table poisoned").get(&(eps, bound)) {
        return Ok(t.clone());
    }
    let norm = NormalizationChoice::standard(eps);
    let slots: Vec<(KType, usize)> = KType::up_to(bound)
        .into_iter()
        .flat_map(|kt| kt.eps_slots(eps).into_iter().map(move |j| (kt, j)))
        .collect();
    let table: Table = slots
        .into_par_iter()
        .map(|(kt, j)| eigenvalue_mu(kt, j, norm).map(|mu| (kt, j, mu)))
        .collect::<Result<_>>()?;
    let table = Arc::new(table);
    let mut w = cache.write().expect("eigenvalue table poisoned");
    Ok(w.entry((eps, bound)).or_insert(table).clone())
}

fn order_at(mu: &RatFunc, s0: &Rational) -> Result<i64> {
    mu.checked_valuation(s0)
        .map_err(|_| Error::invariant("an eigenvalue vanishes identically"))
}

/// Every slot of parity `eps` with `n + m <= bound` whose eigenvalue has
/// nonzero valuation at `s0` (equivalently at `3 - s0`). A nonempty list
/// certifies reducibility; an empty one is inconclusive.
pub fn reducibility_scan(eps: u8, s0: &Rational, bound: i64) -> Result<Vec<Witness>> {
    let table = eigenvalue_table(eps, bound)?;
    let mut out = Vec::new();
    for (kt, j, mu) in table.iter() {
        let here = order_at(mu, s0)?;
        let there = order_at(&mu.reflect(), s0)?;
        if here != 0 || there != 0 {
            out.push(Witness { ktype: *kt, slot: *j, order: here });
        }
    }
    Ok(out)
}

/// A point for [`classify`]: a real rational `s`, or a generic point of the
/// line `Re s = 3/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Real(Rational),
    Axis,
}

impl std::str::FromStr for Point {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.trim() == "axis" {
            Ok(Point::Axis)
        } else {
            crate::algebra::parse_rational(text).map(Point::Real)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    ReduciblePoint,
    ComplementarySeries,
    UnitaryAxis,
    GenericIrreducible,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::ReduciblePoint => "reducible-point",
            Label::ComplementarySeries => "complementary-series",
            Label::UnitaryAxis => "unitary-axis",
            Label::GenericIrreducible => "generic-irreducible",
        })
    }
}

/// All labels that apply; `s = 3/2` carries both the complementary-series and
/// the unitary-axis flag.
pub fn classify(eps: u8, point: &Point) -> Vec<Label> {
    let s = match point {
        Point::Axis => return vec![Label::UnitaryAxis],
        Point::Real(s) => s,
    };
    if reducibility(eps, s).reducible {
        return vec![Label::ReduciblePoint];
    }
    let mut labels = Vec::new();
    if *s > int(1) && *s < int(2) {
        labels.push(Label::ComplementarySeries);
    }
    if *s == rat(3, 2) {
        labels.push(Label::UnitaryAxis);
    }
    if labels.is_empty() {
        labels.push(Label::GenericIrreducible);
    }
    labels
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotOrder {
    pub slot: usize,
    pub order: i64,
}

/// Vanishing orders of `A_{n,m}` at `s0` on the slots of one parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingOrders {
    pub ktype: KType,
    pub eps: u8,
    #[serde(serialize_with = "ser_rational")]
    pub s0: Rational,
    /// Valuations of the diagonal eigenvalues.
    pub diagonal: Vec<SlotOrder>,
    /// Elementary-divisor valuations of the whole matrix. This stands in for
    /// Jantzen levels when `A` is not diagonal, which is a computational proxy.
    pub smith: LocalSmith,
    pub smith_is_proxy: bool,
}

/// Diagonal valuations only; cheap, no `A`-matrix solve.
pub fn diagonal_orders(kt: KType, eps: u8, s0: &Rational, norm: NormalizationChoice) -> Result<Vec<SlotOrder>> {
    if kt.eps_slots(eps).is_empty() {
        return Err(Error::precondition(format!("{kt} has no slots in ε = {eps}")));
    }
    kt.eps_slots(eps)
        .into_iter()
        .map(|j| {
            let mu = eigenvalue_mu(kt, j, norm)?;
            Ok(SlotOrder { slot: j, order: order_at(&mu, s0)? })
        })
        .collect()
}

pub fn vanishing_orders(kt: KType, eps: u8, s0: &Rational, norm: NormalizationChoice) -> Result<VanishingOrders> {
    let diagonal = diagonal_orders(kt, eps, s0, norm)?;
    let a = a_matrix(kt, eps, norm)?;
    let smith = smith_local_valuations(&a.entries, s0)?;
    if kt.is_mult_one() && smith.valuations != vec![diagonal[0].order] {
        return Err(Error::invariant(format!(
            "Smith and diagonal valuations differ on the multiplicity-one {kt}"
        )));
    }
    Ok(VanishingOrders {
        ktype: kt,
        eps,
        s0: s0.clone(),
        diagonal,
        smith,
        smith_is_proxy: a.entries.rows() > 1,
    })
}
