//! Diagonal entries `μ_j(n,m,s)` of the Knapp–Stein matrices, by closed formula
//! and by walking the eigenvalue recursions down to multiplicity one.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{int, pochhammer, rat, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::g2::KType;

/// Which principal series `I(ε, s)` we work in, and how the scalar family is
/// normalized. The anchor K-type `(0,0)` (ε = 0) or `(2,0)` (ε = 1) carries
/// the scalar 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizationChoice {
    pub eps: u8,
    /// Multiply by `s - 1/3` (ε = 0) or `s - 2/3` (ε = 1), which clears the
    /// simple poles along the ladder lines.
    pub regularized: bool,
}

impl NormalizationChoice {
    pub fn standard(eps: u8) -> Self {
        NormalizationChoice { eps: eps % 2, regularized: false }
    }

    pub fn regularized(eps: u8) -> Self {
        NormalizationChoice { eps: eps % 2, regularized: true }
    }

    pub fn anchor(&self) -> KType {
        if self.eps == 0 {
            KType { n: 0, m: 0 }
        } else {
            KType { n: 2, m: 0 }
        }
    }

    /// The scalar that turns the standard family into this one.
    pub fn factor(&self) -> RatFunc {
        if !self.regularized {
            return RatFunc::one();
        }
        let c = if self.eps == 0 { rat(-1, 3) } else { rat(-2, 3) };
        RatFunc::linear(int(1), c)
    }

    fn apply(&self, f: RatFunc) -> RatFunc {
        if self.regularized {
            f * self.factor()
        } else {
            f
        }
    }
}

/// The eight closed forms for multiplicity-one K-types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MultOneFamily {
    /// `(4r, 0)`
    Row4r,
    /// `(4r+2, 0)`
    Row4r2,
    /// `(0, 4r)`
    Zero4r,
    /// `(0, 4r+2)`
    Zero4r2,
    /// `(2, 4r+2)`
    Two4r2,
    /// `(2, 4r)`
    Two4r,
    /// `(4, 4r)`, `r >= 1`
    Four4r,
    /// `(4, 4r+2)`
    Four4r2,
}

impl MultOneFamily {
    pub const ALL: [MultOneFamily; 8] = [
        MultOneFamily::Row4r,
        MultOneFamily::Row4r2,
        MultOneFamily::Zero4r,
        MultOneFamily::Zero4r2,
        MultOneFamily::Two4r2,
        MultOneFamily::Two4r,
        MultOneFamily::Four4r,
        MultOneFamily::Four4r2,
    ];

    pub fn ktype(self, r: i64) -> KType {
        let (n, m) = match self {
            MultOneFamily::Row4r => (4 * r, 0),
            MultOneFamily::Row4r2 => (4 * r + 2, 0),
            MultOneFamily::Zero4r => (0, 4 * r),
            MultOneFamily::Zero4r2 => (0, 4 * r + 2),
            MultOneFamily::Two4r2 => (2, 4 * r + 2),
            MultOneFamily::Two4r => (2, 4 * r),
            MultOneFamily::Four4r => (4, 4 * r),
            MultOneFamily::Four4r2 => (4, 4 * r + 2),
        };
        KType { n, m }
    }

    pub fn eps(self) -> u8 {
        match self {
            MultOneFamily::Row4r | MultOneFamily::Zero4r | MultOneFamily::Two4r2 | MultOneFamily::Four4r => 0,
            _ => 1,
        }
    }

    /// The family and index of a multiplicity-one K-type. `(4,0)` is routed to
    /// `(4r, 0)` with `r = 1`.
    pub fn of_ktype(kt: KType) -> Option<(MultOneFamily, i64)> {
        if !kt.is_mult_one() {
            return None;
        }
        let (n, m) = (kt.n, kt.m);
        Some(if m == 0 {
            if n % 4 == 0 {
                (MultOneFamily::Row4r, n / 4)
            } else {
                (MultOneFamily::Row4r2, n / 4)
            }
        } else {
            match (n, m % 4) {
                (0, 0) => (MultOneFamily::Zero4r, m / 4),
                (0, _) => (MultOneFamily::Zero4r2, m / 4),
                (2, 2) => (MultOneFamily::Two4r2, m / 4),
                (2, _) => (MultOneFamily::Two4r, m / 4),
                (4, 0) => (MultOneFamily::Four4r, m / 4),
                (4, _) => (MultOneFamily::Four4r2, m / 4),
                _ => return None,
            }
        })
    }
}

/// `((a s + b) / c)_len` as a polynomial.
fn ph(a: i64, b: i64, c: i64, len: i64) -> Poly {
    debug_assert!(len >= 0);
    pochhammer(&Poly::linear(rat(a, c), rat(b, c)), len.max(0) as usize)
}

/// `F(3 - s) / F(s)`.
fn reflect_ratio(f: &Poly) -> RatFunc {
    let num = f.compose_affine(&int(-1), &int(3));
    RatFunc::new(num, f.clone()).expect("Pochhammer products are nonzero")
}

/// The denominator product `F(s)` of a multiplicity-one closed form.
fn mult_one_product(family: MultOneFamily, r: i64) -> Poly {
    use MultOneFamily::*;
    match family {
        Row4r => &ph(1, 0, 2, r) * &ph(3, -3, 2, r),
        Row4r2 => &ph(1, 1, 2, r) * &ph(3, -2, 2, r),
        Zero4r => &(&ph(1, 0, 2, r).pow(2) * &ph(3, -1, 6, r)) * &ph(3, 1, 6, r),
        Zero4r2 => &(&(&ph(1, 1, 2, r) * &ph(1, -1, 2, r + 1)) * &ph(3, 2, 6, r)) * &ph(3, -2, 6, r + 1),
        Two4r2 => &(&(&ph(1, 0, 2, r + 1) * &ph(1, 0, 2, r)) * &ph(3, 1, 6, r)) * &ph(3, -1, 6, r + 1),
        Two4r => &(&(&ph(1, 1, 2, r) * &ph(1, -1, 2, r)) * &ph(3, 2, 6, r)) * &ph(3, -2, 6, r),
        Four4r => &(&(&ph(1, 0, 2, r - 1) * &ph(1, 0, 2, r + 1)) * &ph(3, -1, 6, r)) * &ph(3, 1, 6, r),
        Four4r2 => &(&(&ph(1, 1, 2, r + 1) * &ph(1, -1, 2, r)) * &ph(3, 2, 6, r)) * &ph(3, -2, 6, r + 1),
    }
}

/// Closed-form scalar of a multiplicity-one K-type relative to its anchor.
pub fn mult_one_eigenvalue(family: MultOneFamily, r: i64, norm: NormalizationChoice) -> Result<RatFunc> {
    if r < 0 || (family == MultOneFamily::Four4r && r < 1) {
        return Err(Error::precondition(format!("index r = {r} out of range for {family:?}")));
    }
    if family.eps() != norm.eps {
        return Err(Error::precondition(format!(
            "{family:?} lives in ε = {}, not ε = {}",
            family.eps(),
            norm.eps
        )));
    }
    Ok(norm.apply(reflect_ratio(&mult_one_product(family, r))))
}

/// The standard scalar on a multiplicity-one K-type, with ε read off the K-type.
pub fn mult_one_scalar(kt: KType) -> Result<RatFunc> {
    let (family, r) = MultOneFamily::of_ktype(kt)
        .ok_or_else(|| Error::precondition(format!("{kt} is not a multiplicity-one K-type")))?;
    mult_one_eigenvalue(family, r, NormalizationChoice::standard(family.eps()))
}

/// The four eigenvalue families of the closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EigenFamily {
    /// `(3m+2r, m)`
    Wide,
    /// `(3m, m+2r)`
    Tall0,
    /// `(3m+2, m+2r)`
    Tall2,
    /// `(3m+4, m+2r)`
    Tall4,
}

/// Family, `m` and `r` parameters for a K-type in the given family, if it belongs.
pub fn family_params(kt: KType, family: EigenFamily) -> Option<(i64, i64)> {
    let (n, m) = (kt.n, kt.m);
    match family {
        EigenFamily::Wide => (n >= 3 * m).then(|| (m, (n - 3 * m) / 2)),
        EigenFamily::Tall0 | EigenFamily::Tall2 | EigenFamily::Tall4 => {
            let t = match family {
                EigenFamily::Tall0 => 0,
                EigenFamily::Tall2 => 1,
                _ => 2,
            };
            let rest = n - 2 * t;
            if rest < 0 || rest % 3 != 0 {
                return None;
            }
            let mp = rest / 3;
            (m >= mp && (m - mp) % 2 == 0).then(|| (mp, (m - mp) / 2))
        }
    }
}

/// Routing used by [`eigenvalue_mu`]: `(3m, m)` goes to the `(3m, m+2r)` family.
pub fn route(kt: KType) -> Result<(EigenFamily, i64, i64)> {
    if !kt.occurs() {
        return Err(Error::InvalidKType { n: kt.n, m: kt.m, reason: "does not occur".into() });
    }
    for fam in [EigenFamily::Tall0, EigenFamily::Tall2, EigenFamily::Tall4] {
        if let Some((mp, r)) = family_params(kt, fam) {
            if kt.n <= 3 * kt.m {
                return Ok((fam, mp, r));
            }
        }
    }
    let (mp, r) = family_params(kt, EigenFamily::Wide).expect("n > 3m lies in the wide family");
    Ok((EigenFamily::Wide, mp, r))
}

/// `μ_j` by the closed formula of the given family with parameters `(m, r)`.
pub fn family_eigenvalue(family: EigenFamily, m: i64, r: i64, j: i64) -> Result<RatFunc> {
    if j < 0 || j > m {
        return Err(Error::precondition(format!("slot {j} out of range 0..={m}")));
    }
    let (i, odd) = (j / 2, j % 2 == 1);
    let (g, base) = match (family, odd) {
        (EigenFamily::Wide, false) => (
            // ((r+3s+2i-3)/2)_{2i} ((r+s)/2+i)_i ((r-s)/2+i+1)_i (r+s+4i)_{m-2i}
            [ph(3, r + 2 * i - 3, 2, 2 * i), ph(1, r + 2 * i, 2, i), ph(-1, r + 2 * i + 2, 2, i), ph(1, r + 4 * i, 1, m - 2 * i)],
            KType { n: 2 * (r + 2 * i), m: 0 },
        ),
        (EigenFamily::Wide, true) => (
            [ph(3, r + 2 * i - 2, 2, 2 * i + 1), ph(1, r + 1 + 2 * i, 2, i), ph(-1, r + 3 + 2 * i, 2, i), ph(1, r + 4 * i + 1, 1, m - 2 * i - 1)],
            KType { n: 2 * (r + 2 * i + 1), m: 0 },
        ),
        (EigenFamily::Tall0, false) => (
            [ph(1, -r - 2 * i - 1, 2, 2 * i), ph(1, r + 2 * i, 2, i), ph(-1, r + 2 * i + 2, 2, i), ph(1, r + 4 * i, 1, m - 2 * i)],
            KType { n: 0, m: 2 * (r + 2 * i) },
        ),
        (EigenFamily::Tall0, true) => (
            [ph(1, -2 * i - r - 2, 2, 2 * i + 1), ph(1, r + 1 + 2 * i, 2, i), ph(-1, r + 3 + 2 * i, 2, i), ph(1, r + 4 * i + 1, 1, m - 2 * i - 1)],
            KType { n: 0, m: 2 * (r + 2 * i + 1) },
        ),
        (EigenFamily::Tall2, false) => (
            [ph(1, -r - 2 * i, 2, 2 * i), ph(1, r + 1 + 2 * i, 2, i), ph(-1, r + 3 + 2 * i, 2, i), ph(1, r + 4 * i + 1, 1, m - 2 * i)],
            KType { n: 2, m: 2 * (r + 2 * i) },
        ),
        (EigenFamily::Tall2, true) => (
            [ph(1, -r - 2 * i - 1, 2, 2 * i + 1), ph(1, r + 2 * i + 2, 2, i), ph(-1, r + 2 * i + 4, 2, i), ph(1, r + 4 * i + 2, 1, m - 2 * i - 1)],
            KType { n: 2, m: 2 * (r + 2 * i + 1) },
        ),
        (EigenFamily::Tall4, false) => (
            [ph(1, -r - 2 * i + 1, 2, 2 * i), ph(1, r + 2 * i + 2, 2, i), ph(-1, r + 2 * i + 4, 2, i), ph(1, r + 4 * i + 2, 1, m - 2 * i)],
            KType { n: 4, m: 2 * (r + 2 * i) },
        ),
        (EigenFamily::Tall4, true) => (
            [ph(1, -r - 2 * i, 2, 2 * i + 1), ph(1, r + 2 * i + 3, 2, i), ph(-1, r + 2 * i + 5, 2, i), ph(1, r + 4 * i + 3, 1, m - 2 * i - 1)],
            KType { n: 4, m: 2 * (r + 2 * i + 1) },
        ),
    };
    let prod = g.iter().fold(Poly::one(), |acc, p| &acc * p);
    Ok(reflect_ratio(&prod) * mult_one_scalar(base)?)
}

fn check_slot(kt: KType, j: usize, norm: NormalizationChoice) -> Result<()> {
    if !kt.occurs() {
        return Err(Error::InvalidKType { n: kt.n, m: kt.m, reason: "does not occur".into() });
    }
    if j >= kt.dim() {
        return Err(Error::precondition(format!("slot {j} out of range for {kt}")));
    }
    if kt.slot_parity(j) != norm.eps {
        return Err(Error::precondition(format!(
            "slot {j} of {kt} lies in ε = {}, not ε = {}",
            kt.slot_parity(j),
            norm.eps
        )));
    }
    Ok(())
}

/// `μ_j(n,m,s)` by the closed formula.
pub fn eigenvalue_mu(kt: KType, j: usize, norm: NormalizationChoice) -> Result<RatFunc> {
    check_slot(kt, j, norm)?;
    Ok(norm.apply(standard_mu(kt, j)?))
}

fn standard_mu(kt: KType, j: usize) -> Result<RatFunc> {
    let (fam, m, r) = route(kt)?;
    let v = family_eigenvalue(fam, m, r, j as i64)?;
    if kt.n == 3 * kt.m {
        let w = family_eigenvalue(EigenFamily::Wide, kt.m, 0, j as i64)?;
        if w != v {
            return Err(Error::invariant(format!(
                "closed formulas disagree on the overlap {kt}, slot {j}: {v} vs {w}"
            )));
        }
    }
    Ok(v)
}

/// `(m+n+2-2t)(m+n-2+2t) / ((m+n+2-2s)(m+n-2+2s))` when `a(n,m)` is odd.
fn odd_factor(pred: KType) -> RatFunc {
    if pred.a() % 2 == 0 {
        return RatFunc::one();
    }
    let h = pred.n + pred.m;
    let g = &Poly::from_ints(&[h + 2, -2]) * &Poly::from_ints(&[h - 2, 2]);
    reflect_ratio(&g)
}

/// Which recursion produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    /// Multiplicity-one base case.
    Base,
    /// From `(n-3, m-1)` keeping the slot.
    Straight,
    /// Last slot, from `(n-1, m-1)`.
    Diagonal,
    /// Last slot, from `(n-3, m+1)`.
    Steep,
}

/// One recursion step into slot `j` of `kt`: the predecessor and the factor, or
/// `None` when that step does not apply.
pub fn recursion_step(kt: KType, j: usize, step: Step) -> Option<(KType, RatFunc)> {
    let big_a = kt.a();
    let j = j as i64;
    match step {
        Step::Base => None,
        Step::Straight => {
            if j >= big_a || kt.n < 3 || kt.m < 1 {
                return None;
            }
            let p = KType { n: kt.n - 3, m: kt.m - 1 };
            let c = 2 * (j / 2) + p.r() + p.a();
            Some((p, reflect_ratio(&Poly::from_ints(&[c, 1]))))
        }
        Step::Diagonal | Step::Steep => {
            if j != big_a || big_a == 0 {
                return None;
            }
            let p = if step == Step::Diagonal {
                KType { n: kt.n - 1, m: kt.m - 1 }
            } else {
                KType { n: kt.n - 3, m: kt.m + 1 }
            };
            if p.n < 0 || p.m < 0 || !p.occurs() || p.a() != big_a - 1 {
                return None;
            }
            let lin = if step == Step::Diagonal {
                Poly::from_ints(&[3 * p.m + p.n - 6, 6])
            } else {
                Poly::from_ints(&[p.n - p.m - 2, 2])
            };
            Some((p, reflect_ratio(&lin) * odd_factor(p)))
        }
    }
}

type MuCache = RwLock<HashMap<(KType, usize), RatFunc>>;

/// `μ_j(n,m,s)` by the eigenvalue recursions, preferring the `(n-1, m-1)` step
/// for the last slot.
pub fn eigenvalue_mu_recursive(kt: KType, j: usize, norm: NormalizationChoice) -> Result<RatFunc> {
    check_slot(kt, j, norm)?;
    Ok(norm.apply(recursive_standard(kt, j)?))
}

fn recursive_standard(kt: KType, j: usize) -> Result<RatFunc> {
    static CACHE: OnceLock<MuCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("eigenvalue cache poisoned").get(&(kt, j)) {
        return Ok(v.clone());
    }
    let v = if kt.is_mult_one() {
        mult_one_scalar(kt)?
    } else {
        let (p, f) = [Step::Straight, Step::Diagonal, Step::Steep]
            .into_iter()
            .find_map(|st| recursion_step(kt, j, st))
            .ok_or_else(|| Error::invariant(format!("no recursion reaches slot {j} of {kt}")))?;
        let pj = if (j as i64) < kt.a() { j } else { p.a() as usize };
        f * recursive_standard(p, pj)?
    };
    cache.write().expect("eigenvalue cache poisoned").insert((kt, j), v.clone());
    Ok(v)
}

/// The last slot of `kt` reached through one explicit step, for cross-checks.
pub fn last_slot_via(kt: KType, step: Step) -> Result<Option<RatFunc>> {
    let j = kt.a() as usize;
    match recursion_step(kt, j, step) {
        None => Ok(None),
        Some((p, f)) => Ok(Some(f * recursive_standard(p, p.a() as usize)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kt(n: i64, m: i64) -> KType {
        KType::new(n, m).unwrap()
    }

    fn t() -> RatFunc {
        RatFunc::reflected_s()
    }

    fn s() -> RatFunc {
        RatFunc::s()
    }

    fn lin(f: &RatFunc, a: i64, b: i64) -> RatFunc {
        f * &RatFunc::int(a) + RatFunc::int(b)
    }

    #[test]
    fn anchors_and_small_closed_forms() {
        assert!(mult_one_scalar(kt(0, 0)).unwrap().is_one());
        assert!(mult_one_scalar(kt(2, 0)).unwrap().is_one());
        let a02 = (lin(&t(), 1, -1) * lin(&t(), 3, -2)) / (lin(&s(), 1, -1) * lin(&s(), 3, -2));
        assert_eq!(mult_one_scalar(kt(0, 2)).unwrap(), a02);
        let a42 = (lin(&t(), 1, 1) * lin(&t(), 3, -2)) / (lin(&s(), 1, 1) * lin(&s(), 3, -2));
        assert_eq!(mult_one_scalar(kt(4, 2)).unwrap(), a42);
        assert!(mult_one_eigenvalue(MultOneFamily::Row4r, 0, NormalizationChoice::standard(1)).is_err());
    }

    #[test]
    fn remark_eigenvalues() {
        let mu1 = eigenvalue_mu(kt(3, 3), 1, NormalizationChoice::standard(0)).unwrap();
        let want = (t() * lin(&t(), 3, -1) * lin(&t(), 3, 1)) / (s() * lin(&s(), 3, -1) * lin(&s(), 3, 1));
        assert_eq!(mu1, want);
        let mu0 = eigenvalue_mu(kt(6, 2), 0, NormalizationChoice::standard(0)).unwrap();
        assert_eq!(mu0, (t() * lin(&t(), 1, 1)) / (s() * lin(&s(), 1, 1)));
        let one_step = eigenvalue_mu_recursive(kt(3, 1), 0, NormalizationChoice::standard(0)).unwrap();
        assert_eq!(one_step, t() / s());
    }

    #[test]
    fn closed_and_recursive_agree_on_small_ktypes() {
        for k in KType::up_to(16) {
            for j in 0..k.dim() {
                let norm = NormalizationChoice::standard(k.slot_parity(j));
                assert_eq!(
                    eigenvalue_mu(k, j, norm).unwrap(),
                    eigenvalue_mu_recursive(k, j, norm).unwrap(),
                    "{k} slot {j}"
                );
            }
        }
    }

    #[test]
    fn wrong_parity_is_rejected() {
        assert!(eigenvalue_mu(kt(3, 3), 1, NormalizationChoice::standard(1)).is_err());
    }
}
