//! Full Knapp–Stein matrices `A_{n,m}(s)` solved from the intertwining relations
//! `T(3-s) A_source = A_target T(s)`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::eigen::{eigenvalue_mu, mult_one_scalar, NormalizationChoice};
use crate::algebra::{linsolve_many, RFMatrix, RatFunc};
use crate::error::{Error, Result};
use crate::g2::{transition_matrix, Edge, KType, Param};

/// One intertwining relation between a solved source and the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub source: KType,
    pub target: KType,
    pub edge: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub upper_triangular: bool,
    pub diagonal_matches: bool,
    /// Relations whose residual is nonzero.
    pub failed_relations: Vec<Relation>,
}

impl Audit {
    pub fn ok(&self) -> bool {
        self.upper_triangular && self.diagonal_matches && self.failed_relations.is_empty()
    }
}

/// `A_{n,m}(s)` restricted to the slots of one parity, in the ordered bases at
/// `s` and `3 - s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AMatrix {
    pub ktype: KType,
    pub eps: u8,
    /// Slots of the ordered basis that make up the rows and columns.
    pub slots: Vec<usize>,
    pub entries: RFMatrix,
    pub relations: Vec<Relation>,
    pub audit: Audit,
}

impl AMatrix {
    /// Entry by full slot indices.
    pub fn entry(&self, row_slot: usize, col_slot: usize) -> Option<&RatFunc> {
        let i = self.slots.iter().position(|&x| x == row_slot)?;
        let j = self.slots.iter().position(|&x| x == col_slot)?;
        Some(self.entries.get(i, j))
    }
}

/// The three lower neighbours `(n-3, m-1)`, `(n-1, m-1)`, `(n-3, m+1)`.
fn lower_sources(kt: KType) -> Vec<KType> {
    [(-3, -1), (-1, -1), (-3, 1)]
        .into_iter()
        .map(|(dn, dm)| KType { n: kt.n + dn, m: kt.m + dm })
        .collect()
}

/// Same-level neighbours `(n+1, m-1)` and `(n-1, m+1)`.
fn level_sources(kt: KType) -> Vec<KType> {
    [(1, -1), (-1, 1)]
        .into_iter()
        .map(|(dn, dm)| KType { n: kt.n + dn, m: kt.m + dm })
        .collect()
}

fn usable(src: KType, tgt: KType, eps: u8) -> Option<Edge> {
    if src.n < 0 || src.m < 0 || !src.occurs() || src.eps_slots(eps).is_empty() {
        return None;
    }
    Edge::between(src, tgt).ok()
}

/// `T` restricted to the ε-slots on both sides.
fn restricted_transition(src: KType, tgt: KType, eps: u8, param: Param) -> Result<RFMatrix> {
    let t = transition_matrix(src, tgt, param)?;
    Ok(t.select(&tgt.eps_slots(eps), &src.eps_slots(eps)))
}

fn relation_residual(rel: &Relation, eps: u8, a_src: &RFMatrix, a_tgt: &RFMatrix) -> Result<bool> {
    let ts = restricted_transition(rel.source, rel.target, eps, Param::S)?;
    let tt = restricted_transition(rel.source, rel.target, eps, Param::Reflected)?;
    let lhs = tt.checked_mul(a_src)?;
    let rhs = a_tgt.checked_mul(&ts)?;
    Ok(lhs == rhs)
}

type Cache = RwLock<HashMap<(KType, u8), Arc<AMatrix>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `A_{n,m}(s)` on the ε-slots, under the given normalization.
pub fn a_matrix(kt: KType, eps: u8, norm: NormalizationChoice) -> Result<Arc<AMatrix>> {
    if norm.eps != eps % 2 {
        return Err(Error::precondition("normalization and ε disagree"));
    }
    let a = solve(kt, eps % 2, &mut HashSet::new())?;
    if !norm.regularized {
        return Ok(a);
    }
    let f = norm.factor();
    let mut scaled = (*a).clone();
    scaled.entries = scaled.entries.scale(&f);
    Ok(Arc::new(scaled))
}

fn solve(kt: KType, eps: u8, in_progress: &mut HashSet<KType>) -> Result<Arc<AMatrix>> {
    if let Some(a) = cache().read().expect("A-matrix cache poisoned").get(&(kt, eps)) {
        return Ok(a.clone());
    }
    if !kt.occurs() {
        return Err(Error::InvalidKType { n: kt.n, m: kt.m, reason: "does not occur".into() });
    }
    let slots = kt.eps_slots(eps);
    if slots.is_empty() {
        return Err(Error::precondition(format!("{kt} has no slots in ε = {eps}")));
    }
    in_progress.insert(kt);
    let result = solve_uncached(kt, eps, slots, in_progress);
    in_progress.remove(&kt);
    let a = Arc::new(result?);
    let mut w = cache().write().expect("A-matrix cache poisoned");
    Ok(w.entry((kt, eps)).or_insert(a).clone())
}

fn solve_uncached(kt: KType, eps: u8, slots: Vec<usize>, in_progress: &mut HashSet<KType>) -> Result<AMatrix> {
    let d = slots.len();
    let mut relations: Vec<Relation> = lower_sources(kt)
        .into_iter()
        .filter_map(|src| usable(src, kt, eps).map(|edge| Relation { source: src, target: kt, edge }))
        .collect();
    let mut sources: Vec<Arc<AMatrix>> = relations
        .iter()
        .map(|rel| solve(rel.source, eps, in_progress))
        .collect::<Result<_>>()?;

    let entries = if kt.is_mult_one() {
        RFMatrix::from_rows(vec![vec![mult_one_scalar(kt)?]])
    } else {
        match stack_and_solve(kt, eps, &relations, &sources) {
            Ok(x) => x,
            Err(Error::RankDeficient { .. }) => {
                for src in level_sources(kt) {
                    if in_progress.contains(&src) {
                        continue;
                    }
                    if let Some(edge) = usable(src, kt, eps) {
                        let a = solve(src, eps, in_progress)?;
                        relations.push(Relation { source: src, target: kt, edge });
                        sources.push(a);
                    }
                }
                match stack_and_solve(kt, eps, &relations, &sources) {
                    Ok(x) => x,
                    Err(Error::RankDeficient { rank, .. }) => {
                        return Err(Error::Underdetermined {
                            ktype: kt,
                            rank,
                            dim: d,
                            free: free_slots(kt, eps, &relations, &slots)?,
                        })
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(e) => return Err(e),
        }
    };

    let mut failed = Vec::new();
    for (rel, a_src) in relations.iter().zip(&sources) {
        if !relation_residual(rel, eps, &a_src.entries, &entries)? {
            failed.push(*rel);
        }
    }
    let norm = NormalizationChoice::standard(eps);
    let mut diagonal_matches = true;
    for (i, &j) in slots.iter().enumerate() {
        if *entries.get(i, i) != eigenvalue_mu(kt, j, norm)? {
            diagonal_matches = false;
        }
    }
    let audit = Audit {
        upper_triangular: entries.is_upper_triangular(),
        diagonal_matches,
        failed_relations: failed,
    };
    Ok(AMatrix { ktype: kt, eps, slots, entries, relations, audit })
}

/// Solves `X [T_1(s) | T_2(s) | ...] = [T_1(3-s) A_1 | T_2(3-s) A_2 | ...]`.
fn stack_and_solve(kt: KType, eps: u8, relations: &[Relation], sources: &[Arc<AMatrix>]) -> Result<RFMatrix> {
    let d = kt.eps_slots(eps).len();
    if relations.is_empty() {
        return Err(Error::RankDeficient { rank: 0, needed: d });
    }
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (rel, a) in relations.iter().zip(sources) {
        let ts = restricted_transition(rel.source, kt, eps, Param::S)?;
        let tt = restricted_transition(rel.source, kt, eps, Param::Reflected)?;
        rhs.push(tt.checked_mul(&a.entries)?);
        lhs.push(ts);
    }
    let m = RFMatrix::hstack(&lhs);
    let b = RFMatrix::hstack(&rhs);
    Ok(linsolve_many(&m.transpose(), &b.transpose())?.transpose())
}

/// Slots whose row of `A` is not pinned down: greedily keep the rows of the
/// stacked `T(s)` that raise the rank; the rest are free.
fn free_slots(kt: KType, eps: u8, relations: &[Relation], slots: &[usize]) -> Result<Vec<usize>> {
    let blocks = relations
        .iter()
        .map(|rel| restricted_transition(rel.source, kt, eps, Param::S))
        .collect::<Result<Vec<_>>>()?;
    let m = RFMatrix::hstack(&blocks);
    let all_cols: Vec<usize> = (0..m.cols()).collect();
    let mut kept: Vec<usize> = Vec::new();
    let mut free = Vec::new();
    for (i, &slot) in slots.iter().enumerate() {
        let mut trial = kept.clone();
        trial.push(i);
        if m.select(&trial, &all_cols).rank() > kept.len() {
            kept = trial;
        } else {
            free.push(slot);
        }
    }
    Ok(free)
}
