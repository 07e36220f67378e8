//! Dense matrices over Q(s), fraction-free solving and local Smith invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RFMatrixWire", into = "RFMatrixWire")]
pub struct RFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct RFMatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RatFunc>>,
}

impl From<RFMatrix> for RFMatrixWire {
    fn from(m: RFMatrix) -> Self {
        RFMatrixWire {
            rows: m.rows,
            cols: m.cols,
            entries: m.to_rows(),
        }
    }
}

impl TryFrom<RFMatrixWire> for RFMatrix {
    type Error = String;
    fn try_from(w: RFMatrixWire) -> std::result::Result<Self, String> {
        if w.entries.len() != w.rows || w.entries.iter().any(|r| r.len() != w.cols) {
            return Err(format!("entries do not form a {}x{} grid", w.rows, w.cols));
        }
        Ok(RFMatrix {
            rows: w.rows,
            cols: w.cols,
            data: w.entries.into_iter().flatten().collect(),
        })
    }
}

impl RFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RFMatrix {
            rows,
            cols,
            data: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RFMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn diagonal(entries: &[RatFunc]) -> Self {
        let mut m = RFMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        RFMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn column(entries: Vec<RatFunc>) -> Self {
        let n = entries.len();
        RFMatrix {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn from_columns(cols: &[Vec<RatFunc>], rows: usize) -> Self {
        let mut m = RFMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFunc>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column_vec(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFunc> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> RFMatrix {
        let mut t = RFMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> RFMatrix {
        RFMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise `s -> 3 - s`.
    pub fn reflect(&self) -> RFMatrix {
        self.map(RatFunc::reflect)
    }

    pub fn scale(&self, c: &RatFunc) -> RFMatrix {
        self.map(|x| x * c)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RFMatrix {
        let mut m = RFMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn hstack(blocks: &[RFMatrix]) -> RFMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "hstack row mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = RFMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        m
    }

    pub fn checked_mul(&self, rhs: &RFMatrix) -> Result<RFMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RFMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RatFunc::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &RFMatrix) -> Result<RFMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::precondition("matrix shape mismatch"));
        }
        Ok(RFMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<RatFunc> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Rank over Q(s).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Poly>> = self.to_rows().iter().map(|r| clear_row(r)).collect();
        bareiss(&mut rows, self.cols).len()
    }
}

impl fmt::Display for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Multiplies a row by the lcm of its denominators.
fn clear_row(row: &[RatFunc]) -> Vec<Poly> {
    let mut l = Poly::one();
    for e in row {
        let g = Poly::gcd(&l, e.den());
        l = &l * &e.den().exact_div(&g).expect("gcd divides");
    }
    row.iter()
        .map(|e| &e.num().clone() * &l.exact_div(e.den()).expect("lcm is a multiple"))
        .collect()
}

/// Fraction-free elimination over Q[s] on the first `ncols` columns, in place.
/// Returns the pivot columns in order; rows are permuted so that row `k`
/// holds the `k`-th pivot, and every later row is zero in all eliminated
/// columns. Entries right of `ncols` are carried along.
fn bareiss(rows: &mut [Vec<Poly>], ncols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut prev = Poly::one();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..ncols {
        if k == nrows {
            break;
        }
        let Some(p) = (k..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(k, p);
        for i in k + 1..nrows {
            let lead = rows[i][c].clone();
            for j in c + 1..width {
                let t = &(&rows[k][c] * &rows[i][j]) - &(&lead * &rows[k][j]);
                rows[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            rows[i][c] = Poly::zero();
        }
        // columns skipped for lack of a pivot stay unreduced in lower rows
        // only if they are already zero there, so the invariant holds.
        prev = rows[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    pivots
}

/// Solves `m * X = b` for a full-column-rank `m` (possibly overdetermined).
pub fn linsolve_many(m: &RFMatrix, b: &RFMatrix) -> Result<RFMatrix> {
    if m.rows != b.rows {
        return Err(Error::precondition(format!(
            "right-hand side has {} rows, matrix has {}",
            b.rows, m.rows
        )));
    }
    let n = m.cols;
    let width = n + b.cols;
    let aug = RFMatrix::hstack(&[m.clone(), b.clone()]);
    let mut rows: Vec<Vec<Poly>> = aug.to_rows().iter().map(|r| clear_row(r)).collect();
    let pivots = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            needed: n,
        });
    }
    if rows[n..].iter().any(|r| r[n..width].iter().any(|e| !e.is_zero())) {
        return Err(Error::Inconsistent);
    }
    let mut x = RFMatrix::zeros(n, b.cols);
    for col in 0..b.cols {
        for i in (0..n).rev() {
            let mut acc = RatFunc::from_poly(rows[i][n + col].clone());
            for j in i + 1..n {
                if !rows[i][j].is_zero() {
                    acc = &acc - &(&RatFunc::from_poly(rows[i][j].clone()) * x.get(j, col));
                }
            }
            let piv = RatFunc::from_poly(rows[i][i].clone());
            x.set(i, col, acc.checked_div(&piv)?);
        }
    }
    Ok(x)
}

/// Single right-hand side form of [`linsolve_many`].
pub fn linsolve(m: &RFMatrix, b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    Ok(linsolve_many(m, &RFMatrix::column(b.to_vec()))?.column_vec(0))
}

/// Elementary-divisor valuations of a square matrix at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSmith {
    /// Valuations of the elementary divisors of the original matrix, ascending.
    /// Negative values come from poles.
    pub valuations: Vec<i64>,
    /// Power of `(s - s0)` the matrix was multiplied by to make every entry
    /// regular at `s0` before elimination.
    pub cleared_power: i64,
}

/// Smith form over the local ring at `s0`: elimination with minimal-valuation
/// pivots, using only row operations invertible at `s0`.
pub fn smith_local_valuations(m: &RFMatrix, s0: &Rational) -> Result<LocalSmith> {
    if !m.is_square() {
        return Err(Error::precondition("local Smith form needs a square matrix"));
    }
    let n = m.rows;
    let cleared = m
        .entries()
        .filter_map(|e| e.valuation(s0))
        .map(|v| (-v).max(0))
        .max()
        .unwrap_or(0);
    let shift = RatFunc::from_poly(Poly::linear(Rational::from_integer(1.into()), -s0.clone()))
        .pow(cleared as i32)?;
    let mut a: Vec<Vec<RatFunc>> = m.scale(&shift).to_rows();
    let mut live_rows: Vec<usize> = (0..n).collect();
    let mut live_cols: Vec<usize> = (0..n).collect();
    let mut vals = Vec::with_capacity(n);
    while !live_rows.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for &i in &live_rows {
            for &j in &live_cols {
                if let Some(v) = a[i][j].valuation(s0) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            return Err(Error::SingularEverywhere);
        };
        let pivot = a[pi][pj].clone();
        for &i in &live_rows {
            if i == pi || a[i][pj].is_zero() {
                continue;
            }
            // factor has valuation >= 0, so this row operation is local-unimodular
            let factor = a[i][pj].checked_div(&pivot)?;
            for &j in &live_cols {
                let t = &a[i][j] - &(&factor * &a[pi][j]);
                a[i][j] = t;
            }
        }
        vals.push(v - cleared);
        live_rows.retain(|&i| i != pi);
        live_cols.retain(|&j| j != pj);
    }
    vals.sort_unstable();
    Ok(LocalSmith {
        valuations: vals,
        cleared_power: cleared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn p(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn linsolve_examples() {
        let id = RFMatrix::identity(2);
        let b = vec![p(&[1, 2]), p(&[0, 0, 3])];
        assert_eq!(linsolve(&id, &b).unwrap(), b);

        let m = RFMatrix::diagonal(&[RatFunc::s(), RatFunc::s()]);
        let x = linsolve(&m, &[RatFunc::s(), p(&[0, 0, 1])]).unwrap();
        assert_eq!(x, vec![RatFunc::one(), RatFunc::s()]);

        let tall = RFMatrix::column(vec![RatFunc::s(), p(&[0, 0, 1])]);
        let x = linsolve(&tall, &[p(&[0, 0, 1]), p(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(x, vec![RatFunc::s()]);
    }

    #[test]
    fn linsolve_reports_failures_distinctly() {
        let tall = RFMatrix::column(vec![RatFunc::s(), p(&[0, 0, 1])]);
        assert_eq!(
            linsolve(&tall, &[RatFunc::one(), RatFunc::one()]),
            Err(Error::Inconsistent)
        );
        let sing = RFMatrix::from_rows(vec![
            vec![RatFunc::s(), RatFunc::one()],
            vec![p(&[0, 0, 1]), RatFunc::s()],
        ]);
        assert_eq!(
            linsolve(&sing, &[RatFunc::one(), RatFunc::one()]),
            Err(Error::RankDeficient { rank: 1, needed: 2 })
        );
    }

    #[test]
    fn linsolve_with_fractions() {
        let m = RFMatrix::from_rows(vec![
            vec![RatFunc::s().inv().unwrap(), RatFunc::one()],
            vec![RatFunc::one(), &RatFunc::s() + &RatFunc::one()],
        ]);
        let x = vec![p(&[1, 1]), p(&[2, 0, 1]).inv().unwrap()];
        let b = m.checked_mul(&RFMatrix::column(x.clone())).unwrap().column_vec(0);
        assert_eq!(linsolve(&m, &b).unwrap(), x);
    }

    #[test]
    fn smith_examples() {
        let sm2 = p(&[-2, 1]);
        let d = RFMatrix::diagonal(&[RatFunc::one(), sm2.clone(), &sm2 * &sm2]);
        assert_eq!(smith_local_valuations(&d, &int(2)).unwrap().valuations, vec![0, 1, 2]);
        let t = RFMatrix::from_rows(vec![
            vec![RatFunc::one(), RatFunc::one()],
            vec![RatFunc::zero(), sm2.clone()],
        ]);
        assert_eq!(smith_local_valuations(&t, &int(2)).unwrap().valuations, vec![0, 1]);
        // a matrix with equal-valuation entries whose determinant vanishes to order 2
        let u = RFMatrix::from_rows(vec![
            vec![sm2.clone(), sm2.clone()],
            vec![sm2.clone(), &sm2 * &p(&[-1, 1])],
        ]);
        assert_eq!(smith_local_valuations(&u, &int(2)).unwrap().valuations, vec![1, 2]);
        let poles = RFMatrix::diagonal(&[sm2.inv().unwrap(), RatFunc::one()]);
        let out = smith_local_valuations(&poles, &int(2)).unwrap();
        assert_eq!(out.valuations, vec![-1, 0]);
        assert_eq!(out.cleared_power, 1);
        let zero = RFMatrix::zeros(2, 2);
        assert_eq!(smith_local_valuations(&zero, &int(2)), Err(Error::SingularEverywhere));
    }

    #[test]
    fn json_shape() {
        let m = RFMatrix::from_rows(vec![vec![RatFunc::s(), RatFunc::zero()]]);
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["rows"], 1);
        assert_eq!(v["cols"], 2);
        assert_eq!(v["entries"][0][0]["num"], serde_json::json!(["0/1", "1/1"]));
        let back: RFMatrix = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
    }
}
