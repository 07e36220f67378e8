//! K-type lattice diagrams annotated with vanishing orders at a point.

use std::fmt::Write as _;

use g2ks::algebra::{format_rational, Rational};
use g2ks::g2::KType;
use g2ks::intertwiner::{eigenvalue_table, special_subrep, SpecialSubrep, SubrepName};
use g2ks::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct LatticePoint {
    pub ktype: KType,
    /// `(slot, order)` for every slot of the chosen parity.
    pub orders: Vec<(usize, i64)>,
    pub highlighted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeDiagram {
    pub eps: u8,
    pub s0: String,
    pub bound: i64,
    pub max_n: i64,
    pub max_m: i64,
    /// Named subrepresentations whose special point is `(eps, s0)`.
    pub highlights: Vec<String>,
    pub points: Vec<LatticePoint>,
}

/// Special subrepresentations living at `(eps, s0)`.
fn matching_subreps(eps: u8, s0: &Rational) -> Vec<SpecialSubrep> {
    let mut names = vec![SubrepName::Ladder, SubrepName::DoubleLadder, SubrepName::Lds];
    if s0.is_integer() {
        let k = 2 * s0.to_integer();
        if let Ok(k) = i64::try_from(k) {
            if k >= 6 {
                names.push(SubrepName::Qds(k));
            }
        }
    }
    names
        .into_iter()
        .filter_map(|n| special_subrep(n).ok())
        .filter(|sub| sub.eps == eps && &sub.s0 == s0)
        .collect()
}

pub fn build(eps: u8, s0: &Rational, bound: i64) -> Result<LatticeDiagram> {
    if eps > 1 {
        return Err(Error::precondition(format!("ε must be 0 or 1, got {eps}")));
    }
    if bound < 0 {
        return Err(Error::precondition(format!("bound must be nonnegative, got {bound}")));
    }
    let subs = matching_subreps(eps, s0);
    let table = eigenvalue_table(eps, bound)?;
    let mut points: Vec<LatticePoint> = Vec::new();
    for (kt, slot, mu) in table.iter() {
        let order = mu
            .checked_valuation(s0)
            .map_err(|_| Error::invariant(format!("eigenvalue at {kt} slot {slot} vanishes identically")))?;
        match points.last_mut() {
            Some(p) if p.ktype == *kt => p.orders.push((*slot, order)),
            _ => points.push(LatticePoint {
                ktype: *kt,
                orders: vec![(*slot, order)],
                highlighted: subs.iter().any(|s| s.contains(*kt)),
            }),
        }
    }
    points.sort_by_key(|p| (p.ktype.n, p.ktype.m));
    for p in &mut points {
        p.orders.sort();
    }
    Ok(LatticeDiagram {
        eps,
        s0: format_rational(s0),
        bound,
        max_n: points.iter().map(|p| p.ktype.n).max().unwrap_or(0),
        max_m: points.iter().map(|p| p.ktype.m).max().unwrap_or(0),
        highlights: subs.iter().map(|s| s.name.to_string()).collect(),
        points,
    })
}

fn cell_text(p: &LatticePoint) -> String {
    p.orders.iter().map(|(_, o)| o.to_string()).collect::<Vec<_>>().join(",")
}

/// Rows are `m` from the top down, columns are `n`. Each K-type shows its
/// orders slot by slot; highlighted ones are bracketed.
pub fn render_ascii(d: &LatticeDiagram) -> String {
    let width = d.points.iter().map(|p| cell_text(p).len() + 2).max().unwrap_or(3).max(3);
    let mut out = String::new();
    let _ = writeln!(out, "ε = {}, s0 = {}, n+m <= {}", d.eps, d.s0, d.bound);
    if d.highlights.is_empty() {
        let _ = writeln!(out, "highlighted: none");
    } else {
        let _ = writeln!(out, "highlighted: {}", d.highlights.join(", "));
    }
    let at = |n: i64, m: i64| d.points.iter().find(|p| p.ktype.n == n && p.ktype.m == m);
    for m in (0..=d.max_m).rev() {
        let mut line = format!("{m:>3} |");
        for n in 0..=d.max_n {
            let cell = match at(n, m) {
                Some(p) if p.highlighted => format!("[{}]", cell_text(p)),
                Some(p) => format!(" {} ", cell_text(p)),
                None => ".".to_string(),
            };
            let _ = write!(line, "{cell:^width$}");
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    let mut axis = "    +".to_string();
    for n in 0..=d.max_n {
        let _ = write!(axis, "{n:^width$}");
    }
    let _ = writeln!(out, "{}", axis.trim_end());
    out
}

const STEP: i64 = 28;
const MARGIN: i64 = 40;

fn glyph_colour(order: i64) -> &'static str {
    match order.signum() {
        -1 => "#c0392b",
        0 => "#7f8c8d",
        _ => "#2471a3",
    }
}

/// `(n, m)` as plane coordinates; each slot order is a small stacked label.
pub fn render_svg(d: &LatticeDiagram) -> String {
    let w = 2 * MARGIN + STEP * d.max_n;
    let h = 2 * MARGIN + STEP * d.max_m;
    let x = |n: i64| MARGIN + STEP * n;
    let y = |m: i64| h - MARGIN - STEP * m;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace">"#
    );
    let _ = writeln!(
        out,
        r#"<title>K-types with n+m &lt;= {}, ε = {}, s0 = {}; highlighted: {}</title>"#,
        d.bound,
        d.eps,
        d.s0,
        if d.highlights.is_empty() { "none".to_string() } else { d.highlights.join(", ") }
    );
    let _ = writeln!(out, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000"/>"##, x(0), y(0), x(d.max_n), y(0));
    let _ = writeln!(out, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000"/>"##, x(0), y(0), x(0), y(d.max_m));
    for p in &d.points {
        let (cx, cy) = (x(p.ktype.n), y(p.ktype.m));
        let (fill, r) = if p.highlighted { ("#f5b041", 6) } else { ("#ffffff", 4) };
        let _ = writeln!(
            out,
            r##"<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}" stroke="#000" data-n="{}" data-m="{}"/>"##,
            p.ktype.n, p.ktype.m
        );
        for (i, (slot, order)) in p.orders.iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="7" fill="{}" data-slot="{slot}">{order}</text>"#,
                cx + 6,
                cy - 4 - 7 * i as i64,
                glyph_colour(*order)
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    out
}
