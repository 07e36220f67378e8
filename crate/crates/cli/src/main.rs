mod lattice;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g2ks::algebra::{format_rational, parse_rational, RatFunc, Rational};
use g2ks::g2::{basis_v, basis_vp, transition_matrix, KType, Param, SlotKind};
use g2ks::intertwiner::{
    a_matrix, classify, eigenvalue_mu, eigenvalue_table, reducibility, reducibility_scan, special_subrep,
    vanishing_orders, NormalizationChoice, Point, SubrepName,
};
use g2ks::verify::{self, Suite};
use g2ks::{Error, Result};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "g2ks", version, about = "Exact Knapp-Stein intertwiners on the degenerate principal series of split G2")]
struct Cli {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel table construction.
    #[arg(long, global = true, env = "G2KS_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transition matrix between neighbouring K-types, as JSON.
    Transition {
        #[arg(long, value_parser = parse_ktype)]
        from: KType,
        #[arg(long, value_parser = parse_ktype)]
        to: KType,
        /// Evaluate at 3 - s instead of s.
        #[arg(long)]
        reflected: bool,
    },
    /// Coefficients of the v and v' basis vectors in the ζ basis.
    Basis {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value_t = TextOrJson::Json)]
        format: TextOrJson,
    },
    /// Standard-normalized eigenvalues of the intertwiner at one K-type.
    Eigenvalues {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        /// Only slots of this parity; default is every slot with its own parity.
        #[arg(long)]
        eps: Option<u8>,
        /// Use the regularized family instead of the standard one.
        #[arg(long)]
        regularized: bool,
        #[arg(long)]
        json: bool,
    },
    /// Full intertwiner matrix on the slots of one parity, with its audit.
    Amatrix {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        eps: u8,
        #[arg(long)]
        regularized: bool,
    },
    /// Vanishing orders of the intertwiner at a point, diagonal and Smith-local.
    Orders {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        eps: u8,
        #[arg(long, value_parser = parse_rational_arg)]
        s: Rational,
    },
    /// Closed-form reducibility test, optionally with an eigenvalue scan.
    Reducibility {
        #[arg(long, value_parser = parse_rational_arg)]
        s: Rational,
        #[arg(long)]
        eps: u8,
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 24)]
        bound: i64,
    },
    /// Labels of a point: reducible, complementary series, unitary axis, generic.
    Classify {
        /// `P/Q`, or `axis` for a generic point with real part 3/2.
        #[arg(long)]
        s: String,
        #[arg(long)]
        eps: u8,
    },
    /// A named subrepresentation and a check of its vanishing pattern.
    Subrep {
        /// ladder, double-ladder, lds or qds.
        #[arg(long)]
        name: String,
        /// Parameter of qds (even, at least 6).
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, default_value_t = 24)]
        bound: i64,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value_t = 12)]
        nmax: i64,
        /// Comma-separated suite names; default all, an empty string runs none.
        #[arg(long)]
        suites: Option<String>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Json)]
        format: TextOrJson,
    },
    /// K-type lattice annotated with vanishing orders at a point.
    Lattice {
        #[arg(long)]
        eps: u8,
        #[arg(long, value_parser = parse_rational_arg)]
        s: Rational,
        #[arg(long, default_value_t = 24)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Style::Ascii)]
        format: Style,
    },
    /// Eigenvalues or valuations over a range of n + m.
    Table {
        #[arg(long, value_enum, default_value_t = Quantity::Eigenvalues)]
        what: Quantity,
        #[arg(long)]
        eps: u8,
        /// Range of n + m, `LO..HI` inclusive.
        #[arg(long, default_value = "0..8")]
        range: String,
        /// Point for valuations.
        #[arg(long, value_parser = parse_rational_arg)]
        s: Option<Rational>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Eigenvalues,
    Valuations,
}

fn parse_ktype(text: &str) -> std::result::Result<KType, String> {
    let (n, m) = text.split_once(',').ok_or_else(|| format!("expected n,m, got {text:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {text:?}"))?;
    let m = m.trim().parse().map_err(|_| format!("bad m in {text:?}"))?;
    KType::new(n, m).map_err(|e| e.to_string())
}

fn parse_rational_arg(text: &str) -> std::result::Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn check_eps(eps: u8) -> Result<u8> {
    if eps > 1 {
        return Err(Error::precondition(format!("ε must be 0 or 1, got {eps}")));
    }
    Ok(eps)
}

fn occurring(n: i64, m: i64) -> Result<KType> {
    let kt = KType::new(n, m)?;
    if !kt.occurs() {
        return Err(Error::precondition(format!("{kt} does not occur")));
    }
    Ok(kt)
}

fn norm(eps: u8, regularized: bool) -> NormalizationChoice {
    if regularized {
        NormalizationChoice::regularized(eps)
    } else {
        NormalizationChoice::standard(eps)
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::invariant(format!("serialization failed: {e}")))
}

/// Parses `LO..HI`; an inverted range is empty, not an error.
fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("expected a range LO..HI, got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 0 {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn cmd_basis(kt: KType, format: TextOrJson) -> Result<String> {
    #[derive(Serialize)]
    struct Slot {
        slot: usize,
        kind: &'static str,
        k: i64,
        eps: u8,
        coefficients: g2ks::g2::ZetaVector,
    }
    let mut slots = Vec::new();
    for j in 0..kt.dim() {
        let (kind, k, v) = match SlotKind::of_slot(j) {
            SlotKind::V(k) => ("v", k, basis_v(kt, k)?),
            SlotKind::VPrime(k) => ("v'", k, basis_vp(kt, k)?),
        };
        slots.push(Slot { slot: j, kind, k, eps: kt.slot_parity(j), coefficients: v });
    }
    match format {
        TextOrJson::Json => to_json(&json!({ "ktype": kt, "slots": slots })),
        TextOrJson::Text => {
            let mut out = format!("K-type {kt}, a = {}, {} slots\n", kt.a(), slots.len());
            for s in &slots {
                let _ = writeln!(out, "slot {} = {}(s,{}), ε = {}", s.slot, s.kind, s.k, s.eps);
                for (a, c) in s.coefficients.coeffs() {
                    let _ = writeln!(out, "  ζ_{a}: {c}");
                }
            }
            Ok(out)
        }
    }
}

fn cmd_eigenvalues(kt: KType, eps: Option<u8>, regularized: bool, as_json: bool) -> Result<String> {
    let slots: Vec<usize> = match eps {
        Some(e) => kt.eps_slots(check_eps(e)?),
        None => (0..kt.dim()).collect(),
    };
    let mut rows = Vec::new();
    for j in slots {
        let e = kt.slot_parity(j);
        rows.push((j, e, eigenvalue_mu(kt, j, norm(e, regularized))?));
    }
    if as_json {
        let rows: Vec<_> = rows.iter().map(|(j, e, mu)| json!({ "slot": j, "eps": e, "mu": mu })).collect();
        return to_json(&json!({ "ktype": kt, "regularized": regularized, "eigenvalues": rows }));
    }
    let mut out = String::new();
    for (j, e, mu) in rows {
        let _ = writeln!(out, "{kt} slot {j} ε={e}: {mu}");
    }
    Ok(out)
}

fn cmd_verify(nmax: i64, suites: Option<String>, format: TextOrJson) -> Result<String> {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?,
    };
    let report = verify::run(nmax, &suites)?;
    match format {
        TextOrJson::Json => to_json(&report),
        TextOrJson::Text => Ok(report.render_text(10)),
    }
}

fn cmd_table(what: Quantity, eps: u8, range: &str, s: Option<Rational>, format: TableFormat) -> Result<String> {
    let eps = check_eps(eps)?;
    let (lo, hi) = parse_range(range)?;
    let s0 = match (what, s) {
        (Quantity::Valuations, None) => return Err(Error::precondition("valuations need --s")),
        (_, s) => s,
    };
    let entries = if hi < lo { Default::default() } else { eigenvalue_table(eps, hi)? };
    let mut rows: Vec<(KType, usize, &RatFunc)> = entries
        .iter()
        .filter(|(kt, _, _)| kt.n + kt.m >= lo)
        .map(|(kt, j, mu)| (*kt, *j, mu))
        .collect();
    rows.sort_by_key(|(kt, j, _)| (kt.n, kt.m, *j));
    let value_column = match what {
        Quantity::Eigenvalues => "mu",
        Quantity::Valuations => "order",
    };
    let columns = ["n", "m", "slot", "eps", value_column];
    let value = |mu: &RatFunc| -> Result<serde_json::Value> {
        Ok(match &s0 {
            Some(s0) if matches!(what, Quantity::Valuations) => json!(mu
                .checked_valuation(s0)
                .map_err(|_| Error::invariant("an eigenvalue vanishes identically"))?),
            _ => serde_json::to_value(mu).map_err(|e| Error::invariant(e.to_string()))?,
        })
    };
    match format {
        TableFormat::Json => {
            let mut out_rows = Vec::new();
            for (kt, j, mu) in rows {
                out_rows.push(json!({ "n": kt.n, "m": kt.m, "slot": j, "eps": eps, value_column: value(mu)? }));
            }
            let mut doc = json!({ "columns": columns, "eps": eps, "rows": out_rows });
            if let Some(s0) = &s0 {
                doc["s0"] = json!(format_rational(s0));
            }
            to_json(&doc)
        }
        TableFormat::Csv => {
            let mut out = columns.join(",") + "\n";
            for (kt, j, mu) in rows {
                let cell = match what {
                    Quantity::Eigenvalues => mu.to_string(),
                    Quantity::Valuations => value(mu)?.to_string(),
                };
                let _ = writeln!(out, "{},{},{},{},{}", kt.n, kt.m, j, eps, csv_field(&cell));
            }
            Ok(out)
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Transition { from, to, reflected } => {
            let param = if reflected { Param::Reflected } else { Param::S };
            let t = transition_matrix(from, to, param)?;
            to_json(&json!({ "from": from, "to": to, "reflected": reflected, "matrix": *t }))
        }
        Command::Basis { n, m, format } => cmd_basis(occurring(n, m)?, format),
        Command::Eigenvalues { n, m, eps, regularized, json } => cmd_eigenvalues(occurring(n, m)?, eps, regularized, json),
        Command::Amatrix { n, m, eps, regularized } => {
            let a = a_matrix(occurring(n, m)?, check_eps(eps)?, norm(eps, regularized))?;
            to_json(&*a)
        }
        Command::Orders { n, m, eps, s } => {
            to_json(&vanishing_orders(occurring(n, m)?, check_eps(eps)?, &s, NormalizationChoice::standard(eps))?)
        }
        Command::Reducibility { s, eps, scan, bound } => {
            let r = reducibility(check_eps(eps)?, &s);
            if scan {
                let witnesses = reducibility_scan(eps, &s, bound)?;
                to_json(&json!({ "reducibility": r, "scan": { "bound": bound, "witnesses": witnesses } }))
            } else {
                to_json(&r)
            }
        }
        Command::Classify { s, eps } => {
            let point: Point = s.parse()?;
            let labels = classify(check_eps(eps)?, &point);
            to_json(&json!({ "eps": eps, "s": s.trim(), "labels": labels }))
        }
        Command::Subrep { name, k, bound } => {
            let sub = special_subrep(SubrepName::parse(&name, k)?)?;
            let report = sub.check(bound)?;
            to_json(&json!({ "subrep": sub, "check": report }))
        }
        Command::Verify { nmax, suites, format } => cmd_verify(nmax, suites, format),
        Command::Lattice { eps, s, bound, format } => {
            let d = lattice::build(eps, &s, bound)?;
            Ok(match format {
                Style::Ascii => lattice::render_ascii(&d),
                Style::Svg => lattice::render_svg(&d),
            })
        }
        Command::Table { what, eps, range, s, format } => cmd_table(what, eps, &range, s, format),
    }
}

fn exit_code(e: &Error) -> ExitCode {
    if e.is_precondition() {
        ExitCode::from(2)
    } else {
        ExitCode::from(3)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set up {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let out_path = cli.out.clone();
    let result = match std::panic::catch_unwind(move || run(cli)) {
        Ok(r) => r,
        Err(_) => {
            eprintln!("error: internal assertion failed");
            return ExitCode::from(3);
        }
    };
    let text = match result {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match out_path {
        Some(p) => std::fs::write(&p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
