use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MMatrixOracle,
    VAction,
    EigenvalueOracle,
    Recurrences,
    FunctionalEquation,
    Appendix,
    #[serde(rename = "paper-values")]
    PrintedValues,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::MMatrixOracle,
        Suite::VAction,
        Suite::EigenvalueOracle,
        Suite::Recurrences,
        Suite::FunctionalEquation,
        Suite::Appendix,
        Suite::PrintedValues,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MMatrixOracle => "m-matrix-oracle",
            Suite::VAction => "v-action",
            Suite::EigenvalueOracle => "eigenvalue-oracle",
            Suite::Recurrences => "recurrences",
            Suite::FunctionalEquation => "functional-equation",
            Suite::Appendix => "appendix",
            Suite::PrintedValues => "paper-values",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == text.trim())
            .ok_or_else(|| Error::precondition(format!("unknown suite {text:?}")))
    }
}

/// One failed check: which statement, on which inputs, what was expected and
/// what came out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub statement: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Extra findings that are not pass/fail, e.g. which reading of a formula held.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: Suite) -> Self {
        SuiteReport { suite, cases: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Counts one case and records a failure when `pass` is false.
    pub fn check(&mut self, pass: bool, statement: &str, inputs: impl fmt::Display, expected: impl fmt::Display, got: impl fmt::Display) {
        self.cases += 1;
        if !pass {
            self.failures.push(Failure {
                statement: statement.to_string(),
                inputs: inputs.to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub nmax: i64,
    pub suites: Vec<SuiteReport>,
    /// Which printed variant of the monomial-norm formula the direct expansion
    /// confirms, when the appendix suite ran.
    pub arbitration: Option<String>,
}

impl VerifyReport {
    pub fn cases(&self) -> usize {
        self.suites.iter().map(|s| s.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    /// Plain-text rendering; shows at most `max_listed` failures per suite.
    pub fn render_text(&self, max_listed: usize) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let status = if s.ok() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {:<20} cases={} failures={}", s.suite.name(), s.cases, s.failures.len());
            for f in s.failures.iter().take(max_listed) {
                let _ = writeln!(out, "  {} [{}]: expected {}, got {}", f.statement, f.inputs, f.expected, f.got);
            }
            if s.failures.len() > max_listed {
                let _ = writeln!(out, "  ... {} more", s.failures.len() - max_listed);
            }
            for n in &s.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        if let Some(a) = &self.arbitration {
            let _ = writeln!(out, "arbitration: {a}");
        }
        let _ = writeln!(out, "total cases={} failures={}", self.cases(), self.failures());
        out
    }
}
