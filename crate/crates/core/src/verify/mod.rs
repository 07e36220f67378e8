//! Verification suites: each one re-derives a family of stated identities and
//! records failures as data.

pub mod report;
pub mod suites;
pub mod v_action;

pub use report::{Failure, Suite, SuiteReport, VerifyReport};
pub use suites::{run, run_suite};
