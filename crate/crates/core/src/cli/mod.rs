//! Command-line surface: expression syntax, configuration, reports and the
//! batch verification suite.

pub mod commands;
pub mod config;
pub mod expr;
pub mod report;
pub mod suite;

pub use config::Config;
pub use expr::{parse_dvec, parse_expr, parse_weyl, parse_witt, Expr};
pub use report::{CheckResult, Report, Status};
pub use suite::{run_suite, verify_all, Criterion};
