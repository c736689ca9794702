//! Experiment drivers: the two-dimensional deformation, diagonal metrics,
//! verification suites and file formats used by the command-line tool.

pub mod diagonal;
pub mod dim2;
pub mod io;
pub mod verify;

pub use diagonal::diagonal_metric_spectrum;
pub use dim2::{
    bracket_tables, dim2_gram_closed_form, locus_residual, scan_grid, BracketTables, Dim2Params,
    Range, ScanRecord,
};
pub use verify::{run_verify_suite, suite_check_ids, CheckResult, Status, VerifyReport, SUITES};
