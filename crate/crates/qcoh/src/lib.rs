//! Verification suites, reports and the command-line front end for
//! [`qcoh_core`].

pub mod cli;
pub mod report;
pub mod suites;

pub use report::Report;
pub use suites::{Options, Suite};
