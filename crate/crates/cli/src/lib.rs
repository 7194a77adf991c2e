//! Batch front end for `fano-toric-core`: problem files in, reports out.

pub mod problem;
pub mod report;
pub mod run;

pub use problem::{parse_problem, ProblemFile, Task, ValidationErrors};
pub use report::Report;
pub use run::{run, Outcome, RunError, RunOptions};
