//! Makespan scheduling on identical parallel machines where the processing
//! times themselves are decision variables constrained by a linear system
//! `A x (>=,<=,=) b`, `x >= 0`.
//!
//! The crate provides exact solvers for the polynomial cases (one machine,
//! one or two constraints, fixed machine and constraint counts), a PTAS for a
//! fixed machine count, two approximation algorithms for the general case, a
//! partition-enumeration oracle for testing, and the file formats, instance
//! generators and benchmark harness used by the `slc` binary.

pub mod algorithms;
pub mod bench;
pub mod error;
pub mod generate;
pub mod io;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod tolerance;

pub use error::{Result, SlcError};
pub use model::{
    verify_solution, ConstraintSystem, Instance, ProcessingTimes, Row, Schedule, Sense, Solution,
    SolveReport, Status, Verdict, Violation,
};
