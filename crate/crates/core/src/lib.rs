//! Solvers for the minimum power capacitated cover (MPCC) problem.
//!
//! Access points (APs) with a common capacity `k` must serve every terminal
//! device (TD) in the plane. Each AP picks one transmit radius, paying
//! `c * r^alpha`, and may serve at most `k` TDs inside its disk. The crate
//! provides:
//!
//! - the geometric model, disk family and feasibility checker
//!   ([`geometry`], [`disk`], [`instance`], [`solution`]);
//! - the minimum-local-ratio solver ([`mlr`]);
//! - the nearest-capable-access greedy ([`nca`]) and an exact
//!   branch-and-bound oracle backed by max-flow ([`exact`], [`flow`]);
//! - seeded experiments with CSV output ([`experiments`]);
//! - JSON formats for instances, solutions and solver traces ([`io`]).
//!
//! Independent trials and the oracle's root branches run on rayon when the
//! `parallel` feature (on by default) is enabled.

pub mod disk;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod flow;
pub mod geometry;
pub mod instance;
pub mod io;
pub mod mlr;
pub mod nca;
pub mod par;
pub mod solution;

pub use disk::{build_disk_family, contains, Disk, DiskFamily, DiskKey};
pub use error::{FormatError, SolveError};
pub use exact::{solve_exact, solve_exact_with, ExactBudget, ExactOutcome};
pub use flow::{assignment_feasible, FlowNetwork};
pub use geometry::{distance_sq, power_of, Point};
pub use instance::{validate_instance, Instance, InstanceViolation};
pub use mlr::{local_ratio, solve_mlr, solve_mlr_traced, IterationRecord, MlrState, Selection};
pub use nca::solve_nca;
pub use par::Execution;
pub use solution::{check_feasible, Assignment, FeasibilityViolation, Solution};
