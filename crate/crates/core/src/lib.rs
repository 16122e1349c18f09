//! Location-restricted stable matching (LRSM).
//!
//! Students belong to locations and rank projects; projects have capacities
//! and rank students. A matching is feasible when every project is filled to
//! capacity with students from a single location. This crate provides:
//!
//! - instance modelling and validation ([`model`]),
//! - feasibility checking and blocking-pair analysis ([`matching`], [`blocking`]),
//! - feasible-matching construction ([`feasible`]),
//! - l-stable matchings via per-location deferred acceptance ([`lstable`]),
//! - exhaustive Min-BP / Min-BA optimisation for small instances ([`optimize`]),
//! - generators for the 3-Partition and Vertex Cover hardness reductions
//!   ([`reduction`]).

pub mod blocking;
pub mod error;
pub mod feasible;
pub mod fixtures;
pub mod ids;
pub mod lstable;
pub mod matching;
pub mod model;
pub mod optimize;
pub mod random;
pub mod reduction;

pub use blocking::{blocking_report, is_l_stable, is_stable, BlockingPair, BlockingReport};
pub use error::{Error, Result};
pub use feasible::{feasible_divisible, feasible_exact, find_packing, LocationPacking};
pub use ids::{LocationId, ProjectId, StudentId};
pub use lstable::{gale_shapley_admissions, lstable, split_by_location, SubInstance};
pub use matching::{check_feasible, FeasibilityViolation, Matching};
pub use model::{
    divisible_check, master_list_check, validate, Instance, InstanceDoc, MasterListFlags, ValidationReport,
    ViolationCode,
};
pub use optimize::{enumerate_feasible, enumerate_feasible_where, min_ba, min_bp, optimize, Objective, Optimum};
