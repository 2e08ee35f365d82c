//! Exact-arithmetic toolkit for multithreshold graphs.
//!
//! A graph `G` is `(θ_1, ..., θ_k)`-threshold when ranks can be assigned to
//! its vertices so that `uv` is an edge exactly when an odd number of the
//! thresholds are at most `r(u) + r(v)`. This crate verifies such
//! representations, builds the explicit ones for `pK2` and `2K3`, decides
//! membership with exact rational linear programming, computes the exact set
//! of `t` for which a graph is `(-1, 1, t)`-threshold, and checks the related
//! counting and threshold-dimension results.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod interval;
pub mod lp;
pub mod rational;
pub mod representation;
pub mod solver;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{build_family, complement, FamilySpec, Graph};
pub use interval::{Interval, IntervalSet};
pub use rational::{ExtRational, Rational};
pub use representation::{RankAssignment, Representation, ThresholdVector};
