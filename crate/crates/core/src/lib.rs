//! Star-k-PCG witnesses.
//!
//! A graph is a star-k-PCG when there are positive vertex weights and `k`
//! disjoint closed intervals such that `uv` is an edge exactly when
//! `w(u) + w(v)` lies in one of the intervals. The weights and intervals
//! form a [`Witness`]; the least such `k` is the star number.
//!
//! All certificate arithmetic is exact ([`Rational`]), and every witness a
//! construction returns has been checked with [`verify`].

pub mod census;
pub mod constructors;
pub mod error;
pub mod format;
pub mod graph;
pub mod json;
pub mod operations;
pub mod rational;
pub mod solver;
pub mod structure;
pub mod transforms;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use rational::Rational;
pub use witness::{
    canonicalize, check_normal_form, classify_free, min_intervals, verify, FreeClass, Interval,
    IntervalSet, VerifyReport, Witness,
};
