//! Credal sets as exact convex polytopes, and the composition operator that
//! combines two credal sets over overlapping variable groups.
//!
//! The crate is organised in layers: [`polytope`] is an exact polyhedral kernel,
//! [`credal`] adds variables, distributions and credal sets on top of it,
//! [`compose`] implements the composition operator and [`io`] the JSON file format.

pub mod compose;
pub mod credal;
pub mod error;
pub mod io;
pub mod polytope;
pub mod rational;

mod linalg;
mod lp;

pub use compose::{
    commutes, compose, compose_traced, compose_variant, CompositionTrace, ProjectionRecord, Rule,
    Variant,
};
pub use credal::{CredalSet, Distribution, Scope, Variable};
pub use error::{Error, Result};
pub use polytope::{Constraint, HalfspaceSystem, LinearMap, Point, VertexSet};
pub use rational::Rational;
