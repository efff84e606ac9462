//! Tropical and Morse-theoretic invariants of univariate Laurent supports.

pub mod cones;
pub mod error;
pub mod fiber;
pub mod geometry;
pub mod io;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod singularity;
pub mod support_fn;
pub mod svg;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use support_fn::{ShiftConfig, ShiftSpec, VertexVector};
pub use tropical::{extract, CombinatorialType, Covector, SupportSet};
