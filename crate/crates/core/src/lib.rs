//! Exact tropical independence certificates on chains of loops, and the
//! divisor-slope pipelines that feed on Chern-number evaluation.
//!
//! Everything is exact: lengths, function values and coefficients are
//! [`Rational`]s, and Chow-ring coefficients never pass through floats.

pub mod chowring;
pub mod error;
pub mod graph;
pub mod independence;
pub mod plfunc;
pub mod rational;
pub mod slopes;
pub mod tableaux;

pub use error::{Error, Result};
pub use rational::Rational;
