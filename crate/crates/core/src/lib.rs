//! Exact Bridgeland-stability numerics on unnodal Enriques surfaces.
//!
//! Classes live in Num(Y) with the Gram form of [`lattice::GramSpec`];
//! every quantity is an exact rational, and square roots appear only as
//! [`walls::ExactRadical`] values.

pub mod cli;
pub mod divisors;
pub mod error;
pub mod lattice;
pub mod mukai;
pub mod reports;
pub mod stability;
pub mod walls;
pub mod rational;

pub use error::{Error, Result};
