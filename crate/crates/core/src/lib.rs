//! Exact spin geometry of 3-(α,δ)-Sasaki manifolds: frames, spinors, the homogeneous
//! model on Sp(2)/Sp(1), its non-compact dual, and a batch verifier.

pub mod catalog;
pub mod dim7;
pub mod duality;
pub mod error;
pub mod exterior;
pub mod homogeneous;
pub mod linalg;
pub mod sasaki;
pub mod scalar;
pub mod spin;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, Rational};
