//! Hypothesis-testing privacy and differential privacy for finite-dimensional
//! quantum channels.
//!
//! The crate is organized bottom-up: [`linalg`] provides dense complex
//! matrices and a Hermitian eigensolver, [`quantum`] states and channels,
//! [`divergences`] the distinguishability measures and optimal tests, and
//! [`privacy`] the bounds, audits and conversions built on them.

pub mod divergences;
pub mod error;
pub mod linalg;
pub mod privacy;
pub mod quantum;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
