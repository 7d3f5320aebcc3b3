//! Exact enumeration and verification tools for meandric systems with one
//! shallow side.
//!
//! The crate is split into the combinatorial layer ([`partitions`],
//! [`meanders`]), the generating-series engine ([`transforms`]), the
//! Monte Carlo matrix models ([`matrix_models`]) and the check runner
//! ([`verify`]) that ties closed forms to brute-force oracles.
//!
//! Indices are 1-based in every serialized form and in `Display` output and
//! 0-based everywhere inside the library.

pub mod error;
pub mod matrix_models;
pub mod meanders;
pub mod oracle;
pub mod parallel;
pub mod partitions;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
