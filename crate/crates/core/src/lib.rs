//! Exact computation of the homogeneous ground state of the Temperley–Lieb
//! loop model with reflecting boundaries, together with independent routes
//! that cross-check it: constant-term integrals, determinant sum rules,
//! a symbolic exchange-relation solver and brute-force combinatorial counts.

pub mod basischange;
pub mod ctengine;
pub mod error;
pub mod exactalg;
pub mod linkpat;
pub mod psivec;
pub mod qkzoracle;
pub mod report;
pub mod sumrules;
pub mod tilingsoracle;

pub use error::{Error, Result};

/// Engine version recorded in result tables and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
