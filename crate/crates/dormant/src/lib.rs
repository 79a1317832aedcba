//! Exact higher-level differential modules over `F_p(t)`.
//!
//! The crate covers level-m (log) differential modules stored as explicit
//! operator matrices, cyclic vectors, curvature and dormancy, exponents and
//! residues at `t = 0`, duality of pinned modules, Frobenius descent, and the
//! permutation-triple combinatorics of dormant PGL₂-opers on the three-pointed
//! projective line.

pub mod combinatorics;
pub mod covers;
pub mod cli;
pub mod cyclic;
pub mod derivation;
pub mod descent;
pub mod duality;
pub mod error;
pub mod exponent;
pub mod io;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod random;
pub mod ratfunc;
pub mod selftest;

pub use combinatorics::{build_table, qr_decompose, BracketTable, LevelParams};
pub use derivation::{derive, frobenius_split};
pub use error::{Error, Result};
pub use linalg::{Mat, Vector};
pub use module::{DiffModule, Morphism, ValidationReport};
pub use poly::Poly;
pub use ratfunc::RatFunc;
