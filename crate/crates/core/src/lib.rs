//! Exact computations in quantum Grassmannians: PBW normal forms, quantum
//! minors and their quadratic relations, cocycle twists, the dihedral
//! groupoid of twisted coordinate rings, dehomogenization checks, vanishing
//! patterns and totally nonnegative cells.

pub mod dehom;
pub mod error;
pub mod grassmann;
pub mod groupoid;
pub mod hspec;
pub mod qmatrix;
pub mod scalars;
pub mod tnn;
pub mod twist;

pub use error::{Error, Result};
