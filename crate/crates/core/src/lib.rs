//! Compile stabilizer-code encoders into constant-depth measurement patterns
//! on a 2D cluster state, and check them with a stabilizer simulator.

pub mod codes;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod runtime;
pub mod sim;
pub mod symplectic;

pub use error::{Error, Result};
