//! Stabilizer tableau simulator and a dense statevector oracle.

mod outcome;
mod statevec;
mod tableau;

pub use outcome::OutcomeSource;
pub use statevec::{quadratic_form, StateVector, ORACLE_LIMIT};
pub use tableau::{Basis, Gate, Measurement, Tableau};
