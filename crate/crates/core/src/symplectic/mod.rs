//! Binary symplectic representation of Pauli operators and stabilizer check matrices.

mod bits;
mod check;
mod matrix;
mod pauli;

pub use bits::BitVec;
pub use check::CheckMatrix;
pub use matrix::{BitMatrix, RowOp, Rref};
pub use pauli::{decode_pauli, encode_pauli, Letter, PauliOp};
