//! Bit-packed vectors, matrices and linear codes over F_2.

mod bitvec;
mod code;
mod matrix;

pub use bitvec::BitVector;
pub use code::{LinearCode, MIN_DISTANCE_MAX_RANK};
pub use matrix::{BinaryMatrix, MatrixJson};

pub(crate) use bitvec::low_mask;
