//! Tensor-product decomposition and explicit SU(2) intertwiners.

mod decompose;
mod intertwiner;
pub mod su2;

pub use decompose::{admissible, tensor_decompose, DecompositionTable};
pub use intertwiner::{cg_intertwiner, intertwiner_space, invariant_vectors, schur_pairing, Intertwiner};
