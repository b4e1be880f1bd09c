//! Families conjugate to their transposes through one unitary, and the
//! positive-partial-transpose block matrices built from them.

mod block;
mod circulant;
mod shm;

pub use block::{arveson_pair, build_ppt, shm_block_matrix, PptCertificate};
pub use circulant::{circulant, circulant_cuet_residual, reversal_permutation, verify_circulant_cuet};
pub use shm::{random_shm, shm_residual, symplectic_j, SkewHamiltonian};
