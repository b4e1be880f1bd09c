//! Dense complex linear algebra used throughout the crate.

pub mod bipartite;
pub mod matrix;
pub mod quantize;
pub mod random;
pub mod spectral;

pub use bipartite::{
    entanglement_entropy, flip, omega, op_to_vec, partial_transpose, schmidt_rank, schmidt_spectrum,
    vec_to_op, BipartiteVector, Subsystem,
};
pub use matrix::ComplexMatrix;
pub use spectral::{
    eig_normal, eigenvalues_normal, hermitian_eigen, hs_orthogonality_check, hs_orthogonality_violation, is_psd, is_unitary,
    max_eigenvalue, min_eigenvalue, simul_diag, singular_values, unitarity_residual, SimultaneousDiagonalization,
    SpectralDecomposition,
};
