//! Finite groups, latin squares, complex Hadamard families and the exact
//! commutation predicates of shift-and-multiply bases.

pub mod group;
pub mod hadamard;
pub mod latin;

pub use group::{group_cyclic, group_from_cayley, group_product, group_s3, FiniteGroup};
pub use hadamard::{
    hadamard_crisscross, hadamard_fourier, hadamard_twill, is_partial_hadamard, root_of_unity, ExactExponents,
    HadamardFamily, PartialHadamard, MAX_DETECTED_ROOT_ORDER,
};
pub use latin::{latin_crisscross, latin_from_group, latin_identities, latin_inverse, latin_twill, LatinSquare, Variant};
