//! Unitary bases, tags, commutation graphs, fans and their invariants.

pub mod fan;
pub mod graph;
pub mod hadamard_fan;
pub mod invariant;
pub mod label;
pub mod unitary;

pub use fan::{enumerate_mass, fan_representation, fan_system, overlapping_labels, Fan, FanSystem};
pub use graph::{basis_commutation_graph, commutation_graph, CommutationGraph, CommutationMode};
pub use hadamard_fan::{canonical_form, hadamard_fan, HadamardFan, HadamardFanEntry};
pub use invariant::{
    compare_ub, fan_invariant, fan_system_invariant, Comparison, FanInvariant, InvariantVariant, SpectrumKey, Verdict,
};
pub use label::Label;
pub use unitary::{
    build_pauli2, build_shift_multiply, build_weyl, mes_basis_to_ub, tag_at, tag_at_with, twill_check, Provenance, Tag,
    UnitaryBasis,
};
