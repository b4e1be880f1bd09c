//! Measurements from fans: mutually unbiased bases, minimal coverings by
//! MASSs, pure POVMs and noiseless reconstruction.

mod cover;
mod mub;
mod povm;
mod refined;

pub use cover::{find_partition, minimal_cover, CoverCertificate, CoverSelection, ExhaustedSize};
pub use mub::{mass_eigenbasis, mub_from_partition, MubSystem};
pub use povm::{
    crude_povm, from_hermitian_coordinates, hermitian_coordinates, is_info_complete, reconstruct, refined_bound, s_bound, Povm,
    PurePovm,
};
pub use refined::{refined_povm, HubGroup, RefinedPovm};
