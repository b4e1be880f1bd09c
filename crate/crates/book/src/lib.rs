//! Chapters of the guide, included so that `cargo test` runs their listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/bases.md")]
pub mod bases {}
#[doc = include_str!("../../../book/src/fans.md")]
pub mod fans {}
#[doc = include_str!("../../../book/src/tomography.md")]
pub mod tomography {}
#[doc = include_str!("../../../book/src/ppt.md")]
pub mod ppt {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
