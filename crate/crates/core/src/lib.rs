pub mod basis;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod ppt;
pub mod tolerance;
pub mod tomography;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
pub use tolerance::Tolerances;
