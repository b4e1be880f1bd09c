use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances used by the checks in this crate.
///
/// Entries of the operators handled here are (mostly) roots of unity, so
/// double precision leaves residuals near `1e-13`; the defaults leave room
/// for that.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Frobenius norm of commutators treated as zero.
    pub commutation: f64,
    /// `‖A*A − I‖_F` for unitarity.
    pub unitarity: f64,
    /// `|tr(A*B) − d·δ|` for Hilbert–Schmidt orthogonality.
    pub orthogonality: f64,
    /// Negative eigenvalues allowed in PSD checks.
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            commutation: 1e-9,
            unitarity: 1e-9,
            orthogonality: 1e-9,
            psd: 1e-10,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 4] = ["commutation", "unitarity", "orthogonality", "psd"];

    /// Overrides one tolerance by name. Unknown names are rejected.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {name} must be a non-negative finite number, got {value}"
            )));
        }
        match name {
            "commutation" => self.commutation = value,
            "unitarity" => self.unitarity = value,
            "orthogonality" => self.orthogonality = value,
            "psd" => self.psd = value,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown tolerance {other:?} (expected one of {:?})",
                    Self::NAMES
                )))
            }
        }
        Ok(())
    }
}
