use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// `C_jk = ξ_{(j − k) mod d}`.
pub fn circulant(xi: &[Complex64]) -> Result<ComplexMatrix> {
    let d = xi.len();
    if d == 0 {
        return Err(Error::InvalidArgument("empty circulant generator".into()));
    }
    Ok(ComplexMatrix::from_fn(d, |j, k| xi[(j + d - k) % d]))
}

/// Permutation with columns `[e_0, e_{d−1}, …, e_1]`, i.e. `P e_k = e_{−k}`.
pub fn reversal_permutation(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |i, k| {
        if i == (d - k) % d {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `‖Cᵗ − Pᵗ C P‖_F`.
pub fn circulant_cuet_residual(c: &ComplexMatrix) -> f64 {
    let p = reversal_permutation(c.dim());
    c.transpose().distance(&(&(&p.transpose() * c) * &p))
}

/// `Cᵗ = Pᵗ C P` checked exactly; permutation products are exact in
/// floating point, so any circulant passes with residual zero.
pub fn verify_circulant_cuet(c: &ComplexMatrix) -> bool {
    circulant_cuet_residual(c) == 0.0
}
