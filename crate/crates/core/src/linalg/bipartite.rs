//! Vectors in `ℂ^d ⊗ ℂ^d`, the correspondence `Ψ ↔ A_Ψ` with
//! `Ψ = (A_Ψ ⊗ I)Ω`, and block-matrix partial transposes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::spectral::{hermitian_eigen, singular_values};
use crate::error::{Error, Result};

/// A vector in `ℂ^d ⊗ ℂ^d`; `amplitudes[j * d + k]` is the coefficient of
/// `e_j ⊗ e_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartiteVector {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

impl BipartiteVector {
    pub fn new(dim: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if amplitudes.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: amplitudes.len(),
            });
        }
        Ok(Self { dim, amplitudes })
    }

    /// `φ ⊗ ψ`.
    pub fn product(phi: &[Complex64], psi: &[Complex64]) -> Result<Self> {
        if phi.len() != psi.len() {
            return Err(Error::DimensionMismatch {
                expected: phi.len(),
                found: psi.len(),
            });
        }
        let amps = phi.iter().flat_map(|a| psi.iter().map(move |b| a * b)).collect();
        Self::new(phi.len(), amps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies an operator on `ℂ^d ⊗ ℂ^d` (dimension `d²`).
    pub fn apply(&self, op: &ComplexMatrix) -> Result<Self> {
        if op.dim() != self.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                found: op.dim(),
            });
        }
        Self::new(self.dim, op.mul_vec(&self.amplitudes))
    }

    /// Distance in the Euclidean norm.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// The swap `e_j ⊗ e_k ↦ e_k ⊗ e_j` on `ℂ^d ⊗ ℂ^d`.
pub fn flip(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, |row, col| {
        let (j, k) = (col / d, col % d);
        if row == k * d + j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `Ω = d^{-1/2} Σ_j e_j ⊗ e_j`.
pub fn omega(d: usize) -> BipartiteVector {
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let amps = (0..d * d)
        .map(|idx| if idx / d == idx % d { amp } else { Complex64::new(0.0, 0.0) })
        .collect();
    BipartiteVector { dim: d, amplitudes: amps }
}

/// `A_Ψ` with `⟨e_j|A e_k⟩ = √d ⟨e_j ⊗ e_k, Ψ⟩`.
pub fn vec_to_op(psi: &BipartiteVector) -> ComplexMatrix {
    let d = psi.dim;
    let s = (d as f64).sqrt();
    ComplexMatrix::from_fn(d, |j, k| psi.amplitudes[j * d + k] * s)
}

/// Inverse of [`vec_to_op`]: `Ψ_A = (A ⊗ I)Ω`.
pub fn op_to_vec(a: &ComplexMatrix) -> BipartiteVector {
    let d = a.dim();
    let s = 1.0 / (d as f64).sqrt();
    BipartiteVector {
        dim: d,
        amplitudes: a.entries().into_iter().map(|z| z * s).collect(),
    }
}

fn check_normalized(psi: &BipartiteVector) -> Result<()> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { index: 0, norm });
    }
    Ok(())
}

/// Numerical rank of `A_Ψ` (singular values above `tol`).
pub fn schmidt_rank(psi: &BipartiteVector, tol: f64) -> Result<usize> {
    check_normalized(psi)?;
    Ok(singular_values(&vec_to_op(psi)).iter().filter(|&&s| s > tol).count())
}

/// Schmidt coefficients squared: eigenvalues of `A_Ψ* A_Ψ / d`, descending.
pub fn schmidt_spectrum(psi: &BipartiteVector) -> Vec<f64> {
    let a = vec_to_op(psi);
    let d = psi.dim as f64;
    let gram = (&a.adjoint() * &a).scale_real(1.0 / d);
    let (mut values, _) = hermitian_eigen(&gram);
    values.reverse();
    values.into_iter().map(|v| v.max(0.0)).collect()
}

/// Shannon entropy (natural log) of the Schmidt spectrum.
pub fn entanglement_entropy(psi: &BipartiteVector) -> Result<f64> {
    check_normalized(psi)?;
    Ok(schmidt_spectrum(psi)
        .into_iter()
        .filter(|&p| p > 1e-300)
        .map(|p| -p * p.ln())
        .sum())
}

/// Which tensor factor a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial transpose of `M` on `ℂ^{d1} ⊗ ℂ^{d2}`, viewed as a `d1 × d1`
/// block matrix with `d2 × d2` blocks: [`Subsystem::Second`] maps
/// `[A_jk] ↦ [A_jk^t]`, [`Subsystem::First`] maps `[A_jk] ↦ [A_kj]`.
pub fn partial_transpose(m: &ComplexMatrix, d1: usize, d2: usize, subsystem: Subsystem) -> Result<ComplexMatrix> {
    if d1 == 0 || d2 == 0 || m.dim() != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            found: m.dim(),
        });
    }
    Ok(ComplexMatrix::from_fn(m.dim(), |row, col| {
        let (j, a) = (row / d2, row % d2);
        let (k, b) = (col / d2, col % d2);
        match subsystem {
            Subsystem::Second => m[(j * d2 + b, k * d2 + a)],
            Subsystem::First => m[(k * d2 + a, j * d2 + b)],
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(d: usize, k: usize) -> Vec<Complex64> {
        (0..d).map(|i| if i == k { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect()
    }

    #[test]
    fn omega_maps_to_identity() {
        assert!(vec_to_op(&omega(5)).distance(&ComplexMatrix::identity(5)) < 1e-14);
        assert!(vec_to_op(&omega(2)).distance(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn z_from_bell_like_vector() {
        let s = 1.0 / 2f64.sqrt();
        let psi = BipartiteVector::new(2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)]).unwrap();
        let z = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(vec_to_op(&psi).distance(&z) < 1e-14);
    }

    #[test]
    fn flip_swaps_factors() {
        let v = BipartiteVector::product(&basis(2, 0), &basis(2, 1)).unwrap();
        let w = v.apply(&flip(2)).unwrap();
        assert_eq!(w, BipartiteVector::product(&basis(2, 1), &basis(2, 0)).unwrap());
        let f = flip(3);
        assert_eq!(&f * &f, ComplexMatrix::identity(9));
    }

    #[test]
    fn schmidt_examples() {
        let prod = BipartiteVector::product(&basis(3, 0), &basis(3, 0)).unwrap();
        assert_eq!(schmidt_rank(&prod, 1e-10).unwrap(), 1);
        assert!(entanglement_entropy(&prod).unwrap().abs() < 1e-12);

        let om = omega(3);
        assert_eq!(schmidt_rank(&om, 1e-10).unwrap(), 3);
        assert!((entanglement_entropy(&om).unwrap() - 3f64.ln()).abs() < 1e-12);

        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).scale_real((1.5f64).sqrt());
        let psi = op_to_vec(&a);
        assert_eq!(schmidt_rank(&psi, 1e-10).unwrap(), 2);
        assert!((entanglement_entropy(&psi).unwrap() - 2f64.ln()).abs() < 1e-12);

        let unnormalized = BipartiteVector::product(&basis(2, 0), &[c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(schmidt_rank(&unnormalized, 1e-10).is_err());
        assert!(entanglement_entropy(&unnormalized).is_err());
    }

    #[test]
    fn partial_transpose_of_omega_is_half_flip() {
        let om = omega(2);
        let rho = ComplexMatrix::outer(om.amplitudes());
        let pt = partial_transpose(&rho, 2, 2, Subsystem::Second).unwrap();
        assert!(pt.distance(&flip(2).scale_real(0.5)) < 1e-15);
        let pt1 = partial_transpose(&rho, 2, 2, Subsystem::First).unwrap();
        assert!(pt1.distance(&flip(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn partial_transpose_of_product() {
        let rho = ComplexMatrix::from_rows(vec![vec![c(0.7, 0.0), c(0.1, 0.2)], vec![c(0.1, -0.2), c(0.3, 0.0)]]).unwrap();
        let sigma = ComplexMatrix::from_rows(vec![
            vec![c(0.5, 0.0), c(0.0, 0.1), c(0.2, 0.0)],
            vec![c(0.0, -0.1), c(0.25, 0.0), c(0.0, 0.0)],
            vec![c(0.2, 0.0), c(0.0, 0.0), c(0.25, 0.0)],
        ])
        .unwrap();
        let pt = partial_transpose(&rho.kron(&sigma), 2, 3, Subsystem::Second).unwrap();
        assert_eq!(pt, rho.kron(&sigma.transpose()));
        let pt1 = partial_transpose(&rho.kron(&sigma), 2, 3, Subsystem::First).unwrap();
        assert_eq!(pt1, rho.transpose().kron(&sigma));
        assert!(partial_transpose(&rho, 3, 3, Subsystem::First).is_err());
    }
}
