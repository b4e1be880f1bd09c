use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::shm::{random_shm_from, shm_residual, symplectic_j, SkewHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, partial_transpose, ComplexMatrix, Subsystem};

const PSD_TOL: f64 = 1e-10;

/// A positive block matrix with positive blockwise transpose, and the
/// numbers that certify it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PptCertificate {
    /// Number of block rows and columns.
    pub n: usize,
    /// Blocks are `2·block_half_dim` square.
    pub block_half_dim: usize,
    /// Shift actually applied, at least `a0`.
    pub shift_a: f64,
    /// Least shift making the block matrix positive.
    pub a0: f64,
    pub lambda_min: f64,
    pub lambda_min_pt: f64,
    /// `‖[A_jkᵗ] − Ũ* A Ũ‖_F` with `Ũ = I_n ⊗ J`.
    pub structural_residual: f64,
    /// Largest `‖A_jk − J A_jkᵗ J*‖_F` over blocks.
    pub cuet_residual: f64,
    pub matrix: ComplexMatrix,
}

impl PptCertificate {
    pub fn is_valid(&self) -> bool {
        self.lambda_min >= -PSD_TOL && self.lambda_min_pt >= -PSD_TOL
    }

    /// Block `(j, k)` of the certified matrix.
    pub fn block(&self, j: usize, k: usize) -> ComplexMatrix {
        block_of(&self.matrix, 2 * self.block_half_dim, j, k)
    }
}

fn block_of(m: &ComplexMatrix, size: usize, j: usize, k: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(size, |a, b| m[(j * size + a, k * size + b)])
}

/// Hermitian block matrix with zero diagonal blocks and random
/// skew-Hamiltonian blocks `B_pq` above the diagonal, `B_qp = B_pq*`.
pub fn shm_block_matrix(n: usize, block_half_dim: usize, seed: u64) -> Result<ComplexMatrix> {
    if n < 2 || block_half_dim < 1 {
        return Err(Error::InvalidArgument(format!(
            "need n ≥ 2 and block half-dimension ≥ 1, got {n} and {block_half_dim}"
        )));
    }
    let size = 2 * block_half_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks: Vec<Vec<ComplexMatrix>> = (0..n)
        .map(|_| (0..n).map(|_| SkewHamiltonian::zero(block_half_dim).into_matrix()).collect())
        .collect();
    for p in 0..n {
        for q in p + 1..n {
            let y = random_shm_from(block_half_dim, &mut rng).into_matrix();
            blocks[q][p] = y.adjoint();
            blocks[p][q] = y;
        }
    }
    Ok(ComplexMatrix::from_fn(n * size, |r, c| blocks[r / size][c / size][(r % size, c % size)]))
}

/// Shifts the block matrix by `a ≥ a0` (default `a0`) and certifies that
/// both it and its blockwise transpose are positive.
pub fn build_ppt(n: usize, block_half_dim: usize, seed: u64, shift: Option<f64>) -> Result<PptCertificate> {
    let b = shm_block_matrix(n, block_half_dim, seed)?;
    let size = 2 * block_half_dim;
    let a0 = (-min_eigenvalue(&b)?).max(0.0);
    let shift_a = shift.unwrap_or(a0);
    if shift_a < a0 {
        return Err(Error::InvalidArgument(format!("shift {shift_a} is below a0 = {a0}")));
    }
    let a = &b + &ComplexMatrix::identity(n * size).scale_real(shift_a);
    let pt = partial_transpose(&a, n, size, Subsystem::Second)?;
    let u = ComplexMatrix::identity(n).kron(&symplectic_j(block_half_dim));
    let structural_residual = pt.distance(&(&(&u.adjoint() * &a) * &u));
    let mut cuet_residual: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            cuet_residual = cuet_residual.max(shm_residual(&block_of(&a, size, j, k))?);
        }
    }
    let cert = PptCertificate {
        n,
        block_half_dim,
        shift_a,
        a0,
        lambda_min: min_eigenvalue(&a)?,
        lambda_min_pt: min_eigenvalue(&pt)?,
        structural_residual,
        cuet_residual,
        matrix: a,
    };
    if !cert.is_valid() {
        return Err(Error::InvalidArgument(format!(
            "certificate failed: λ_min = {:.3e}, λ_min(PT) = {:.3e}",
            cert.lambda_min, cert.lambda_min_pt
        )));
    }
    Ok(cert)
}

/// The pair `([[0, λ, 1], [0, 0, 0], [0, 0, 0]], [[0, 0, μ], [0, 1, 0],
/// [0, −λ, 0]])` with `λ` non-real and `|μ|² = 1 + |λ|²`; a standard
/// example of a pair not collectively equivalent to its transposes.
pub fn arveson_pair(lambda: Complex64, mu: Complex64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if lambda.im == 0.0 {
        return Err(Error::InvalidArgument("λ must be non-real".into()));
    }
    if (mu.norm_sqr() - 1.0 - lambda.norm_sqr()).abs() > 1e-12 {
        return Err(Error::InvalidArgument("|μ|² must equal 1 + |λ|²".into()));
    }
    let (z, o) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let first = ComplexMatrix::from_rows(vec![vec![z, lambda, o], vec![z, z, z], vec![z, z, z]])?;
    let second = ComplexMatrix::from_rows(vec![vec![z, z, mu], vec![z, o, z], vec![z, -lambda, z]])?;
    Ok((first, second))
}
