//! Spectral routines: Hermitian eigensolver, normal eigendecomposition and
//! simultaneous diagonalization of commuting normal families.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::quantize::{eigenvalue_key, vector_key};
use crate::error::{Error, Result};

/// Eigenvalues of a Hermitian matrix in ascending order, with the matching
/// orthonormal eigenvectors as columns.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = SymmetricEigen::new(a.inner().clone());
    let mut order: Vec<usize> = (0..a.dim()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(a.dim(), a.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, ComplexMatrix::from_inner(vectors))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    check_hermitian(a)?;
    Ok(hermitian_eigen(a).0[0])
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn max_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    check_hermitian(a)?;
    Ok(*hermitian_eigen(a).0.last().unwrap())
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    let residual = a.hermitian_residual();
    if residual > 1e-9 * a.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = a.inner().clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// `‖A*A − I‖_F ≤ tol`.
pub fn is_unitary(a: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(a) <= tol
}

pub fn unitarity_residual(a: &ComplexMatrix) -> f64 {
    (&a.adjoint() * a).distance(&ComplexMatrix::identity(a.dim()))
}

/// Checks `|tr(U_x*U_y) − d·δ_xy| ≤ tol` over all pairs.
pub fn hs_orthogonality_check(family: &[ComplexMatrix], tol: f64) -> Result<bool> {
    Ok(hs_orthogonality_violation(family)?.map_or(true, |(_, _, r)| r <= tol))
}

/// The worst pair `(x, y, residual)` of the Gram check, if the family is
/// non-empty.
pub fn hs_orthogonality_violation(family: &[ComplexMatrix]) -> Result<Option<(usize, usize, f64)>> {
    let Some(first) = family.first() else {
        return Ok(None);
    };
    for m in family {
        first.check_same_dim(m)?;
    }
    let d = first.dim() as f64;
    let mut worst: Option<(usize, usize, f64)> = None;
    for (x, ux) in family.iter().enumerate() {
        for (y, uy) in family.iter().enumerate().skip(x) {
            let target = if x == y { d } else { 0.0 };
            let r = (ux.hs_inner(uy) - Complex64::new(target, 0.0)).norm();
            if worst.map_or(true, |(_, _, w)| r > w) {
                worst = Some((x, y, r));
            }
        }
    }
    Ok(worst)
}

/// `λ_min(A) ≥ −tol` for a Hermitian `A`.
pub fn is_psd(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(a)? >= -tol)
}

/// Unitary eigendecomposition of a normal matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<Complex64>,
    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// `‖A − VΛV*‖_F`.
    pub fn reconstruction_residual(&self, a: &ComplexMatrix) -> f64 {
        let v = &self.eigenvectors;
        let rebuilt = &(v * &ComplexMatrix::diagonal(&self.eigenvalues)) * &v.adjoint();
        a.distance(&rebuilt)
    }
}

/// Eigenvalues of a normal matrix, in no particular order. Cheaper than
/// [`eig_normal`] when vectors are not needed.
pub fn eigenvalues_normal(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let norm = a.frobenius_norm();
    let residual = a.normality_residual();
    if residual > 1e-8 * norm * norm {
        return Err(Error::NotNormal { residual });
    }
    // For a normal A, the eigenvectors of a generic real mix of its
    // Hermitian parts are eigenvectors of A; a degenerate mix cluster is
    // almost surely a degenerate eigenspace of A, on which A is scalar.
    let m = a.inner();
    let (re, im) = (MIX[0], MIX[1]);
    let h = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| {
        let (x, y) = (m[(r, c)], m[(c, r)].conj());
        (x + y) * (0.5 * re) + (x - y) * Complex64::new(0.0, -0.5 * im)
    });
    let v = SymmetricEigen::new(h).eigenvectors;
    let av = m * &v;
    let values: Vec<Complex64> = (0..v.ncols()).map(|k| v.column(k).dotc(&av.column(k))).collect();
    let residual = (0..v.ncols())
        .map(|k| (av.column(k) - v.column(k) * values[k]).norm_squared())
        .sum::<f64>()
        .sqrt();
    if residual <= 1e-10 * norm.max(1.0) {
        Ok(values)
    } else {
        Ok(eig_normal(a)?.eigenvalues)
    }
}

const MIX: [f64; 2] = [0.754_877_666_246_692_7, 0.569_840_290_998_053_2];

/// Eigendecomposition of a normal matrix. Eigenvalues are sorted by
/// principal angle in `[0, 2π)` and then modulus; ties are broken by the
/// phase-fixed eigenvectors.
pub fn eig_normal(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let norm = a.frobenius_norm();
    let residual = a.normality_residual();
    if residual > 1e-8 * norm * norm {
        return Err(Error::NotNormal { residual });
    }
    let sd = simul_diag(std::slice::from_ref(a), 1e-9 * norm.max(1.0), 0)?;
    Ok(SpectralDecomposition {
        eigenvalues: sd.diagonals.into_iter().next().unwrap(),
        eigenvectors: sd.unitary,
    })
}

/// Output of [`simul_diag`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimultaneousDiagonalization {
    /// Unitary whose columns are joint eigenvectors.
    pub unitary: ComplexMatrix,
    /// For each family member `F_k`, the diagonal of `U* F_k U`.
    pub diagonals: Vec<Vec<Complex64>>,
}

impl SimultaneousDiagonalization {
    /// Largest `‖U* F_k U − diag(d_k)‖_F` over the family.
    pub fn max_residual(&self, family: &[ComplexMatrix]) -> f64 {
        let u = &self.unitary;
        family
            .iter()
            .zip(&self.diagonals)
            .map(|(f, diag)| (&(&u.adjoint() * f) * u).distance(&ComplexMatrix::diagonal(diag)))
            .fold(0.0, f64::max)
    }
}

const CLUSTER_GAP: f64 = 1e-6;
const FINE_CLUSTER_GAP: f64 = 1e-12;
const COARSE_ATTEMPTS: usize = 3;

/// Simultaneously diagonalizes a commuting family of normal matrices.
///
/// A random real combination of the Hermitian and skew-Hermitian parts of
/// the family is diagonalized; each degenerate eigenspace of the mix is
/// then handled recursively with the family restricted to it. The mixing
/// coefficients come from a ChaCha stream seeded with `seed`, so the output
/// is deterministic. Columns are phase-fixed (largest-modulus component real
/// positive) and sorted by the joint eigenvalue keys.
pub fn simul_diag(family: &[ComplexMatrix], tol: f64, seed: u64) -> Result<SimultaneousDiagonalization> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidArgument("empty family".into()));
    };
    let d = first.dim();
    for m in family {
        first.check_same_dim(m)?;
    }
    for (i, f) in family.iter().enumerate() {
        let residual = f.normality_residual();
        let norm = f.frobenius_norm();
        if residual > 1e-8 * (norm * norm).max(1.0) {
            return Err(Error::NotNormal { residual });
        }
        for (j, g) in family.iter().enumerate().skip(i + 1) {
            let residual = f.commutator_norm(g);
            if residual > tol {
                return Err(Error::NotCommuting {
                    first: i.to_string(),
                    second: j.to_string(),
                    residual,
                });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<DMatrix<Complex64>> = family.iter().map(|f| f.inner().clone()).collect();
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    split(&members, DMatrix::identity(d, d), &mut rng, &mut columns)?;

    let mut entries: Vec<(Vec<Complex64>, Vec<Complex64>)> = columns
        .into_iter()
        .map(|v| {
            let v = phase_fix(v);
            let diag = members
                .iter()
                .map(|f| {
                    (0..d)
                        .map(|i| v[i].conj() * (0..d).map(|j| f[(i, j)] * v[j]).sum::<Complex64>())
                        .sum()
                })
                .collect();
            (v, diag)
        })
        .collect();
    entries.sort_by_cached_key(|(v, diag)| {
        (
            diag.iter().map(|z| eigenvalue_key(*z)).collect::<Vec<_>>(),
            vector_key(v),
        )
    });

    let unitary = ComplexMatrix::from_fn(d, |i, j| entries[j].0[i]);
    let diagonals = (0..family.len())
        .map(|k| entries.iter().map(|(_, diag)| diag[k]).collect())
        .collect();
    let out = SimultaneousDiagonalization { unitary, diagonals };
    let residual = out.max_residual(family);
    let scale = family.iter().map(|f| f.frobenius_norm()).fold(1.0, f64::max);
    if residual > 1e-8 * (d as f64).sqrt() * scale {
        return Err(Error::Diagonalization(format!(
            "residual {residual:.3e} after diagonalization"
        )));
    }
    Ok(out)
}

fn phase_fix(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(pivot) = v.iter().position(|z| z.norm() >= max - 1e-9) {
        let phase = v[pivot].conj() / v[pivot].norm();
        for z in &mut v {
            *z *= phase;
        }
        v[pivot] = Complex64::new(v[pivot].re, 0.0);
    }
    v
}

/// Recursive splitting step. `basis` (d×m) spans an invariant subspace on
/// which the members act as `restricted` (m×m each).
fn split(
    members: &[DMatrix<Complex64>],
    basis: DMatrix<Complex64>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<Complex64>>,
) -> Result<()> {
    let m = basis.ncols();
    let restricted: Vec<DMatrix<Complex64>> = members
        .iter()
        .map(|f| basis.adjoint() * f * &basis)
        .collect();
    let all_scalar = restricted.iter().all(|r| {
        let c = r.trace() / m as f64;
        let dev = (r - DMatrix::<Complex64>::identity(m, m) * c).norm();
        dev <= 1e-8 * r.norm().max(1.0)
    });
    if m == 1 || all_scalar {
        for c in 0..m {
            out.push(basis.column(c).iter().copied().collect());
        }
        return Ok(());
    }

    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    for attempt in 0.. {
        let gap = if attempt < COARSE_ATTEMPTS {
            CLUSTER_GAP
        } else if attempt == COARSE_ATTEMPTS {
            FINE_CLUSTER_GAP
        } else {
            return Err(Error::Diagonalization(format!(
                "could not split a {m}-dimensional joint eigenspace; the family is not simultaneously diagonalizable"
            )));
        };
        let mut mix = DMatrix::<Complex64>::zeros(m, m);
        for r in &restricted {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            let re_part = (r + r.adjoint()) * half;
            let im_part = (r - r.adjoint()) * (-half_i);
            mix += re_part * Complex64::new(a, 0.0) + im_part * Complex64::new(b, 0.0);
        }
        // symmetrize away rounding noise
        let mix = (&mix + mix.adjoint()) * half;
        let (values, vectors) = hermitian_eigen(&ComplexMatrix::from_inner(mix));
        let scale = values.iter().map(|v| v.abs()).fold(1.0, f64::max);
        let mut clusters: Vec<Vec<usize>> = vec![vec![0]];
        for k in 1..m {
            if values[k] - values[k - 1] > gap * scale {
                clusters.push(vec![k]);
            } else {
                clusters.last_mut().unwrap().push(k);
            }
        }
        if clusters.len() == 1 {
            continue;
        }
        let q = vectors.inner();
        for cluster in clusters {
            let qc = DMatrix::from_fn(m, cluster.len(), |r, c| q[(r, cluster[c])]);
            split(members, &basis * qc, rng, out)?;
        }
        return Ok(());
    }
    unreachable!()
}
