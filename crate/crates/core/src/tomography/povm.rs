use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cover::CoverSelection;
use super::mub::mass_eigenbasis;
use crate::basis::Tag;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};

const SUM_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-10;
const PURITY_RATIO: f64 = 1e-8;
const RANK_TOL: f64 = 1e-9;

/// Positive operators summing to the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PovmWire")]
pub struct Povm {
    d: usize,
    elements: Vec<ComplexMatrix>,
    pure_flags: Vec<bool>,
}

#[derive(Deserialize)]
struct PovmWire {
    d: usize,
    elements: Vec<ComplexMatrix>,
    #[serde(default)]
    pure_flags: Option<Vec<bool>>,
}

impl TryFrom<PovmWire> for Povm {
    type Error = Error;
    fn try_from(w: PovmWire) -> Result<Self> {
        let p = Povm::new(w.d, w.elements)?;
        if let Some(flags) = w.pure_flags {
            if flags != p.pure_flags {
                return Err(Error::InvalidPovm("recorded purity flags disagree with the elements".into()));
            }
        }
        Ok(p)
    }
}

/// Rank one within the purity ratio; the zero operator is not pure.
fn is_pure(spectrum_desc: &[f64]) -> bool {
    let top = spectrum_desc[0];
    top > PSD_TOL && spectrum_desc.get(1).is_none_or(|&s| s <= PURITY_RATIO * top)
}

impl Povm {
    /// Validates `Σ A_j = I` and `A_j ≥ 0` and records purity.
    pub fn new(d: usize, elements: Vec<ComplexMatrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidPovm("no elements".into()));
        }
        let mut sum = ComplexMatrix::zeros(d);
        let mut pure_flags = Vec::with_capacity(elements.len());
        for (j, a) in elements.iter().enumerate() {
            if a.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: a.dim() });
            }
            let herm = a.hermitian_residual();
            if herm > PSD_TOL {
                return Err(Error::InvalidPovm(format!("element {j} is not Hermitian (residual {herm:.3e})")));
            }
            let (mut values, _) = hermitian_eigen(a);
            if values[0] < -PSD_TOL {
                return Err(Error::InvalidPovm(format!("element {j} has eigenvalue {:.3e}", values[0])));
            }
            values.reverse();
            pure_flags.push(is_pure(&values));
            sum = &sum + a;
        }
        let residual = sum.distance(&ComplexMatrix::identity(d));
        if residual > SUM_TOL {
            return Err(Error::InvalidPovm(format!("elements sum to I only within {residual:.3e}")));
        }
        Ok(Self { d, elements, pure_flags })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn pure_flags(&self) -> &[bool] {
        &self.pure_flags
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn pure_count(&self) -> usize {
        self.pure_flags.iter().filter(|&&p| p).count()
    }

    /// `‖Σ A_j − I‖_F`.
    pub fn completeness_residual(&self) -> f64 {
        let sum = self.elements.iter().fold(ComplexMatrix::zeros(self.d), |acc, a| &acc + a);
        sum.distance(&ComplexMatrix::identity(self.d))
    }

    /// Smallest eigenvalue over all elements.
    pub fn min_eigenvalue(&self) -> f64 {
        self.elements
            .iter()
            .map(|a| hermitian_eigen(a).0[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Outcome probabilities `tr(ρ A_j)`.
    pub fn probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>> {
        if rho.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: rho.dim() });
        }
        Ok(self.elements.iter().map(|a| (rho * a).trace().re).collect())
    }
}

/// Real coordinates of a Hermitian matrix in an orthonormal basis of the
/// Hermitian matrices, so that `tr(AB) = ⟨coords(A), coords(B)⟩`.
pub fn hermitian_coordinates(a: &ComplexMatrix) -> Vec<f64> {
    let d = a.dim();
    let mut out = Vec::with_capacity(d * d);
    for k in 0..d {
        out.push(a[(k, k)].re);
    }
    for j in 0..d {
        for k in j + 1..d {
            out.push(std::f64::consts::SQRT_2 * a[(j, k)].re);
            out.push(std::f64::consts::SQRT_2 * a[(j, k)].im);
        }
    }
    out
}

/// Inverse of [`hermitian_coordinates`].
pub fn from_hermitian_coordinates(d: usize, x: &[f64]) -> ComplexMatrix {
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for k in 0..d {
        rows[k][k] = Complex64::new(x[k], 0.0);
    }
    let mut idx = d;
    for j in 0..d {
        for k in j + 1..d {
            let z = Complex64::new(x[idx], x[idx + 1]) / std::f64::consts::SQRT_2;
            rows[j][k] = z;
            rows[k][j] = z.conj();
            idx += 2;
        }
    }
    ComplexMatrix::from_rows(rows).expect("square by construction")
}

fn design_matrix(p: &Povm) -> DMatrix<f64> {
    let d2 = p.d * p.d;
    let rows: Vec<Vec<f64>> = p.elements.iter().map(hermitian_coordinates).collect();
    DMatrix::from_fn(rows.len(), d2, |i, j| rows[i][j])
}

/// Completeness flag and the real rank of the span of the elements.
pub fn is_info_complete(p: &Povm) -> (bool, usize) {
    let m = design_matrix(p);
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > RANK_TOL * top.max(1.0)).count();
    (rank == p.d * p.d, rank)
}

/// Noiseless linear inversion: the trace-one Hermitian least-squares
/// solution of `tr(ρ̂ A_j) = tr(ρ A_j)`, and `‖ρ − ρ̂‖_F`.
pub fn reconstruct(rho: &ComplexMatrix, p: &Povm) -> Result<(ComplexMatrix, f64)> {
    let (complete, rank) = is_info_complete(p);
    if !complete {
        return Err(Error::NotInformationallyComplete {
            rank,
            required: p.d * p.d,
        });
    }
    let beta = DVector::from_vec(p.probabilities(rho)?);
    let m = design_matrix(p);
    let n = p.d * p.d;
    let identity = hermitian_coordinates(&ComplexMatrix::identity(p.d));
    // KKT system of min ‖Mx − β‖² subject to ⟨coords(I), x⟩ = 1.
    let mut kkt = DMatrix::<f64>::zeros(n + 1, n + 1);
    kkt.view_mut((0, 0), (n, n)).copy_from(&(m.transpose() * &m));
    for (i, &t) in identity.iter().enumerate() {
        kkt[(i, n)] = t;
        kkt[(n, i)] = t;
    }
    let mut rhs = DVector::<f64>::zeros(n + 1);
    rhs.rows_mut(0, n).copy_from(&(m.transpose() * beta));
    rhs[n] = 1.0;
    let sol = kkt
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::InvalidArgument(format!("reconstruction solve failed: {e}")))?;
    let estimate = from_hermitian_coordinates(p.d, &sol.as_slice()[..n]);
    let error = rho.distance(&estimate);
    Ok((estimate, error))
}

/// `s_d`: size bound on a minimal covering subfamily.
pub fn s_bound(d: usize) -> Result<usize> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("s_bound needs d ≥ 3, got {d}")));
    }
    let t = (d - 2) * (d - 2);
    Ok(if d % 2 == 1 { (7 + t) / 2 } else { 4 + t / 2 })
}

/// `4 + (d − 2)·|cover|`: size of the refined POVM when three hub groups
/// of two-block hubs exhaust the cover.
pub fn refined_bound(d: usize, cover_size: usize) -> usize {
    4 + d.saturating_sub(2) * cover_size
}

/// A pure POVM: scaled rank-one projectors plus one completion element,
/// stored first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurePovm {
    pub povm: Povm,
    /// Weight `c` of every rank-one element `c·|v⟩⟨v|`.
    pub scale: f64,
    /// Unit vectors behind elements `1..`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Assembles `{I − cΣρ_j} ∪ {cρ_j}`; fails if the completion is not PSD.
pub(crate) fn assemble(d: usize, vectors: Vec<Vec<Complex64>>, scale: f64) -> Result<PurePovm> {
    let projectors: Vec<ComplexMatrix> = vectors.iter().map(|v| ComplexMatrix::outer(v).scale_real(scale)).collect();
    let sum = projectors.iter().fold(ComplexMatrix::zeros(d), |acc, a| &acc + a);
    let completion = &ComplexMatrix::identity(d) - &sum;
    let mut elements = Vec::with_capacity(projectors.len() + 1);
    elements.push(completion);
    elements.extend(projectors);
    Ok(PurePovm {
        povm: Povm::new(d, elements)?,
        scale,
        vectors,
    })
}

/// One eigenbasis per selected MASS, its last column dropped; weights
/// `c = 1/|cover|`, which keeps the completion PSD since each basis
/// contributes at most `I`.
pub fn crude_povm(tag: &Tag, cover: &CoverSelection, seed: u64) -> Result<PurePovm> {
    let d = tag.d();
    if cover.is_empty() {
        return Err(Error::InvalidArgument("empty cover".into()));
    }
    let mut vectors = Vec::with_capacity((d - 1) * cover.len());
    for (s, mass) in cover.masses.iter().enumerate() {
        let basis = mass_eigenbasis(tag, mass, seed.wrapping_add(s as u64))?;
        vectors.extend((0..d - 1).map(|k| basis.column(k)));
    }
    let out = assemble(d, vectors, 1.0 / cover.len() as f64)?;
    let (complete, rank) = is_info_complete(&out.povm);
    if !complete {
        return Err(Error::NotInformationallyComplete { rank, required: d * d });
    }
    Ok(out)
}
