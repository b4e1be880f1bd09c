use num_complex::Complex64;
use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// `J = [[0, I], [−I, 0]]` of size `2n`.
pub fn symplectic_j(n: usize) -> ComplexMatrix {
    let one = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_fn(2 * n, |i, j| {
        if i < n && j == i + n {
            one
        } else if i >= n && j + n == i {
            -one
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `[[A, B], [D, Aᵗ]]` with `Bᵗ = −B` and `Dᵗ = −D`, held exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ShmWire")]
pub struct SkewHamiltonian {
    n: usize,
    matrix: ComplexMatrix,
}

#[derive(Deserialize)]
struct ShmWire {
    n: usize,
    matrix: ComplexMatrix,
}

impl TryFrom<ShmWire> for SkewHamiltonian {
    type Error = Error;
    fn try_from(w: ShmWire) -> Result<Self> {
        SkewHamiltonian::new(w.n, w.matrix)
    }
}

impl SkewHamiltonian {
    /// Checks the block pattern bit for bit.
    pub fn new(n: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: matrix.dim(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[(n + i, n + j)] != matrix[(j, i)] {
                    return Err(Error::InvalidArgument(format!("lower-right block differs from Aᵗ at ({i},{j})")));
                }
                if matrix[(i, n + j)] != -matrix[(j, n + i)] {
                    return Err(Error::InvalidArgument(format!("B is not antisymmetric at ({i},{j})")));
                }
                if matrix[(n + i, j)] != -matrix[(n + j, i)] {
                    return Err(Error::InvalidArgument(format!("D is not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { n, matrix })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            matrix: ComplexMatrix::zeros(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// `‖T − J Tᵗ J*‖_F`; zero up to rounding for every skew-Hamiltonian `T`.
pub fn shm_residual(t: &ComplexMatrix) -> Result<f64> {
    if t.dim() % 2 != 0 {
        return Err(Error::InvalidArgument(format!("odd dimension {}", t.dim())));
    }
    let j = symplectic_j(t.dim() / 2);
    Ok(t.distance(&(&(&j * &t.transpose()) * &j.adjoint())))
}

pub(crate) fn random_shm_from<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SkewHamiltonian {
    let unit = Uniform::new_inclusive(-1.0, 1.0);
    let mut draw = || Complex64::new(unit.sample(rng), unit.sample(rng));
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let a = draw();
            rows[i][j] = a;
            rows[n + j][n + i] = a;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let b = draw();
            rows[i][n + j] = b;
            rows[j][n + i] = -b;
            let d = draw();
            rows[n + i][j] = d;
            rows[n + j][i] = -d;
        }
    }
    let matrix = ComplexMatrix::from_rows(rows).expect("square by construction");
    SkewHamiltonian::new(n, matrix).expect("pattern holds by construction")
}

/// Random skew-Hamiltonian with entries in `[−1, 1] + i[−1, 1]`; with
/// `psd` set, the zero matrix, the positive choice used on block diagonals.
pub fn random_shm(n: usize, seed: u64, psd: bool) -> SkewHamiltonian {
    if psd {
        return SkewHamiltonian::zero(n);
    }
    random_shm_from(n, &mut ChaCha8Rng::seed_from_u64(seed))
}
