use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::latin::{check_inverse_pair, LatinSquare};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const UNIMODULAR_TOL: f64 = 1e-12;
const ROW_ORTHOGONALITY_TOL: f64 = 1e-9;
const FLOAT_PREDICATE_TOL: f64 = 1e-9;
/// Largest root order tried when detecting exact exponents.
pub const MAX_DETECTED_ROOT_ORDER: u32 = 720;

/// `e^{2πi·e/N}`.
pub fn root_of_unity(exponent: u32, order: u32) -> Complex64 {
    Complex64::from_polar(1.0, TAU * f64::from(exponent) / f64::from(order))
}

/// Entries `exponents[n][j][k]` with `H^n_{jk} = e^{2πi·exponent/root_order}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactExponents {
    pub root_order: u32,
    pub exponents: Vec<Vec<Vec<u32>>>,
}

/// Complex Hadamard matrices `H^(0), …, H^(d−1)`, optionally with an exact
/// root-of-unity representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyWire", into = "FamilyWire")]
pub struct HadamardFamily {
    d: usize,
    matrices: Vec<ComplexMatrix>,
    exact: Option<ExactExponents>,
}

#[derive(Serialize, Deserialize)]
struct FamilyWire {
    d: usize,
    /// Keys are decimal indices `0..d`.
    matrices: BTreeMap<String, ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponents: Option<Vec<Vec<Vec<u32>>>>,
}

impl TryFrom<FamilyWire> for HadamardFamily {
    type Error = Error;
    fn try_from(w: FamilyWire) -> Result<Self> {
        let mut indexed = w
            .matrices
            .into_iter()
            .map(|(k, m)| k.parse::<usize>().map(|k| (k, m)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidHadamard("matrix keys must be decimal indices".into()))?;
        indexed.sort_by_key(|(k, _)| *k);
        if indexed.iter().map(|(k, _)| *k).ne(0..indexed.len()) {
            return Err(Error::InvalidHadamard("matrix keys must be 0..d−1".into()));
        }
        let family = HadamardFamily::new(indexed.into_iter().map(|(_, m)| m).collect())?;
        if family.d != w.d {
            return Err(Error::DimensionMismatch {
                expected: w.d,
                found: family.d,
            });
        }
        match (w.root_order, w.exponents) {
            (None, None) => Ok(family),
            (Some(root_order), Some(exponents)) => family.with_exponents(ExactExponents { root_order, exponents }),
            _ => Err(Error::InvalidHadamard("root_order and exponents must be given together".into())),
        }
    }
}

impl From<HadamardFamily> for FamilyWire {
    fn from(f: HadamardFamily) -> Self {
        FamilyWire {
            d: f.d,
            matrices: f.matrices.into_iter().enumerate().map(|(k, m)| (k.to_string(), m)).collect(),
            root_order: f.exact.as_ref().map(|e| e.root_order),
            exponents: f.exact.map(|e| e.exponents),
        }
    }
}

impl HadamardFamily {
    /// Validates `d` matrices of size `d`, each unimodular with `HH* = dI`.
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let d = matrices.len();
        if d == 0 {
            return Err(Error::InvalidHadamard("empty family".into()));
        }
        for (n, h) in matrices.iter().enumerate() {
            if h.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: h.dim(),
                });
            }
            if let Some(z) = h.entries().into_iter().find(|z| (z.norm() - 1.0).abs() > UNIMODULAR_TOL) {
                return Err(Error::InvalidHadamard(format!("H^{n} has entry {z} of modulus {}", z.norm())));
            }
            let residual = (h * &h.adjoint()).distance(&ComplexMatrix::identity(d).scale_real(d as f64));
            if residual > ROW_ORTHOGONALITY_TOL {
                return Err(Error::InvalidHadamard(format!("H^{n} has HH* − dI residual {residual:.3e}")));
            }
        }
        Ok(Self {
            d,
            matrices,
            exact: None,
        })
    }

    /// The same matrix `H` for every `n`.
    pub fn constant(h: ComplexMatrix) -> Result<Self> {
        Self::new(vec![h.clone(); h.dim()])
    }

    /// Fourier matrix for every `n`, with exact exponents of order `d`.
    pub fn fourier(d: usize) -> Self {
        let exps: Vec<Vec<u32>> = (0..d).map(|j| (0..d).map(|k| ((j * k) % d) as u32).collect()).collect();
        Self {
            d,
            matrices: vec![hadamard_fourier(d); d],
            exact: Some(ExactExponents {
                root_order: d as u32,
                exponents: vec![exps; d],
            }),
        }
    }

    /// Attaches an exact representation after checking it against the
    /// numeric entries.
    pub fn with_exponents(mut self, exact: ExactExponents) -> Result<Self> {
        if exact.root_order == 0 {
            return Err(Error::InvalidHadamard("root order must be positive".into()));
        }
        let d = self.d;
        if exact.exponents.len() != d || exact.exponents.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(Error::InvalidHadamard("exponent table has wrong shape".into()));
        }
        for n in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let e = exact.exponents[n][j][k] % exact.root_order;
                    if (root_of_unity(e, exact.root_order) - self.matrices[n][(j, k)]).norm() > 1e-10 {
                        return Err(Error::InvalidHadamard(format!(
                            "exponent at H^{n}[{j}][{k}] does not match the entry"
                        )));
                    }
                }
            }
        }
        self.exact = Some(exact);
        Ok(self)
    }

    /// Finds the smallest `N ≤ max_order` making every entry an `N`-th root
    /// of unity and attaches the exponents; leaves the family numeric
    /// otherwise.
    pub fn detect_roots(self, max_order: u32) -> Self {
        let entries: Vec<Complex64> = self.matrices.iter().flat_map(|m| m.entries()).collect();
        let fits = |n: u32| {
            entries.iter().all(|z| {
                let t = z.arg() / TAU * f64::from(n);
                (t - t.round()).abs() * TAU / f64::from(n) < 1e-10
            })
        };
        let Some(order) = (1..=max_order).find(|&n| fits(n)) else {
            return self;
        };
        let d = self.d;
        let exponents = (0..d)
            .map(|n| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .map(|k| {
                                let t = self.matrices[n][(j, k)].arg() / TAU * f64::from(order);
                                (t.round() as i64).rem_euclid(i64::from(order)) as u32
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        self.with_exponents(ExactExponents {
            root_order: order,
            exponents,
        })
        .expect("detected exponents match by construction")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self, n: usize) -> &ComplexMatrix {
        &self.matrices[n]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn exact(&self) -> Option<&ExactExponents> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Drops the exact representation, forcing float predicates.
    pub fn numeric_only(&self) -> Self {
        Self {
            exact: None,
            ..self.clone()
        }
    }

    /// `H^n_{jk}`.
    pub fn entry(&self, n: usize, j: usize, k: usize) -> Complex64 {
        self.matrices[n][(j, k)]
    }
}

/// `H_{jk} = e^{2πi·jk/d}`.
pub fn hadamard_fourier(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |j, k| root_of_unity(((j * k) % d) as u32, d as u32))
}

fn check_sizes(family: &HadamardFamily, lambda: &LatinSquare) -> Result<()> {
    if family.d != lambda.size() {
        return Err(Error::DimensionMismatch {
            expected: family.d,
            found: lambda.size(),
        });
    }
    Ok(())
}

/// Compares `Π lhs = Π rhs` for every `k`, exactly when exponents are
/// available. Each side is a list of `(n, row, column, conjugate)` factors.
fn product_identity<F>(family: &HadamardFamily, factors: F) -> bool
where
    F: Fn(usize) -> [Vec<(usize, usize, usize, bool)>; 2],
{
    let d = family.d;
    match &family.exact {
        Some(ex) => {
            let n_ord = i64::from(ex.root_order);
            let side = |fs: &[(usize, usize, usize, bool)]| {
                fs.iter()
                    .map(|&(n, j, k, c)| {
                        let e = i64::from(ex.exponents[n][j][k]);
                        if c {
                            -e
                        } else {
                            e
                        }
                    })
                    .sum::<i64>()
                    .rem_euclid(n_ord)
            };
            (0..d).all(|k| {
                let [l, r] = factors(k);
                side(&l) == side(&r)
            })
        }
        None => {
            let side = |fs: &[(usize, usize, usize, bool)]| {
                fs.iter().fold(Complex64::new(1.0, 0.0), |acc, &(n, j, k, c)| {
                    let z = family.entry(n, j, k);
                    acc * if c { z.conj() } else { z }
                })
            };
            (0..d).all(|k| {
                let [l, r] = factors(k);
                (side(&l) - side(&r)).norm() <= FLOAT_PREDICATE_TOL
            })
        }
    }
}

/// `H^n_{m,λ(n′,k)} H^{n′}_{m′k} = H^{n′}_{m′,λ(n,k)} H^n_{mk}` for every `k`.
pub fn hadamard_crisscross(
    family: &HadamardFamily,
    lambda: &LatinSquare,
    (m, n): (usize, usize),
    (mp, np): (usize, usize),
) -> Result<bool> {
    check_sizes(family, lambda)?;
    Ok(product_identity(family, |k| {
        [
            vec![(n, m, lambda.at(np, k), false), (np, mp, k, false)],
            vec![(np, mp, lambda.at(n, k), false), (n, m, k, false)],
        ]
    }))
}

/// Commutation of `W_x`, `W_y` at the tag `x₀`: with
/// `j′ = μ(n₀, λ(n′, k))` and `j = μ(n₀, λ(n, k))`,
/// `H^n_{m,j′} conj(H^{n₀}_{m₀,j′}) H^{n′}_{m′k} = H^{n′}_{m′,j} conj(H^{n₀}_{m₀,j}) H^n_{mk}`.
pub fn hadamard_twill(
    family: &HadamardFamily,
    lambda: &LatinSquare,
    mu: &LatinSquare,
    (m, n): (usize, usize),
    (m0, n0): (usize, usize),
    (mp, np): (usize, usize),
) -> Result<bool> {
    check_sizes(family, lambda)?;
    check_inverse_pair(lambda, mu)?;
    Ok(product_identity(family, |k| {
        let jp = mu.at(n0, lambda.at(np, k));
        let j = mu.at(n0, lambda.at(n, k));
        [
            vec![(n, m, jp, false), (n0, m0, jp, true), (np, mp, k, false)],
            vec![(np, mp, j, false), (n0, m0, j, true), (n, m, k, false)],
        ]
    }))
}

/// An `s × d` matrix with unimodular entries and pairwise orthogonal rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialHadamard {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl PartialHadamard {
    /// Shape-checked constructor; the Hadamard property is tested by
    /// [`is_partial_hadamard`].
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::InvalidArgument("partial Hadamard needs a nonempty first row".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Unimodular entries within `tol` and `HH* = d·I_s` within `tol`
/// (Frobenius).
pub fn is_partial_hadamard(h: &PartialHadamard, tol: f64) -> bool {
    if h.entries.iter().any(|z| (z.norm() - 1.0).abs() > tol) {
        return false;
    }
    let d = h.cols as f64;
    let mut residual = 0.0;
    for i in 0..h.rows {
        for j in 0..h.rows {
            let ip: Complex64 = h.row(i).iter().zip(h.row(j)).map(|(a, b)| a * b.conj()).sum();
            let target = if i == j { d } else { 0.0 };
            residual += (ip - target).norm_sqr();
        }
    }
    residual.sqrt() <= tol
}
