use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fan::Fan;
use super::label::Label;
use super::unitary::Tag;
use crate::combinatorics::{is_partial_hadamard, PartialHadamard};
use crate::error::{Error, Result};
use crate::linalg::quantize::angle_key;
use crate::linalg::{simul_diag, ComplexMatrix};

const ROW_SUM_TOL: f64 = 1e-8;
const HADAMARD_TOL: f64 = 1e-8;

/// Diagonal data of one MASS.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HadamardFanEntry {
    pub labels: Vec<Label>,
    /// Columns are the joint eigenvectors of the MASS.
    pub diagonalizer: ComplexMatrix,
    /// Row `i` is the diagonal of `U* W_{labels[i]} U`.
    pub rows: PartialHadamard,
    /// `rows` with an all-ones top row.
    pub augmented: PartialHadamard,
    /// Quantized angles of `augmented` with columns sorted
    /// lexicographically; rows keep the MASS label order.
    pub canonical: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HadamardFan {
    pub entries: Vec<HadamardFanEntry>,
}

impl HadamardFan {
    /// Canonical augmented matrices as a sorted list, independent of the
    /// order of MASSs.
    pub fn canonical_set(&self) -> Vec<Vec<Vec<i64>>> {
        let mut set: Vec<_> = self.entries.iter().map(|e| e.canonical.clone()).collect();
        set.sort();
        set
    }
}

/// Column-sorted angle-key form of a matrix given by rows.
pub fn canonical_form(rows: &[Vec<Complex64>]) -> Vec<Vec<i64>> {
    let (s, d) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut cols: Vec<Vec<i64>> = (0..d).map(|k| (0..s).map(|i| angle_key(rows[i][k])).collect()).collect();
    cols.sort();
    (0..s).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Simultaneously diagonalizes every MASS of `fan` and records the
/// diagonals as partial Hadamard matrices.
pub fn hadamard_fan(tag: &Tag, fan: &Fan, seed: u64) -> Result<HadamardFan> {
    let d = tag.d();
    let entries = fan
        .masses()
        .iter()
        .enumerate()
        .map(|(alpha, mass)| {
            let ops = mass
                .iter()
                .map(|l| tag.operator(l).cloned())
                .collect::<Result<Vec<ComplexMatrix>>>()?;
            let sd = simul_diag(&ops, 1e-9 * (d as f64).sqrt().max(1.0), seed.wrapping_add(alpha as u64))?;
            for (l, row) in mass.iter().zip(&sd.diagonals) {
                let sum: Complex64 = row.iter().sum();
                if sum.norm() > ROW_SUM_TOL {
                    return Err(Error::NotTraceless {
                        label: l.to_string(),
                        residual: sum.norm(),
                    });
                }
            }
            let mut aug_rows = vec![vec![Complex64::new(1.0, 0.0); d]];
            aug_rows.extend(sd.diagonals.iter().cloned());
            let augmented = PartialHadamard::from_rows(aug_rows.clone())?;
            if !is_partial_hadamard(&augmented, HADAMARD_TOL * d as f64) {
                return Err(Error::InvalidHadamard(format!("augmented matrix of MASS {alpha} is not partial Hadamard")));
            }
            Ok(HadamardFanEntry {
                labels: mass.clone(),
                diagonalizer: sd.unitary,
                rows: PartialHadamard::from_rows(sd.diagonals)?,
                augmented,
                canonical: canonical_form(&aug_rows),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HadamardFan { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::fan::fan_representation;
    use crate::basis::graph::CommutationMode;
    use crate::basis::unitary::{build_pauli2, build_weyl, tag_at};
    use crate::combinatorics::hadamard_fourier;
    use crate::tolerance::Tolerances;

    #[test]
    fn weyl3_diagonal_mass_gives_fourier() {
        let b = build_weyl(3).unwrap();
        let x0 = Label::Pair(0, 0);
        let t = tag_at(&b, &x0).unwrap();
        let fan = fan_representation(&b, Some(&x0), CommutationMode::Numeric, &Tolerances::default()).unwrap();
        let hf = hadamard_fan(&t, &fan, 0).unwrap();
        let y0 = hf
            .entries
            .iter()
            .find(|e| e.labels == vec![Label::Pair(1, 0), Label::Pair(2, 0)])
            .unwrap();
        let f = hadamard_fourier(3);
        let f_rows: Vec<Vec<Complex64>> = (0..3).map(|i| (0..3).map(|k| f[(i, k)]).collect()).collect();
        assert_eq!(y0.canonical, canonical_form(&f_rows));
    }

    #[test]
    fn pauli_cx_gives_real_hadamard() {
        let b = build_pauli2();
        let x0 = Label::Name("II".into());
        let t = tag_at(&b, &x0).unwrap();
        let fan = fan_representation(&b, Some(&x0), CommutationMode::Numeric, &Tolerances::default()).unwrap();
        let hf = hadamard_fan(&t, &fan, 3).unwrap();
        let cx: Vec<Label> = ["IX", "XI", "XX"].iter().map(|s| Label::Name((*s).into())).collect();
        let e = hf.entries.iter().find(|e| e.labels == cx).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                let z = e.augmented.get(i, k);
                assert!(z.im.abs() < 1e-12 && (z.re.abs() - 1.0).abs() < 1e-12);
            }
        }
        assert!(is_partial_hadamard(&e.augmented, 1e-10));
        for entry in &hf.entries {
            for i in 0..entry.rows.rows() {
                assert!(entry.rows.row(i).iter().sum::<Complex64>().norm() < 1e-8);
            }
        }
    }
}
