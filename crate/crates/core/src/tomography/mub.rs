use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::basis::{Label, Tag};
use crate::error::{Error, Result};
use crate::linalg::{simul_diag, ComplexMatrix};

const ORTHONORMAL_TOL: f64 = 1e-10;
const UNBIASED_TOL: f64 = 1e-9;
const EIGEN_RESIDUAL_TOL: f64 = 1e-8;

/// Orthonormal bases of `ℂ^d`, pairwise unbiased. Columns are basis vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MubWire")]
pub struct MubSystem {
    d: usize,
    bases: Vec<ComplexMatrix>,
    source: Vec<Vec<Label>>,
}

#[derive(Deserialize)]
struct MubWire {
    d: usize,
    bases: Vec<ComplexMatrix>,
    source: Vec<Vec<Label>>,
}

impl TryFrom<MubWire> for MubSystem {
    type Error = Error;
    fn try_from(w: MubWire) -> Result<Self> {
        MubSystem::new(w.d, w.bases, w.source)
    }
}

impl MubSystem {
    pub fn new(d: usize, bases: Vec<ComplexMatrix>, source: Vec<Vec<Label>>) -> Result<Self> {
        if bases.len() != source.len() {
            return Err(Error::InvalidArgument("one source MASS per basis required".into()));
        }
        for b in &bases {
            if b.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
            }
            let residual = (&b.adjoint() * b).distance(&ComplexMatrix::identity(d));
            if residual > ORTHONORMAL_TOL {
                return Err(Error::InvalidArgument(format!("basis is not orthonormal (residual {residual:.3e})")));
            }
        }
        let out = Self { d, bases, source };
        let deviation = out.unbiasedness_deviation();
        if deviation > UNBIASED_TOL {
            return Err(Error::NotUnbiased { deviation });
        }
        Ok(out)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bases(&self) -> &[ComplexMatrix] {
        &self.bases
    }

    pub fn source(&self) -> &[Vec<Label>] {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// `max |d·|⟨b_i^s, b_j^t⟩|² − 1|` over `s ≠ t`; zero for one basis.
    pub fn unbiasedness_deviation(&self) -> f64 {
        let d = self.d as f64;
        let mut worst: f64 = 0.0;
        for (s, bs) in self.bases.iter().enumerate() {
            for bt in &self.bases[s + 1..] {
                let gram = &bs.adjoint() * bt;
                for z in gram.entries() {
                    worst = worst.max((d * z.norm_sqr() - 1.0).abs());
                }
            }
        }
        worst
    }
}

/// Joint orthonormal eigenbasis (as columns) of the members of `mass`.
pub fn mass_eigenbasis(tag: &Tag, mass: &[Label], seed: u64) -> Result<ComplexMatrix> {
    let ops = mass
        .iter()
        .map(|l| tag.operator(l).cloned())
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate().skip(i + 1) {
            let residual = a.commutator_norm(b);
            if residual > 1e-9 * (tag.d() as f64) {
                return Err(Error::NotCommuting {
                    first: mass[i].to_string(),
                    second: mass[j].to_string(),
                    residual,
                });
            }
        }
    }
    let sd = simul_diag(&ops, 1e-9 * (tag.d() as f64), seed)?;
    for (l, op) in mass.iter().zip(&ops) {
        let conj = &(&sd.unitary.adjoint() * op) * &sd.unitary;
        let off: f64 = (0..tag.d())
            .flat_map(|i| (0..tag.d()).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| conj[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off > EIGEN_RESIDUAL_TOL {
            return Err(Error::Diagonalization(format!("{l} keeps off-diagonal weight {off:.3e}")));
        }
    }
    Ok(sd.unitary)
}

/// One eigenbasis per part of a partition of the tag into MASSs of size
/// `d − 1`.
pub fn mub_from_partition(tag: &Tag, partition: &[Vec<Label>], seed: u64) -> Result<MubSystem> {
    let d = tag.d();
    let mut seen = BTreeSet::new();
    for part in partition {
        if part.len() + 1 != d {
            return Err(Error::InvalidPartition(format!("part of size {} (expected {})", part.len(), d - 1)));
        }
        for l in part {
            tag.position(l)?;
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidPartition(format!("{l} appears in two parts")));
            }
        }
    }
    if seen.len() != tag.labels().len() {
        return Err(Error::InvalidPartition(format!(
            "parts cover {} of {} elements",
            seen.len(),
            tag.labels().len()
        )));
    }
    let bases = partition
        .iter()
        .enumerate()
        .map(|(s, part)| mass_eigenbasis(tag, part, seed.wrapping_add(s as u64)))
        .collect::<Result<Vec<_>>>()?;
    MubSystem::new(d, bases, partition.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_weyl, tag_at};

    fn pair(m: usize, n: usize) -> Label {
        Label::Pair(m, n)
    }

    #[test]
    fn diagonal_mass_gives_standard_basis() {
        let t = tag_at(&build_weyl(3).unwrap(), &pair(0, 0)).unwrap();
        let b = mass_eigenbasis(&t, &[pair(1, 0), pair(2, 0)], 0).unwrap();
        for k in 0..3 {
            let col = b.column(k);
            assert_eq!(col.iter().filter(|z| z.norm() > 1e-9).count(), 1);
        }
    }

    #[test]
    fn shift_mass_gives_fourier_columns() {
        let t = tag_at(&build_weyl(3).unwrap(), &pair(0, 0)).unwrap();
        let b = mass_eigenbasis(&t, &[pair(0, 1), pair(0, 2)], 0).unwrap();
        for k in 0..3 {
            for z in b.column(k) {
                assert!((z.norm_sqr() - 1.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_commuting_and_bad_partitions() {
        let t = tag_at(&build_weyl(3).unwrap(), &pair(0, 0)).unwrap();
        assert!(matches!(
            mass_eigenbasis(&t, &[pair(1, 0), pair(0, 1)], 0),
            Err(Error::NotCommuting { .. })
        ));
        let short = vec![vec![pair(1, 0), pair(2, 0)]];
        assert!(matches!(mub_from_partition(&t, &short, 0), Err(Error::InvalidPartition(_))));
        let overlapping = vec![vec![pair(1, 0), pair(2, 0)], vec![pair(1, 0), pair(2, 0)]];
        assert!(matches!(mub_from_partition(&t, &overlapping, 0), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn single_simple_operator_basis() {
        let t = tag_at(&build_weyl(5).unwrap(), &pair(0, 0)).unwrap();
        let b = mass_eigenbasis(&t, &[pair(1, 1)], 2).unwrap();
        let w = t.operator(&pair(1, 1)).unwrap();
        let conj = &(&b.adjoint() * w) * &b;
        let diag = ComplexMatrix::diagonal(&conj.diag());
        assert!(conj.distance(&diag) < 1e-10);
    }
}
