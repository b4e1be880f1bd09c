use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fan::{enumerate_mass, Fan};
use super::graph::{commutation_graph, CommutationMode};
use super::unitary::{tag_at_with, Tag, UnitaryBasis};
use crate::error::{Error, Result};
use crate::linalg::eigenvalues_normal;
use crate::linalg::quantize::{angle_diff_key, angle_key, principal_angle};
use crate::tolerance::Tolerances;

/// Which equivalence the invariant respects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantVariant {
    /// Conjugation by one unitary.
    Cue,
    /// Conjugation by one unitary up to a phase per operator.
    Pcue,
}

impl fmt::Display for InvariantVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantVariant::Cue => "cue",
            InvariantVariant::Pcue => "pcue",
        })
    }
}

impl FromStr for InvariantVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cue" => Ok(InvariantVariant::Cue),
            "pcue" => Ok(InvariantVariant::Pcue),
            other => Err(Error::InvalidArgument(format!("unknown variant {other:?}; expected cue or pcue"))),
        }
    }
}

/// Spectral data of one operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKey {
    /// Sorted quantized eigenvalue angles.
    Angles(Vec<i64>),
    /// Multiplicities (descending) and sorted quantized angle differences
    /// over ordered pairs of distinct eigenvalue slots.
    Phaseless { partition: Vec<usize>, differences: Vec<i64> },
}

/// Label-free signature of a fan; equal for CUE (or PCUE) related systems.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FanInvariant {
    pub mass_size_multiset: Vec<usize>,
    pub membership_degree_sequence: Vec<usize>,
    pub pairwise_intersection_multiset: Vec<usize>,
    /// Per MASS the sorted operator keys; the outer list is sorted.
    pub spectra: Vec<Vec<SpectrumKey>>,
}

fn spectrum_key(angles: &[f64], variant: InvariantVariant) -> SpectrumKey {
    let mut keys: Vec<i64> = angles
        .iter()
        .map(|&a| angle_key(num_complex::Complex64::from_polar(1.0, a)))
        .collect();
    keys.sort_unstable();
    match variant {
        InvariantVariant::Cue => SpectrumKey::Angles(keys),
        InvariantVariant::Pcue => {
            let mut partition = Vec::new();
            for chunk in keys.chunk_by(|a, b| a == b) {
                partition.push(chunk.len());
            }
            partition.sort_unstable_by(|a, b| b.cmp(a));
            let mut differences: Vec<i64> = angles
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| angles.iter().enumerate().filter(move |&(j, _)| j != i).map(move |(_, &b)| angle_diff_key(a - b)))
                .collect();
            differences.sort_unstable();
            SpectrumKey::Phaseless { partition, differences }
        }
    }
}

/// Invariant of a tag's fan.
pub fn fan_invariant(tag: &Tag, fan: &Fan, variant: InvariantVariant) -> Result<FanInvariant> {
    let mut mass_size_multiset: Vec<usize> = fan.masses().iter().map(Vec::len).collect();
    mass_size_multiset.sort_unstable();
    let mut membership_degree_sequence: Vec<usize> = fan.universe().iter().map(|l| fan.degree(l)).collect();
    membership_degree_sequence.sort_unstable();
    let masses = fan.masses();
    let mut pairwise_intersection_multiset = Vec::with_capacity(masses.len() * masses.len().saturating_sub(1) / 2);
    for (a, ma) in masses.iter().enumerate() {
        for mb in &masses[a + 1..] {
            pairwise_intersection_multiset.push(ma.iter().filter(|l| mb.binary_search(l).is_ok()).count());
        }
    }
    pairwise_intersection_multiset.sort_unstable();

    let keys = tag
        .operators()
        .iter()
        .map(|w| {
            let angles: Vec<f64> = eigenvalues_normal(w)?
                .iter().map(|&z| principal_angle(z)).collect();
            Ok(spectrum_key(&angles, variant))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut spectra = masses
        .iter()
        .map(|mass| {
            let mut ks = mass
                .iter()
                .map(|l| Ok(keys[tag.position(l)?].clone()))
                .collect::<Result<Vec<_>>>()?;
            ks.sort();
            Ok(ks)
        })
        .collect::<Result<Vec<_>>>()?;
    spectra.sort();
    Ok(FanInvariant {
        mass_size_multiset,
        membership_degree_sequence,
        pairwise_intersection_multiset,
        spectra,
    })
}

/// Sorted multiset of fan invariants over all tags.
pub fn fan_system_invariant(basis: &UnitaryBasis, variant: InvariantVariant, tol: &Tolerances) -> Result<Vec<FanInvariant>> {
    let mut invs = basis
        .labels()
        .par_iter()
        .map(|x0| {
            let tag = tag_at_with(basis, x0, tol)?;
            let fan = enumerate_mass(&commutation_graph(&tag, CommutationMode::Numeric, tol)?);
            fan_invariant(&tag, &fan, variant)
        })
        .collect::<Result<Vec<_>>>()?;
    invs.sort();
    Ok(invs)
}

/// Outcome of [`compare_ub`]. Equivalence is never asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "INEQUIVALENT")]
    Inequivalent,
    #[serde(rename = "NOT-DISTINGUISHED")]
    NotDistinguished,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Inequivalent => "INEQUIVALENT",
            Verdict::NotDistinguished => "NOT-DISTINGUISHED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub variant: InvariantVariant,
    /// First invariant component whose multisets differ.
    pub differing_component: Option<String>,
    pub left_distinct_invariants: usize,
    pub right_distinct_invariants: usize,
}

fn first_difference(a: &[FanInvariant], b: &[FanInvariant]) -> Option<String> {
    fn project<T: Ord + Clone>(xs: &[FanInvariant], f: impl Fn(&FanInvariant) -> T) -> Vec<T> {
        let mut v: Vec<T> = xs.iter().map(f).collect();
        v.sort();
        v
    }
    if a.len() != b.len() {
        return Some("tag count".into());
    }
    if project(a, |i| i.mass_size_multiset.clone()) != project(b, |i| i.mass_size_multiset.clone()) {
        return Some("mass_size_multiset".into());
    }
    if project(a, |i| i.membership_degree_sequence.clone()) != project(b, |i| i.membership_degree_sequence.clone()) {
        return Some("membership_degree_sequence".into());
    }
    if project(a, |i| i.pairwise_intersection_multiset.clone()) != project(b, |i| i.pairwise_intersection_multiset.clone()) {
        return Some("pairwise_intersection_multiset".into());
    }
    if a != b {
        return Some("spectra".into());
    }
    None
}

fn distinct(xs: &[FanInvariant]) -> usize {
    let mut v = xs.to_vec();
    v.dedup();
    v.len()
}

/// Compares the multisets of fan invariants over all tags. Differing
/// multisets certify inequivalence; equal ones decide nothing.
pub fn compare_ub(left: &UnitaryBasis, right: &UnitaryBasis, variant: InvariantVariant, tol: &Tolerances) -> Result<Comparison> {
    if left.d() != right.d() {
        return Err(Error::DimensionMismatch {
            expected: left.d(),
            found: right.d(),
        });
    }
    let a = fan_system_invariant(left, variant, tol)?;
    let b = fan_system_invariant(right, variant, tol)?;
    let differing_component = first_difference(&a, &b);
    Ok(Comparison {
        verdict: if differing_component.is_some() {
            Verdict::Inequivalent
        } else {
            Verdict::NotDistinguished
        },
        variant,
        differing_component,
        left_distinct_invariants: distinct(&a),
        right_distinct_invariants: distinct(&b),
    })
}
