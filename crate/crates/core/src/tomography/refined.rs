use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cover::minimal_cover;
use super::mub::mass_eigenbasis;
use super::povm::{assemble, is_info_complete, refined_bound, PurePovm};
use crate::basis::{Fan, Label, Tag};
use crate::error::{Error, Result};
use crate::linalg::eig_normal;

const CLUSTER_TOL: f64 = 1e-6;

/// MASSs of the cover that share one hub eigenspace decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HubGroup {
    /// Labels of the cover lying in exactly these MASSs and sharing the
    /// hub's multiplicity pattern; the first one fixes the blocks.
    pub hubs: Vec<Label>,
    pub masses: Vec<Vec<Label>>,
    /// Dimensions of the hub's eigenspaces.
    pub block_sizes: Vec<usize>,
    /// Rank-one elements taken from each MASS, in order.
    pub kept: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinedPovm {
    pub pure: PurePovm,
    pub cover_size: usize,
    pub groups: Vec<HubGroup>,
    /// `4 + (d − 2)·|cover|` when three two-block hub groups exhaust the
    /// cover; `None` when that structure is absent.
    pub bound: Option<usize>,
}

/// Eigenvalue clusters of a normal operator, in the solver's order.
fn clusters(values: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for &z in values {
        match out.iter_mut().find(|(c, _)| (c - z).norm() < CLUSTER_TOL) {
            Some(entry) => entry.1 += 1,
            None => out.push((z, 1)),
        }
    }
    out
}

fn multiplicity_pattern(tag: &Tag, label: &Label) -> Result<(Vec<(Complex64, usize)>, Vec<usize>)> {
    let sd = eig_normal(tag.operator(label)?)?;
    let cl = clusters(&sd.eigenvalues);
    let mut pattern: Vec<usize> = cl.iter().map(|c| c.1).collect();
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    Ok((cl, pattern))
}

/// Pure POVM from a minimal cover in which MASSs sharing a degenerate hub
/// reuse the hub's eigenprojectors.
///
/// The hub family is every cover label with the hub's multiplicity pattern
/// lying in at least two cover MASSs, grouped by the set of MASSs holding
/// it. These groups must partition the cover. Within a group the first
/// MASS keeps `d − 1` eigenvectors and each later MASS keeps all but one
/// vector per hub eigenspace: the dropped ones are recovered from the
/// eigenprojectors, which the first MASS already spans together with `I`.
pub fn refined_povm(tag: &Tag, fan: &Fan, hub: &Label, seed: u64) -> Result<RefinedPovm> {
    let d = tag.d();
    tag.position(hub)?;
    let cover = minimal_cover(fan)?;
    let (_, hub_pattern) = multiplicity_pattern(tag, hub)?;
    if hub_pattern.len() == d {
        return Err(Error::UnsupportedConfiguration(format!("hub {hub} has simple spectrum")));
    }
    let cover_holders = |l: &Label| -> Vec<usize> {
        (0..cover.masses.len())
            .filter(|&i| cover.masses[i].binary_search(l).is_ok())
            .collect()
    };
    if cover_holders(hub).len() < 2 {
        return Err(Error::UnsupportedConfiguration(format!(
            "hub {hub} lies in fewer than two MASSs of the minimal cover"
        )));
    }

    let mut by_holders: BTreeMap<Vec<usize>, Vec<Label>> = BTreeMap::new();
    for l in fan.universe() {
        let holders = cover_holders(l);
        if holders.len() >= 2 && multiplicity_pattern(tag, l)?.1 == hub_pattern {
            by_holders.entry(holders).or_default().push(l.clone());
        }
    }
    let mut seen = vec![false; cover.masses.len()];
    for holders in by_holders.keys() {
        for &i in holders {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::UnsupportedConfiguration(format!(
                    "hubs of pattern {hub_pattern:?} overlap in MASS {:?}",
                    cover.masses[i]
                )));
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::UnsupportedConfiguration(format!(
            "MASS {:?} holds no hub of pattern {hub_pattern:?}",
            cover.masses[i]
        )));
    }

    let mut vectors = Vec::new();
    let mut groups = Vec::new();
    for (holders, mut hubs) in by_holders {
        // The requested hub leads its own group.
        if let Some(p) = hubs.iter().position(|l| l == hub) {
            hubs.swap(0, p);
        }
        let (blocks, _) = multiplicity_pattern(tag, &hubs[0])?;
        let w = tag.operator(&hubs[0])?;
        let mut kept = Vec::with_capacity(holders.len());
        for (g, &i) in holders.iter().enumerate() {
            let basis = mass_eigenbasis(tag, &cover.masses[i], seed.wrapping_add(i as u64))?;
            let mut per_block: Vec<Vec<Vec<Complex64>>> = vec![Vec::new(); blocks.len()];
            for k in 0..d {
                let v = basis.column(k);
                let wv = w.mul_vec(&v);
                let lambda: Complex64 = v.iter().zip(&wv).map(|(a, b)| a.conj() * b).sum();
                let b = blocks
                    .iter()
                    .position(|(c, _)| (c - lambda).norm() < CLUSTER_TOL)
                    .ok_or_else(|| Error::Diagonalization(format!("eigenvector outside the spectrum of {}", hubs[0])))?;
                per_block[b].push(v);
            }
            let before = vectors.len();
            if g == 0 {
                let mut all: Vec<Vec<Complex64>> = per_block.into_iter().flatten().collect();
                all.pop();
                vectors.extend(all);
            } else {
                for mut block in per_block {
                    block.pop();
                    vectors.extend(block);
                }
            }
            kept.push(vectors.len() - before);
        }
        groups.push(HubGroup {
            hubs,
            masses: holders.iter().map(|&i| cover.masses[i].clone()).collect(),
            block_sizes: blocks.iter().map(|b| b.1).collect(),
            kept,
        });
    }

    let pure = assemble(d, vectors, 1.0 / cover.len() as f64)?;
    let (complete, rank) = is_info_complete(&pure.povm);
    if !complete {
        return Err(Error::NotInformationallyComplete { rank, required: d * d });
    }
    let bound = (groups.len() == 3 && hub_pattern.len() == 2).then(|| refined_bound(d, cover.len()));
    Ok(RefinedPovm {
        pure,
        cover_size: cover.len(),
        groups,
        bound,
    })
}
