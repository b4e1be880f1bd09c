use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::graph::{basis_commutation_graph, commutation_graph, CommutationGraph, CommutationMode};
use super::label::Label;
use super::unitary::{tag_at_with, UnitaryBasis};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// All maximal commuting subsets (MASSs) of a system, as label sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fan {
    universe: Vec<Label>,
    masses: Vec<Vec<Label>>,
}

impl Fan {
    /// Sorts each MASS and the list of MASSs into canonical order.
    pub fn new(universe: Vec<Label>, mut masses: Vec<Vec<Label>>) -> Self {
        for m in &mut masses {
            m.sort();
        }
        masses.sort();
        Self { universe, masses }
    }

    pub fn universe(&self) -> &[Label] {
        &self.universe
    }

    pub fn masses(&self) -> &[Vec<Label>] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Number of MASSs containing `label`.
    pub fn degree(&self, label: &Label) -> usize {
        self.masses.iter().filter(|m| m.binary_search(label).is_ok()).count()
    }

    pub fn contains_mass(&self, mass: &[Label]) -> bool {
        let mut m = mass.to_vec();
        m.sort();
        self.masses.binary_search(&m).is_ok()
    }

    /// Checks that the MASSs are exactly the maximal cliques of `graph` and
    /// cover its vertices.
    pub fn validate(&self, graph: &CommutationGraph) -> Result<()> {
        let pos = |l: &Label| {
            graph
                .position(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut covered = FixedBitSet::with_capacity(graph.vertices().len());
        for mass in &self.masses {
            let idx = mass.iter().map(pos).collect::<Result<Vec<_>>>()?;
            for (a, &i) in idx.iter().enumerate() {
                covered.insert(i);
                if let Some(&j) = idx[..a].iter().find(|&&j| !graph.adjacent(i, j)) {
                    return Err(Error::InvalidArgument(format!(
                        "{} and {} in one MASS do not commute",
                        graph.vertices()[i],
                        graph.vertices()[j]
                    )));
                }
            }
            let extendable = (0..graph.vertices().len()).find(|&v| !idx.contains(&v) && idx.iter().all(|&i| graph.adjacent(v, i)));
            if let Some(v) = extendable {
                return Err(Error::InvalidArgument(format!(
                    "MASS is not maximal: {} commutes with every member",
                    graph.vertices()[v]
                )));
            }
        }
        if covered.count_ones(..) != graph.vertices().len() {
            return Err(Error::InvalidArgument("MASSs do not cover the system".into()));
        }
        let expected = enumerate_mass(graph);
        if expected.masses != self.masses {
            return Err(Error::InvalidArgument("fan is not the full set of maximal cliques".into()));
        }
        Ok(())
    }

    /// Bipartite membership graph: square nodes `M<k>` for MASSs, circle
    /// nodes for labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph fan {\n");
        for l in &self.universe {
            let _ = writeln!(out, "  \"{l}\" [shape=circle];");
        }
        for (k, mass) in self.masses.iter().enumerate() {
            let _ = writeln!(out, "  \"M{k}\" [shape=square];");
            for l in mass {
                let _ = writeln!(out, "  \"M{k}\" -- \"{l}\";");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All maximal cliques by Bron–Kerbosch recursion with pivoting.
pub fn enumerate_mass(graph: &CommutationGraph) -> Fan {
    let n = graph.vertices().len();
    let neighbours: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let mut s = FixedBitSet::with_capacity(n);
            s.extend((0..n).filter(|&j| j != i && graph.adjacent(i, j)));
            s
        })
        .collect();
    let mut cliques = Vec::new();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    bron_kerbosch(&neighbours, &mut Vec::new(), all, FixedBitSet::with_capacity(n), &mut cliques);
    let masses = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| graph.vertices()[i].clone()).collect())
        .collect();
    Fan::new(graph.vertices().to_vec(), masses)
}

fn bron_kerbosch(
    neighbours: &[FixedBitSet],
    current: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_clear() && excluded.is_clear() {
        out.push(current.clone());
        return;
    }
    // Pivot with most candidate neighbours; only its non-neighbours branch.
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| (neighbours[u].intersection(&candidates).count(), std::cmp::Reverse(u)))
        .expect("candidates or excluded is nonempty");
    let mut branch = candidates.clone();
    branch.difference_with(&neighbours[pivot]);
    for v in branch.ones() {
        let mut next_c = candidates.clone();
        next_c.intersect_with(&neighbours[v]);
        let mut next_x = excluded.clone();
        next_x.intersect_with(&neighbours[v]);
        current.push(v);
        bron_kerbosch(neighbours, current, next_c, next_x, out);
        current.pop();
        candidates.set(v, false);
        excluded.insert(v);
    }
}

/// Fan of the tag at `x0`, or of the whole basis when `x0` is `None`.
pub fn fan_representation(basis: &UnitaryBasis, x0: Option<&Label>, mode: CommutationMode, tol: &Tolerances) -> Result<Fan> {
    let graph = match x0 {
        Some(x0) => commutation_graph(&tag_at_with(basis, x0, tol)?, mode, tol)?,
        None => basis_commutation_graph(basis, mode, tol)?,
    };
    Ok(enumerate_mass(&graph))
}

/// One fan per tag, in basis label order.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(from = "std::collections::BTreeMap<Label, Fan>")]
pub struct FanSystem {
    fans: Vec<(Label, Fan)>,
}

impl From<std::collections::BTreeMap<Label, Fan>> for FanSystem {
    fn from(m: std::collections::BTreeMap<Label, Fan>) -> Self {
        Self { fans: m.into_iter().collect() }
    }
}

impl Serialize for FanSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.fans.len()))?;
        for (l, f) in &self.fans {
            map.serialize_entry(l, f)?;
        }
        map.end()
    }
}

impl FanSystem {
    pub fn fans(&self) -> &[(Label, Fan)] {
        &self.fans
    }

    pub fn get(&self, x0: &Label) -> Option<&Fan> {
        self.fans.iter().find(|(l, _)| l == x0).map(|(_, f)| f)
    }

    pub fn len(&self) -> usize {
        self.fans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fans.is_empty()
    }
}

/// Fan representation at every tag; tags are processed in parallel and
/// collected in label order.
pub fn fan_system(basis: &UnitaryBasis, mode: CommutationMode, tol: &Tolerances) -> Result<FanSystem> {
    let fans = basis
        .labels()
        .par_iter()
        .map(|x0| Ok((x0.clone(), fan_representation(basis, Some(x0), mode, tol)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FanSystem { fans })
}

/// Labels contained in more than one MASS.
pub fn overlapping_labels(fan: &Fan) -> BTreeSet<Label> {
    fan.universe().iter().filter(|l| fan.degree(l) > 1).cloned().collect()
}
