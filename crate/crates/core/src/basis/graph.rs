use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::label::Label;
use super::unitary::{Provenance, Tag, UnitaryBasis};
use crate::combinatorics::{
    hadamard_crisscross, hadamard_twill, latin_crisscross, latin_inverse, latin_twill, HadamardFamily, LatinSquare,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance::Tolerances;

/// How commutation is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommutationMode {
    /// `‖AB − BA‖_F ≤ tol.commutation`.
    Numeric,
    /// Latin and Hadamard criss-cross on root-of-unity exponents.
    ExactCrisscross,
    /// Latin and Hadamard twill on root-of-unity exponents.
    ExactTwill,
}

impl fmt::Display for CommutationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommutationMode::Numeric => "numeric",
            CommutationMode::ExactCrisscross => "exact-crisscross",
            CommutationMode::ExactTwill => "exact-twill",
        })
    }
}

impl FromStr for CommutationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(CommutationMode::Numeric),
            "exact-crisscross" => Ok(CommutationMode::ExactCrisscross),
            "exact-twill" => Ok(CommutationMode::ExactTwill),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?}; expected numeric, exact-crisscross or exact-twill"
            ))),
        }
    }
}

/// Symmetric commutation relation with a true diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationGraph {
    vertices: Vec<Label>,
    adjacency: Vec<Vec<bool>>,
    mode: CommutationMode,
}

impl CommutationGraph {
    /// Validates symmetry and the diagonal.
    pub fn new(vertices: Vec<Label>, adjacency: Vec<Vec<bool>>, mode: CommutationMode) -> Result<Self> {
        let n = vertices.len();
        if adjacency.len() != n || adjacency.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: adjacency.len(),
            });
        }
        for i in 0..n {
            if !adjacency[i][i] {
                return Err(Error::InvalidArgument(format!("vertex {} is not adjacent to itself", vertices[i])));
            }
            for j in 0..i {
                if adjacency[i][j] != adjacency[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency of {} and {} is not symmetric",
                        vertices[i], vertices[j]
                    )));
                }
            }
        }
        Ok(Self {
            vertices,
            adjacency,
            mode,
        })
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn mode(&self) -> CommutationMode {
        self.mode
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.vertices.iter().position(|l| l == label)
    }

    /// Same relation on both graphs, as sets of labelled edges.
    pub fn same_relation(&self, other: &Self) -> bool {
        if self.vertices != other.vertices {
            return false;
        }
        self.adjacency == other.adjacency
    }
}

fn build(vertices: Vec<Label>, mode: CommutationMode, rel: impl Fn(usize, usize) -> Result<bool> + Sync) -> Result<CommutationGraph> {
    let n = vertices.len();
    let upper: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).map(|j| rel(i, j)).collect::<Result<Vec<bool>>>())
        .collect::<Result<_>>()?;
    let mut adjacency = vec![vec![true; n]; n];
    for i in 0..n {
        for (off, &a) in upper[i].iter().enumerate() {
            let j = i + 1 + off;
            adjacency[i][j] = a;
            adjacency[j][i] = a;
        }
    }
    CommutationGraph::new(vertices, adjacency, mode)
}

fn numeric(ops: &[ComplexMatrix], tol: f64) -> impl Fn(usize, usize) -> Result<bool> + Sync + '_ {
    move |i, j| Ok(ops[i].commutator_norm(&ops[j]) <= tol)
}

fn exact_source<'a>(provenance: Option<&'a Provenance>, mode: CommutationMode) -> Result<(&'a LatinSquare, &'a HadamardFamily)> {
    match provenance {
        Some(Provenance::ShiftMultiply { latin, family }) if family.is_exact() => Ok((latin, family)),
        Some(Provenance::ShiftMultiply { .. }) => Err(Error::ExactModeUnavailable(format!(
            "{mode} needs root-of-unity exponents on the Hadamard family"
        ))),
        _ => Err(Error::ExactModeUnavailable(format!("{mode} needs a shift-and-multiply basis"))),
    }
}

fn pair_of(label: &Label) -> Result<(usize, usize)> {
    label
        .pair()
        .ok_or_else(|| Error::ExactModeUnavailable(format!("label {label} is not an index pair")))
}

/// Commutation graph of the whole basis.
///
/// [`CommutationMode::ExactTwill`] is not meaningful without a tag and is
/// rejected.
pub fn basis_commutation_graph(basis: &UnitaryBasis, mode: CommutationMode, tol: &Tolerances) -> Result<CommutationGraph> {
    let vertices = basis.labels().to_vec();
    match mode {
        CommutationMode::Numeric => build(vertices, mode, numeric(basis.operators(), tol.commutation)),
        CommutationMode::ExactCrisscross => {
            let (latin, family) = exact_source(Some(basis.provenance()), mode)?;
            let pairs = vertices.iter().map(pair_of).collect::<Result<Vec<_>>>()?;
            build(vertices, mode, |i, j| crisscross(latin, family, pairs[i], pairs[j]))
        }
        CommutationMode::ExactTwill => Err(Error::ExactModeUnavailable(
            "exact-twill needs a tag; use exact-crisscross for the whole basis".into(),
        )),
    }
}

fn crisscross(latin: &LatinSquare, family: &HadamardFamily, x: (usize, usize), y: (usize, usize)) -> Result<bool> {
    Ok(latin_crisscross(latin, x.1, y.1) && hadamard_crisscross(family, latin, x, y)?)
}

/// Commutation graph of a tag's system `W`.
///
/// [`CommutationMode::ExactCrisscross`] applies only when `U_{x₀}` is a
/// scalar multiple of the identity, where `W_x W_y = W_y W_x` reduces to
/// `U_x U_y = U_y U_x`.
pub fn commutation_graph(tag: &Tag, mode: CommutationMode, tol: &Tolerances) -> Result<CommutationGraph> {
    let vertices = tag.labels().to_vec();
    match mode {
        CommutationMode::Numeric => build(vertices, mode, numeric(tag.operators(), tol.commutation)),
        CommutationMode::ExactCrisscross => {
            let (latin, family) = exact_source(tag.provenance(), mode)?;
            let u0 = tag.u_x0();
            if u0.scalar_residual() > tol.unitarity {
                return Err(Error::ExactModeUnavailable(format!(
                    "exact-crisscross on a tag needs U at {} to be scalar; use exact-twill",
                    tag.x0()
                )));
            }
            let pairs = vertices.iter().map(pair_of).collect::<Result<Vec<_>>>()?;
            build(vertices, mode, |i, j| crisscross(latin, family, pairs[i], pairs[j]))
        }
        CommutationMode::ExactTwill => {
            let (latin, family) = exact_source(tag.provenance(), mode)?;
            let mu = latin_inverse(latin);
            let x0 = pair_of(tag.x0())?;
            let pairs = vertices.iter().map(pair_of).collect::<Result<Vec<_>>>()?;
            build(vertices, mode, |i, j| {
                let (x, y) = (pairs[i], pairs[j]);
                Ok(latin_twill(latin, &mu, x.1, x0.1, y.1)? && hadamard_twill(family, latin, &mu, x, x0, y)?)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::unitary::{build_pauli2, build_shift_multiply, build_weyl, tag_at};
    use crate::combinatorics::{group_cyclic, group_product, group_s3, latin_from_group, FiniteGroup, Variant};

    fn name(s: &str) -> Label {
        Label::Name(s.into())
    }

    #[test]
    fn weyl_adjacency_is_symplectic() {
        let tol = Tolerances::default();
        for d in 2..=6 {
            let b = build_weyl(d).unwrap();
            let t = tag_at(&b, &Label::Pair(0, 0)).unwrap();
            let g = commutation_graph(&t, CommutationMode::Numeric, &tol).unwrap();
            for (i, x) in g.vertices().iter().enumerate() {
                for (j, y) in g.vertices().iter().enumerate() {
                    let ((m, n), (mp, np)) = (x.pair().unwrap(), y.pair().unwrap());
                    assert_eq!(g.adjacent(i, j), (m * np + d * d - mp * n) % d == 0);
                }
            }
        }
    }

    #[test]
    fn weyl6_neighbours_of_two_zero() {
        let b = build_weyl(6).unwrap();
        let t = tag_at(&b, &Label::Pair(0, 0)).unwrap();
        let g = commutation_graph(&t, CommutationMode::ExactCrisscross, &Tolerances::default()).unwrap();
        let i = g.position(&Label::Pair(2, 0)).unwrap();
        for (j, y) in g.vertices().iter().enumerate() {
            let np = y.pair().unwrap().1;
            assert_eq!(g.adjacent(i, j), np == 0 || np == 3, "{y}");
        }
    }

    #[test]
    fn pauli_adjacency() {
        let b = build_pauli2();
        let t = tag_at(&b, &name("II")).unwrap();
        let g = commutation_graph(&t, CommutationMode::Numeric, &Tolerances::default()).unwrap();
        let xi = g.position(&name("XI")).unwrap();
        assert!(g.adjacent(xi, g.position(&name("IX")).unwrap()));
        assert!(!g.adjacent(xi, g.position(&name("ZI")).unwrap()));
        assert!(commutation_graph(&t, CommutationMode::ExactTwill, &Tolerances::default()).is_err());
    }

    #[test]
    fn crisscross_on_non_scalar_tag_is_rejected() {
        let b = build_weyl(3).unwrap();
        let t = tag_at(&b, &Label::Pair(1, 1)).unwrap();
        assert!(matches!(
            commutation_graph(&t, CommutationMode::ExactCrisscross, &Tolerances::default()),
            Err(Error::ExactModeUnavailable(_))
        ));
    }

    fn groups_up_to_six() -> Vec<FiniteGroup> {
        let mut gs: Vec<FiniteGroup> = (2..=6).map(|d| group_cyclic(d).unwrap()).collect();
        gs.push(group_product(&group_cyclic(2).unwrap(), &group_cyclic(2).unwrap()));
        gs.push(group_s3());
        gs
    }

    #[test]
    fn exact_and_numeric_graphs_agree() {
        let tol = Tolerances::default();
        for g in groups_up_to_six() {
            let d = g.order();
            for v in Variant::ALL {
                let b = build_shift_multiply(&latin_from_group(&g, v), &HadamardFamily::fourier(d)).unwrap();
                let whole_n = basis_commutation_graph(&b, CommutationMode::Numeric, &tol).unwrap();
                let whole_e = basis_commutation_graph(&b, CommutationMode::ExactCrisscross, &tol).unwrap();
                assert!(whole_n.same_relation(&whole_e), "order {d} variant {v}");
                for x0 in b.labels() {
                    let t = tag_at(&b, x0).unwrap();
                    let n = commutation_graph(&t, CommutationMode::Numeric, &tol).unwrap();
                    let e = commutation_graph(&t, CommutationMode::ExactTwill, &tol).unwrap();
                    assert!(n.same_relation(&e), "order {d} variant {v} tag {x0}");
                }
            }
        }
    }
}
