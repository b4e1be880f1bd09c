use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::label::Label;
use crate::combinatorics::{group_cyclic, latin_from_group, HadamardFamily, LatinSquare, Variant};
use crate::error::{Error, Result};
use crate::linalg::{
    hs_orthogonality_violation, schmidt_spectrum, unitarity_residual, vec_to_op, BipartiteVector, ComplexMatrix,
};
use crate::tolerance::Tolerances;

/// How a basis was built; exact commutation modes need [`Provenance::ShiftMultiply`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    ShiftMultiply { latin: LatinSquare, family: HadamardFamily },
    Pauli2,
    Mes,
    Custom { description: String },
}

/// `d²` labelled unitaries, trace-orthogonal: `tr(U_x* U_y) = d·δ_xy`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BasisWire", into = "BasisWire")]
pub struct UnitaryBasis {
    d: usize,
    labels: Vec<Label>,
    operators: Vec<ComplexMatrix>,
    provenance: Provenance,
    #[serde(skip)]
    index: HashMap<Label, usize>,
}

#[derive(Serialize, Deserialize)]
struct BasisWire {
    d: usize,
    labels: Vec<Label>,
    operators: BTreeMap<Label, ComplexMatrix>,
    provenance: Provenance,
}

impl TryFrom<BasisWire> for UnitaryBasis {
    type Error = Error;
    fn try_from(mut w: BasisWire) -> Result<Self> {
        let ops = w
            .labels
            .iter()
            .map(|l| w.operators.remove(l).ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = w.operators.keys().next() {
            return Err(Error::UnknownLabel(extra.to_string()));
        }
        let basis = UnitaryBasis::new(w.labels, ops, w.provenance, &Tolerances::default())?;
        if basis.d != w.d {
            return Err(Error::DimensionMismatch {
                expected: w.d,
                found: basis.d,
            });
        }
        Ok(basis)
    }
}

impl From<UnitaryBasis> for BasisWire {
    fn from(b: UnitaryBasis) -> Self {
        BasisWire {
            d: b.d,
            operators: b.labels.iter().cloned().zip(b.operators).collect(),
            labels: b.labels,
            provenance: b.provenance,
        }
    }
}

impl UnitaryBasis {
    /// Validates unitarity and trace-orthogonality at `tol`.
    pub fn new(labels: Vec<Label>, operators: Vec<ComplexMatrix>, provenance: Provenance, tol: &Tolerances) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::InvalidArgument("empty basis".into()))?;
        let d = first.dim();
        if labels.len() != operators.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: operators.len(),
            });
        }
        if operators.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: operators.len(),
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate label {l}")));
            }
        }
        for (l, u) in labels.iter().zip(&operators) {
            first.check_same_dim(u)?;
            let residual = unitarity_residual(u);
            if residual > tol.unitarity {
                return Err(Error::NotUnitary {
                    label: l.to_string(),
                    residual,
                });
            }
        }
        check_orthogonal(&labels, &operators, tol.orthogonality)?;
        Ok(Self {
            d,
            labels,
            operators,
            provenance,
            index,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn position(&self, label: &Label) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn operator(&self, label: &Label) -> Result<&ComplexMatrix> {
        Ok(&self.operators[self.position(label)?])
    }

    /// `{V₁ U_x V₂}` relabelled by `relabel`, with provenance dropped.
    pub fn transformed(&self, v1: &ComplexMatrix, v2: &ComplexMatrix, relabel: impl Fn(&Label) -> Label) -> Result<Self> {
        let ops = self.operators.iter().map(|u| &(v1 * u) * v2).collect();
        let labels = self.labels.iter().map(relabel).collect();
        Self::new(
            labels,
            ops,
            Provenance::Custom {
                description: "transformed copy".into(),
            },
            &Tolerances::default(),
        )
    }

    /// `{f(x) U_x}` for unimodular `f`.
    pub fn rephased(&self, phases: &[Complex64]) -> Result<Self> {
        if phases.len() != self.operators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.operators.len(),
                found: phases.len(),
            });
        }
        let ops = self.operators.iter().zip(phases).map(|(u, &c)| u.scale(c)).collect();
        Self::new(
            self.labels.clone(),
            ops,
            Provenance::Custom {
                description: "rephased copy".into(),
            },
            &Tolerances::default(),
        )
    }
}

fn check_orthogonal(labels: &[Label], operators: &[ComplexMatrix], tol: f64) -> Result<()> {
    if let Some((i, j, residual)) = hs_orthogonality_violation(operators)? {
        if residual > tol {
            return Err(Error::NotOrthogonal {
                first: labels[i].to_string(),
                second: labels[j].to_string(),
                residual,
            });
        }
    }
    Ok(())
}

/// `U_{mn} e_k = H^n_{mk} e_{λ(n,k)}` over labels `(m,n)` in m-major order.
pub fn build_shift_multiply(latin: &LatinSquare, family: &HadamardFamily) -> Result<UnitaryBasis> {
    let d = latin.size();
    if family.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: family.d(),
        });
    }
    let mut labels = Vec::with_capacity(d * d);
    let mut ops = Vec::with_capacity(d * d);
    for m in 0..d {
        for n in 0..d {
            labels.push(Label::Pair(m, n));
            ops.push(ComplexMatrix::from_fn(d, |row, k| {
                if row == latin.at(n, k) {
                    family.entry(n, m, k)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }));
        }
    }
    UnitaryBasis::new(
        labels,
        ops,
        Provenance::ShiftMultiply {
            latin: latin.clone(),
            family: family.clone(),
        },
        &Tolerances::default(),
    )
}

/// Addition on `ℤ_d` with the Fourier family; `U_{00} = I`.
pub fn build_weyl(d: usize) -> Result<UnitaryBasis> {
    if d < 2 {
        return Err(Error::InvalidArgument("Weyl basis needs d ≥ 2".into()));
    }
    let latin = latin_from_group(&group_cyclic(d)?, Variant::E);
    build_shift_multiply(&latin, &HadamardFamily::fourier(d))
}

/// The sixteen two-qubit Pauli products `σ_a ⊗ σ_b`, labelled `"ab"` with
/// `a, b ∈ {I, X, Y, Z}`.
pub fn build_pauli2() -> UnitaryBasis {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let sigma = [
        ("I", [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]),
        ("X", [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
        ("Y", [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]),
        ("Z", [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]),
    ];
    let mats: Vec<(&str, ComplexMatrix)> = sigma
        .iter()
        .map(|(n, m)| (*n, ComplexMatrix::from_fn(2, |i, j| m[i][j])))
        .collect();
    let mut labels = Vec::new();
    let mut ops = Vec::new();
    for (a, ma) in &mats {
        for (b, mb) in &mats {
            labels.push(Label::Name(format!("{a}{b}")));
            ops.push(ma.kron(mb));
        }
    }
    UnitaryBasis::new(labels, ops, Provenance::Pauli2, &Tolerances::default()).expect("Pauli products form a basis")
}

/// The system `W_x = U_{x₀}* U_x`, `x ≠ x₀`, attached to a basis at `x₀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tag {
    x0: Label,
    u_x0: ComplexMatrix,
    labels: Vec<Label>,
    w: Vec<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    provenance: Option<Provenance>,
}

impl Tag {
    /// Validates unitarity, zero trace and trace-orthogonality of `W`.
    pub fn new(x0: Label, u_x0: ComplexMatrix, labels: Vec<Label>, w: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self> {
        let tag = Self {
            x0,
            u_x0,
            labels,
            w,
            provenance: None,
        };
        tag.validate(tol)?;
        Ok(tag)
    }

    fn validate(&self, tol: &Tolerances) -> Result<()> {
        if self.labels.len() != self.w.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                found: self.w.len(),
            });
        }
        for (l, w) in self.labels.iter().zip(&self.w) {
            self.u_x0.check_same_dim(w)?;
            let residual = unitarity_residual(w);
            if residual > tol.unitarity {
                return Err(Error::NotUnitary {
                    label: l.to_string(),
                    residual,
                });
            }
            let tr = w.trace().norm();
            if tr > tol.orthogonality {
                return Err(Error::NotTraceless {
                    label: l.to_string(),
                    residual: tr,
                });
            }
        }
        check_orthogonal(&self.labels, &self.w, tol.orthogonality)
    }

    pub fn x0(&self) -> &Label {
        &self.x0
    }

    pub fn u_x0(&self) -> &ComplexMatrix {
        &self.u_x0
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.w
    }

    pub fn d(&self) -> usize {
        self.u_x0.dim()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn position(&self, label: &Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn operator(&self, label: &Label) -> Result<&ComplexMatrix> {
        Ok(&self.w[self.position(label)?])
    }

    /// The system `{V* W_x V}` with the same labels.
    pub fn conjugated(&self, v: &ComplexMatrix) -> Result<Self> {
        let vs = v.adjoint();
        Tag::new(
            self.x0.clone(),
            &self.u_x0 * v,
            self.labels.clone(),
            self.w.iter().map(|w| &(&vs * w) * v).collect(),
            &Tolerances::default(),
        )
    }
}

pub fn tag_at(basis: &UnitaryBasis, x0: &Label) -> Result<Tag> {
    tag_at_with(basis, x0, &Tolerances::default())
}

pub fn tag_at_with(basis: &UnitaryBasis, x0: &Label, tol: &Tolerances) -> Result<Tag> {
    let i0 = basis.position(x0)?;
    let u0 = &basis.operators[i0];
    let u0s = u0.adjoint();
    let (labels, w) = basis
        .labels
        .iter()
        .zip(&basis.operators)
        .enumerate()
        .filter(|&(i, _)| i != i0)
        .map(|(_, (l, u))| (l.clone(), &u0s * u))
        .unzip();
    let mut tag = Tag::new(x0.clone(), u0.clone(), labels, w, tol)?;
    tag.provenance = Some(basis.provenance.clone());
    Ok(tag)
}

/// `U_x U_{x₀}* U_y = U_y U_{x₀}* U_x` within `tol.commutation`.
pub fn twill_check(basis: &UnitaryBasis, x: &Label, x0: &Label, y: &Label, tol: &Tolerances) -> Result<bool> {
    let (ux, uy) = (basis.operator(x)?, basis.operator(y)?);
    let u0s = basis.operator(x0)?.adjoint();
    let lhs = &(ux * &u0s) * uy;
    let rhs = &(uy * &u0s) * ux;
    Ok(lhs.distance(&rhs) <= tol.commutation)
}

const MES_NORM_TOL: f64 = 1e-9;
const MES_FLATNESS_TOL: f64 = 1e-8;

/// `V_x = A_{ψ_x}`, so that `ψ_x = (V_x ⊗ I)Ω`.
pub fn mes_basis_to_ub(vectors: &[BipartiteVector]) -> Result<UnitaryBasis> {
    let first = vectors.first().ok_or_else(|| Error::InvalidArgument("no vectors".into()))?;
    let d = first.dim();
    if vectors.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: vectors.len(),
        });
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > MES_NORM_TOL {
            return Err(Error::NotNormalized { index: i, norm });
        }
        let spectrum = schmidt_spectrum(v);
        if spectrum.iter().any(|p| (p - 1.0 / d as f64).abs() > MES_FLATNESS_TOL) {
            return Err(Error::NotMaximallyEntangled { index: i, spectrum });
        }
    }
    for i in 0..vectors.len() {
        for j in 0..i {
            let ip = vectors[i].inner(&vectors[j]).norm();
            if ip > MES_NORM_TOL {
                return Err(Error::NotOrthogonal {
                    first: j.to_string(),
                    second: i.to_string(),
                    residual: ip,
                });
            }
        }
    }
    let labels = (0..vectors.len()).map(|i| Label::Name(i.to_string())).collect();
    let ops = vectors.iter().map(vec_to_op).collect();
    UnitaryBasis::new(labels, ops, Provenance::Mes, &Tolerances::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::group_s3;
    use crate::linalg::{op_to_vec, BipartiteVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weyl_two_is_x_and_z() {
        let b = build_weyl(2).unwrap();
        let x = ComplexMatrix::from_rows(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let z = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(b.operator(&Label::Pair(0, 1)).unwrap().distance(&x) < 1e-15);
        assert!(b.operator(&Label::Pair(1, 0)).unwrap().distance(&z) < 1e-15);
        assert_eq!(b.operator(&Label::Pair(0, 0)).unwrap(), &ComplexMatrix::identity(2));
    }

    #[test]
    fn weyl_three_shift_has_order_three() {
        let b = build_weyl(3).unwrap();
        let s = b.operator(&Label::Pair(0, 1)).unwrap();
        assert!((&(s * s) * s).distance(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn s3_basis_is_valid() {
        for v in Variant::ALL {
            let l = latin_from_group(&group_s3(), v);
            let b = build_shift_multiply(&l, &HadamardFamily::fourier(6)).unwrap();
            assert_eq!(b.operators().len(), 36);
        }
    }

    #[test]
    fn pauli2_contains_identity() {
        let b = build_pauli2();
        assert_eq!(b.operators().len(), 16);
        assert_eq!(b.operator(&Label::Name("II".into())).unwrap(), &ComplexMatrix::identity(4));
    }

    #[test]
    fn rejects_non_orthogonal() {
        let i = ComplexMatrix::identity(2);
        let labels = (0..4).map(|k| Label::Name(k.to_string())).collect();
        let err = UnitaryBasis::new(labels, vec![i; 4], Provenance::Mes, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal { .. }));
    }

    #[test]
    fn tags_are_traceless() {
        let b = build_weyl(3).unwrap();
        for x0 in b.labels() {
            let t = tag_at(&b, x0).unwrap();
            assert_eq!(t.operators().len(), 8);
            assert!(t.operators().iter().all(|w| w.trace().norm() < 1e-12));
        }
        let t = tag_at(&b, &Label::Pair(0, 0)).unwrap();
        assert_eq!(t.operators(), &b.operators()[1..]);
    }

    #[test]
    fn twill_for_weyl_three() {
        let b = build_weyl(3).unwrap();
        let x0 = Label::Pair(1, 1);
        let tol = Tolerances::default();
        for x in b.labels() {
            for y in b.labels() {
                let (m, n) = x.pair().unwrap();
                let (mp, np) = y.pair().unwrap();
                let rule = ((m as i64 - 1) * (np as i64 - 1) - (mp as i64 - 1) * (n as i64 - 1)).rem_euclid(3) == 0;
                assert_eq!(twill_check(&b, x, &x0, y, &tol).unwrap(), rule);
            }
        }
    }

    #[test]
    fn mes_round_trip() {
        let b = build_weyl(3).unwrap();
        let vecs: Vec<BipartiteVector> = b.operators().iter().map(op_to_vec).collect();
        let back = mes_basis_to_ub(&vecs).unwrap();
        for (u, v) in b.operators().iter().zip(back.operators()) {
            assert!(u.distance(v) < 1e-12);
        }
    }

    #[test]
    fn mes_rejects_product_vector() {
        let b = build_weyl(2).unwrap();
        let mut vecs: Vec<BipartiteVector> = b.operators().iter().map(op_to_vec).collect();
        vecs[3] = BipartiteVector::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(mes_basis_to_ub(&vecs), Err(Error::NotMaximallyEntangled { index: 3, .. })));
    }

    #[test]
    fn json_round_trip() {
        let b = build_weyl(2).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert!(json.contains(r#""kind":"shift_multiply""#));
        let back: UnitaryBasis = serde_json::from_str(&json).unwrap();
        assert_eq!(back.labels(), b.labels());
        assert_eq!(back.operators(), b.operators());
    }
}
