#![allow(dead_code)]

use fanweave::basis::{build_pauli2, build_shift_multiply, build_weyl, fan_representation, CommutationMode, Fan, Label, UnitaryBasis};
use fanweave::combinatorics::{group_cyclic, group_s3, latin_from_group, HadamardFamily, Variant};
use fanweave::Tolerances;

pub fn p(m: usize, n: usize) -> Label {
    Label::Pair(m, n)
}

pub fn pairs(xs: &[(usize, usize)]) -> Vec<Label> {
    let mut v: Vec<Label> = xs.iter().map(|&(m, n)| p(m, n)).collect();
    v.sort();
    v
}

pub fn names(xs: &[&str]) -> Vec<Label> {
    let mut v: Vec<Label> = xs.iter().map(|s| Label::Name((*s).into())).collect();
    v.sort();
    v
}

pub fn weyl(d: usize) -> UnitaryBasis {
    build_weyl(d).unwrap()
}

pub fn pauli2() -> UnitaryBasis {
    build_pauli2()
}

/// Group product on S3 with the Fourier family.
pub fn s3() -> UnitaryBasis {
    build_shift_multiply(&latin_from_group(&group_s3(), Variant::E), &HadamardFamily::fourier(6)).unwrap()
}

/// Right subtraction `n − k` on ℤ3 with the Fourier family.
pub fn z3_right_subtraction() -> UnitaryBasis {
    build_shift_multiply(&latin_from_group(&group_cyclic(3).unwrap(), Variant::F), &HadamardFamily::fourier(3)).unwrap()
}

pub fn fan_at(b: &UnitaryBasis, x0: &Label) -> Fan {
    fan_representation(b, Some(x0), CommutationMode::Numeric, &Tolerances::default()).unwrap()
}

pub fn untagged_fan(b: &UnitaryBasis) -> Fan {
    fan_representation(b, None, CommutationMode::Numeric, &Tolerances::default()).unwrap()
}

pub fn sorted_masses(sets: Vec<Vec<Label>>) -> Vec<Vec<Label>> {
    let mut v: Vec<Vec<Label>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort();
            s
        })
        .collect();
    v.sort();
    v
}

/// The seven MASSs of the Weyl d=4 tag at (0,0), as published.
pub fn weyl4_listed() -> Vec<Vec<Label>> {
    sorted_masses(vec![
        pairs(&[(1, 0), (2, 0), (3, 0)]),
        pairs(&[(0, 1), (0, 2), (0, 3)]),
        pairs(&[(1, 1), (2, 2), (3, 3)]),
        pairs(&[(2, 1), (2, 3), (0, 2)]),
        pairs(&[(1, 2), (3, 2), (2, 0)]),
        pairs(&[(3, 1), (1, 3), (2, 2)]),
        pairs(&[(2, 0), (0, 2), (2, 2)]),
    ])
}

/// The twelve MASSs of the Weyl d=6 tag at (0,0), as published.
pub fn weyl6_listed() -> Vec<Vec<Label>> {
    sorted_masses(vec![
        pairs(&[(4, 1), (2, 5), (2, 2), (4, 4), (0, 3)]),
        pairs(&[(3, 1), (3, 5), (0, 2), (0, 4), (3, 3)]),
        pairs(&[(2, 1), (4, 5), (4, 2), (2, 4), (0, 3)]),
        pairs(&[(0, 1), (0, 5), (0, 2), (0, 4), (0, 3)]),
        pairs(&[(1, 0), (5, 0), (2, 0), (4, 0), (3, 0)]),
        pairs(&[(1, 1), (5, 5), (2, 2), (4, 4), (3, 3)]),
        pairs(&[(1, 2), (5, 4), (2, 4), (4, 2), (3, 0)]),
        pairs(&[(1, 3), (5, 3), (2, 0), (4, 0), (3, 3)]),
        pairs(&[(1, 4), (5, 2), (2, 2), (4, 4), (3, 0)]),
        pairs(&[(1, 5), (5, 1), (2, 4), (4, 2), (3, 3)]),
        pairs(&[(2, 0), (4, 0), (2, 3), (4, 3), (0, 3)]),
        pairs(&[(0, 2), (0, 4), (3, 2), (3, 4), (3, 0)]),
    ])
}

/// Singletons `{(m,1)}, {(m,3)}, {(m,5)}` plus the four full-size MASSs of
/// the S3 tag at (0,0), as published.
pub fn s3_listed() -> Vec<Vec<Label>> {
    let mut sets: Vec<Vec<Label>> = (0..6).flat_map(|m| [1, 3, 5].map(|n| vec![p(m, n)])).collect();
    sets.push(pairs(&[(1, 0), (2, 0), (3, 0), (4, 0), (5, 0)]));
    sets.push(pairs(&[(0, 2), (3, 2), (0, 4), (3, 4), (3, 0)]));
    sets.push(pairs(&[(1, 2), (4, 2), (2, 4), (5, 4), (3, 0)]));
    sets.push(pairs(&[(2, 2), (5, 2), (1, 4), (4, 4), (3, 0)]));
    sorted_masses(sets)
}

/// The four disjoint MASSs of the ℤ3 right-subtraction tag at `(m0, n0)`.
pub fn z3_listed(m0: usize, n0: usize) -> Vec<Vec<Label>> {
    let a = |x: usize| (m0 + x) % 3;
    let b = |x: usize| (n0 + x) % 3;
    sorted_masses(vec![
        (1..3).map(|k| p(m0, b(k))).collect(),
        (1..3).map(|j| p(a(j), n0)).collect(),
        vec![p(a(1), b(1)), p(a(2), b(2))],
        vec![p(a(1), b(2)), p(a(2), b(1))],
    ])
}
