mod common;

use common::*;
use fanweave::basis::*;
use fanweave::linalg::random::random_unitary;
use fanweave::linalg::simul_diag;
use fanweave::{ComplexMatrix, Tolerances};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn weyl4_fan_is_the_published_list() {
    let fan = fan_at(&weyl(4), &p(0, 0));
    assert_eq!(fan.masses(), weyl4_listed().as_slice());
    for l in fan.universe() {
        let expected = if [p(2, 0), p(0, 2), p(2, 2)].contains(l) { 3 } else { 1 };
        assert_eq!(fan.degree(l), expected, "{l}");
    }
    assert_eq!(overlapping_labels(&fan).into_iter().collect::<Vec<_>>(), pairs(&[(0, 2), (2, 0), (2, 2)]));
}

#[test]
fn weyl6_fan_is_the_published_list() {
    let fan = fan_at(&weyl(6), &p(0, 0));
    assert_eq!(fan.masses(), weyl6_listed().as_slice());
    assert_eq!(fan.degree(&p(3, 0)), 4);
    assert_eq!(fan.degree(&p(2, 0)), 3);
}

#[test]
fn s3_fan_is_the_published_list() {
    let fan = fan_at(&s3(), &p(0, 0));
    assert_eq!(fan.masses(), s3_listed().as_slice());
    let full: Vec<&Vec<Label>> = fan.masses().iter().filter(|m| m.len() == 5).collect();
    assert_eq!(full.len(), 4);
    assert!(full.iter().all(|m| m.contains(&p(3, 0))));
    for l in fan.universe() {
        assert_eq!(fan.degree(l), if *l == p(3, 0) { 4 } else { 1 });
    }
}

#[test]
fn z3_right_subtraction_fans() {
    let b = z3_right_subtraction();
    let u = untagged_fan(&b);
    assert_eq!(u.len(), 9);
    assert!(u.masses().iter().all(|m| m.len() == 1));
    for m0 in 0..3 {
        for n0 in 0..3 {
            let fan = fan_at(&b, &p(m0, n0));
            assert_eq!(fan.masses(), z3_listed(m0, n0).as_slice(), "tag ({m0},{n0})");
        }
    }
}

#[test]
fn pauli2_fans() {
    let b = pauli2();
    let fans = fan_system(&b, CommutationMode::Numeric, &Tolerances::default()).unwrap();
    let first = fans.fans()[0].1.masses().len();
    assert_eq!(first, 15);
    for (x0, fan) in fans.fans() {
        assert_eq!(fan.len(), 15, "{x0}");
        assert!(fan.masses().iter().all(|m| m.len() == 3));
        assert!(fan.universe().iter().all(|l| fan.degree(l) == 3));
    }
    // At the identity tag each MASS closes under products: {IX, XI, XX}.
    let id = fans.get(&Label::Name("II".into())).unwrap();
    assert!(id.contains_mass(&names(&["IX", "XI", "XX"])));
    assert!(id.contains_mass(&names(&["XY", "YZ", "ZX"])));
}

#[test]
fn weyl_prime_fans_are_partitions() {
    for d in [3, 5, 7] {
        let fan = fan_at(&weyl(d), &p(0, 0));
        assert_eq!(fan.len(), d + 1);
        assert!(fan.masses().iter().all(|m| m.len() == d - 1));
        assert!(fan.universe().iter().all(|l| fan.degree(l) == 1));
    }
}

#[test]
fn weyl3_fan_system_is_shift_invariant() {
    let b = weyl(3);
    let fans = fan_system(&b, CommutationMode::Numeric, &Tolerances::default()).unwrap();
    let base = fans.get(&p(0, 0)).unwrap();
    for (x0, fan) in fans.fans() {
        let (m0, n0) = x0.pair().unwrap();
        let shifted: Vec<Vec<Label>> = base
            .masses()
            .iter()
            .map(|m| {
                m.iter()
                    .map(|l| {
                        let (m, n) = l.pair().unwrap();
                        p((m + m0) % 3, (n + n0) % 3)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(fan.masses(), sorted_masses(shifted).as_slice());
    }
}

/// Move-together pairs `(m,n)` and `(−m,−n)` share every MASS.
#[test]
fn move_togethers_share_masses() {
    for d in 2..=8 {
        let fan = fan_at(&weyl(d), &p(0, 0));
        for l in fan.universe() {
            let (m, n) = l.pair().unwrap();
            let partner = p((d - m) % d, (d - n) % d);
            for mass in fan.masses() {
                assert_eq!(mass.contains(l), mass.contains(&partner), "d={d} {l}");
            }
        }
    }
}

#[test]
fn comparisons() {
    let tol = Tolerances::default();
    let c = compare_ub(&weyl(4), &pauli2(), InvariantVariant::Cue, &tol).unwrap();
    assert_eq!(c.verdict, Verdict::Inequivalent);
    let c = compare_ub(&s3(), &weyl(6), InvariantVariant::Cue, &tol).unwrap();
    assert_eq!(c.verdict, Verdict::Inequivalent);
    assert_eq!(c.differing_component.as_deref(), Some("mass_size_multiset"));
    let c = compare_ub(&s3(), &weyl(6), InvariantVariant::Pcue, &tol).unwrap();
    assert_eq!(c.verdict, Verdict::Inequivalent);
}

fn scrambled(b: &UnitaryBasis, seed: u64) -> UnitaryBasis {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v1 = random_unitary(b.d(), &mut rng);
    let v2 = random_unitary(b.d(), &mut rng);
    let mut perm: Vec<usize> = (0..b.labels().len()).collect();
    perm.shuffle(&mut rng);
    let labels = b.labels().to_vec();
    b.transformed(&v1, &v2, |l| {
        let i = labels.iter().position(|x| x == l).unwrap();
        Label::Name(format!("r{:02}", perm[i]))
    })
    .unwrap()
}

#[test]
fn transformed_copy_is_not_distinguished() {
    let tol = Tolerances::default();
    for (b, seed) in [(weyl(3), 1), (pauli2(), 2), (s3(), 3)] {
        let t = scrambled(&b, seed);
        for variant in [InvariantVariant::Cue, InvariantVariant::Pcue] {
            let c = compare_ub(&b, &t, variant, &tol).unwrap();
            assert_eq!(c.verdict, Verdict::NotDistinguished, "{:?}", c.differing_component);
        }
    }
}

#[test]
fn rephasing_is_invisible_to_pcue_only() {
    let tol = Tolerances::default();
    let b = weyl(3);
    let phases: Vec<fanweave::Complex64> = (0..9).map(|i| fanweave::Complex64::from_polar(1.0, 0.37 * i as f64)).collect();
    let r = b.rephased(&phases).unwrap();
    assert_eq!(compare_ub(&b, &r, InvariantVariant::Pcue, &tol).unwrap().verdict, Verdict::NotDistinguished);
    assert_eq!(compare_ub(&b, &r, InvariantVariant::Cue, &tol).unwrap().verdict, Verdict::Inequivalent);
}

#[test]
fn hadamard_fan_canonical_set_survives_conjugation() {
    let b = weyl(4);
    let x0 = p(0, 0);
    let tag = tag_at(&b, &x0).unwrap();
    let fan = fan_at(&b, &x0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let v = random_unitary(4, &mut rng);
    let conj = tag.conjugated(&v).unwrap();
    let a = hadamard_fan(&tag, &fan, 0).unwrap();
    let c = hadamard_fan(&conj, &fan, 5).unwrap();
    assert_eq!(a.canonical_set(), c.canonical_set());
    assert_eq!(a.entries.len(), 7);
}

#[test]
fn simultaneous_diagonalization_of_pauli_mass() {
    let b = pauli2();
    let ops: Vec<ComplexMatrix> = ["IX", "XI", "XX"]
        .iter()
        .map(|s| b.operator(&Label::Name((*s).into())).unwrap().clone())
        .collect();
    let sd = simul_diag(&ops, 1e-9, 0).unwrap();
    assert!(sd.max_residual(&ops) <= 1e-10);
    // Joint eigenvalues are the four sign patterns (s, t, st).
    let mut patterns: Vec<(i32, i32, i32)> = (0..4)
        .map(|k| {
            let r = |i: usize| sd.diagonals[i][k].re.round() as i32;
            (r(0), r(1), r(2))
        })
        .collect();
    patterns.sort();
    assert_eq!(patterns, vec![(-1, -1, 1), (-1, 1, -1), (1, -1, -1), (1, 1, 1)]);
}

#[test]
fn exact_twill_graphs_match_numeric_for_fixtures() {
    let tol = Tolerances::default();
    for b in [weyl(4), z3_right_subtraction(), s3()] {
        for x0 in b.labels() {
            let tag = tag_at(&b, x0).unwrap();
            let exact = commutation_graph(&tag, CommutationMode::ExactTwill, &tol).unwrap();
            let numeric = commutation_graph(&tag, CommutationMode::Numeric, &tol).unwrap();
            assert!(exact.same_relation(&numeric), "tag {x0}");
        }
    }
}

#[test]
fn fan_json_and_dot() {
    let fan = fan_at(&weyl(4), &p(0, 0));
    let dot = fan.to_dot();
    assert_eq!(dot.matches("[shape=square]").count(), 7);
    assert_eq!(dot.matches(" -- ").count(), 21);
    let system = fan_system(&weyl(3), CommutationMode::Numeric, &Tolerances::default()).unwrap();
    let back: FanSystem = serde_json::from_str(&serde_json::to_string(&system).unwrap()).unwrap();
    assert_eq!(back, system);
    let b = s3();
    let back: UnitaryBasis = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
    assert_eq!(back.labels(), b.labels());
    assert_eq!(back.operators(), b.operators());
}
