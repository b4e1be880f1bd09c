use fanweave::basis::{build_pauli2, build_weyl, fan_representation, tag_at, CommutationMode, Fan, Label, Tag};
use fanweave::linalg::random::{random_hermitian, random_unit_vector};
use fanweave::tomography::*;
use fanweave::{ComplexMatrix, Tolerances};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weyl_tag(d: usize) -> (Tag, Fan) {
    let b = build_weyl(d).unwrap();
    let x0 = Label::Pair(0, 0);
    let fan = fan_representation(&b, Some(&x0), CommutationMode::Numeric, &Tolerances::default()).unwrap();
    (tag_at(&b, &x0).unwrap(), fan)
}

fn p(m: usize, n: usize) -> Label {
    Label::Pair(m, n)
}

/// Random density matrix: `G G* / tr` for a random Hermitian-squared factor.
fn random_density(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let h = random_hermitian(d, rng);
    let g = &h * &h;
    let tr = g.trace().re;
    g.scale_real(1.0 / tr)
}

fn check_povm(p: &Povm, trials: usize, seed: u64) {
    let d = p.d();
    assert!(p.completeness_residual() <= 1e-9);
    assert!(p.min_eigenvalue() >= -1e-10);
    assert_eq!(is_info_complete(p), (true, d * d));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let rho = random_density(d, &mut rng);
        let (_, err) = reconstruct(&rho, p).unwrap();
        assert!(err <= 1e-8, "reconstruction error {err:e}");
    }
}

#[test]
fn crude_weyl3_matches_uniform_normalization() {
    let (tag, fan) = weyl_tag(3);
    let cover = minimal_cover(&fan).unwrap();
    assert_eq!(cover.len(), 4);
    let pure = crude_povm(&tag, &cover, 0).unwrap();
    assert_eq!(pure.povm.len(), 9);
    assert_eq!(pure.scale, 0.25);
    assert_eq!(pure.povm.pure_count(), 8);
    // Completion: I − Σρ_j/4 = Σ_s (dropped ρ of basis s)/4.
    let mut dropped = ComplexMatrix::zeros(3);
    for mass in &cover.masses {
        let b = mass_eigenbasis(&tag, mass, 0).unwrap();
        dropped = &dropped + &ComplexMatrix::outer(&b.column(2));
    }
    assert!(pure.povm.elements()[0].distance(&dropped.scale_real(0.25)) < 1e-12);
    check_povm(&pure.povm, 100, 1);
}

#[test]
fn crude_weyl4_and_weyl6_sizes() {
    for (d, cover_size, size) in [(4, 6, 19), (6, 12, 61)] {
        let (tag, fan) = weyl_tag(d);
        let cover = minimal_cover(&fan).unwrap();
        assert_eq!(cover.len(), cover_size);
        let pure = crude_povm(&tag, &cover, 3).unwrap();
        assert_eq!(pure.povm.len(), size);
        check_povm(&pure.povm, 20, d as u64);
    }
}

#[test]
fn refined_weyl4_has_fifteen_pure_states() {
    let (tag, fan) = weyl_tag(4);
    for hub in [p(2, 2), p(2, 0), p(0, 2)] {
        let r = refined_povm(&tag, &fan, &hub, 0).unwrap();
        assert_eq!(r.pure.povm.pure_count(), 15);
        assert_eq!(r.pure.povm.len(), 16);
        assert_eq!(r.groups.len(), 3);
        for g in &r.groups {
            assert_eq!(g.kept, vec![3, 2]);
            assert_eq!(g.block_sizes, vec![2, 2]);
        }
        assert_eq!(r.groups.iter().filter(|g| g.hubs[0] == hub).count(), 1);
        check_povm(&r.pure.povm, 100, 2);
    }
}

#[test]
fn refined_weyl6_sizes() {
    let (tag, fan) = weyl_tag(6);
    let r = refined_povm(&tag, &fan, &p(2, 2), 0).unwrap();
    assert_eq!(r.pure.povm.len(), 45);
    assert_eq!(r.groups.len(), 4);
    for g in &r.groups {
        assert_eq!(g.kept, vec![5, 3, 3]);
        assert_eq!(g.hubs.len(), 2);
    }
    assert_eq!(r.bound, None);
    check_povm(&r.pure.povm, 20, 3);

    let r = refined_povm(&tag, &fan, &p(3, 0), 0).unwrap();
    assert_eq!(r.pure.povm.len(), 52);
    assert_eq!(r.bound, Some(52));
    assert_eq!(r.groups.len(), 3);
    for g in &r.groups {
        assert_eq!(g.kept, vec![5, 4, 4, 4]);
    }
    check_povm(&r.pure.povm, 20, 4);
}

#[test]
fn refined_rejects_unsupported_hubs() {
    let (tag, fan) = weyl_tag(4);
    assert!(matches!(
        refined_povm(&tag, &fan, &p(1, 1), 0),
        Err(fanweave::Error::UnsupportedConfiguration(_))
    ));
    let (tag3, fan3) = weyl_tag(3);
    assert!(refined_povm(&tag3, &fan3, &p(1, 0), 0).is_err());
}

#[test]
fn minimal_covers_match_bounds() {
    let (_, fan4) = weyl_tag(4);
    let c4 = minimal_cover(&fan4).unwrap();
    assert_eq!(c4.len(), s_bound(4).unwrap());
    let dropped: Vec<&Vec<Label>> = fan4.masses().iter().filter(|m| !c4.masses.contains(m)).collect();
    assert_eq!(dropped, vec![&vec![p(0, 2), p(2, 0), p(2, 2)]]);
    let (_, fan6) = weyl_tag(6);
    let c6 = minimal_cover(&fan6).unwrap();
    assert_eq!(c6.len(), s_bound(6).unwrap());
    assert_eq!(c6.len(), fan6.len());
}

#[test]
fn mub_systems() {
    for d in [3, 5, 7] {
        let (tag, fan) = weyl_tag(d);
        let parts = find_partition(&fan).unwrap().unwrap();
        let partition: Vec<Vec<Label>> = parts.iter().map(|&i| fan.masses()[i].clone()).collect();
        let mub = mub_from_partition(&tag, &partition, 0).unwrap();
        assert_eq!(mub.len(), d + 1);
        assert!(mub.unbiasedness_deviation() <= 1e-9);
    }
    let b = build_pauli2();
    let x0 = Label::Name("II".into());
    let fan = fan_representation(&b, Some(&x0), CommutationMode::Numeric, &Tolerances::default()).unwrap();
    let parts = find_partition(&fan).unwrap().unwrap();
    assert_eq!(parts.len(), 5);
    let partition: Vec<Vec<Label>> = parts.iter().map(|&i| fan.masses()[i].clone()).collect();
    let mub = mub_from_partition(&tag_at(&b, &x0).unwrap(), &partition, 0).unwrap();
    assert!(mub.unbiasedness_deviation() <= 1e-9);
}

#[test]
fn pure_state_and_mixed_state_round_trip() {
    let (tag, fan) = weyl_tag(4);
    let r = refined_povm(&tag, &fan, &p(2, 2), 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = random_unit_vector(4, &mut rng);
    let (_, err) = reconstruct(&ComplexMatrix::outer(&v), &r.pure.povm).unwrap();
    assert!(err <= 1e-8);
    let mixed = ComplexMatrix::identity(4).scale_real(0.25);
    let (est, err) = reconstruct(&mixed, &r.pure.povm).unwrap();
    assert!(err <= 1e-10, "{est:?}");
}
