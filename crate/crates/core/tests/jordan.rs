mod common;

use common::*;
use opgns::jordan::{jordan_decompose_in, z_superop, z_wrt_basis_superop};
use opgns::linalg;
use opgns::*;
use proptest::prelude::*;

fn pos_neg(j: &JordanData<f64>) -> (usize, usize) {
    let neg = j.negative_count();
    (j.signature().len() - neg, neg)
}

#[test]
fn omega_signature_counts_antisymmetric_part() {
    for d in 1..=4 {
        let j = jordan_decompose(&maximally_entangled::<f64>(d)).unwrap();
        assert_eq!(pos_neg(&j), (d * (d + 1) / 2, d * (d - 1) / 2));
    }
}

#[test]
fn qubit_omega_form_on_pauli_basis() {
    let o = maximally_entangled::<f64>(2);
    let paulis = [linalg::identity::<f64>(2), sx(), sy(), sz()];
    for (i, a) in paulis.iter().enumerate() {
        for (k, b) in paulis.iter().enumerate() {
            let v = bilinear_form(&o, &herm(a.clone()), &herm(b.clone()));
            let want = if i != k {
                0.0
            } else if i == 2 {
                -2.0
            } else {
                2.0
            };
            assert!((v - want).abs() < 1e-12, "({i},{k}) gave {v}");
        }
    }
}

#[test]
fn form_of_omega_is_trace_of_product_with_transpose() {
    let mut r = rng(11);
    let o = maximally_entangled::<f64>(3);
    for _ in 0..5 {
        let a = random::hermitian::<f64, _>(3, &mut r);
        let b = random::hermitian::<f64, _>(3, &mut r);
        let want = (a.matrix() * b.matrix().transpose()).trace().re;
        assert!((bilinear_form(&o, &a, &b) - want).abs() < 1e-12);
    }
}

#[test]
fn canonical_basis_diagonalizes_the_form() {
    for seed in 0..3 {
        let phi = random_symmetric_faithful::<f64>(3, seed).unwrap();
        let j = jordan_decompose(&phi).unwrap();
        for (i, fi) in j.basis().iter().enumerate() {
            for (k, fk) in j.basis().iter().enumerate() {
                let want = if i == k { j.signature()[i].value::<f64>() } else { 0.0 };
                assert!((bilinear_form(&phi, fi, fk) - want).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn signature_is_basis_independent() {
    let mut r = rng(12);
    for seed in 0..3 {
        let phi = random_symmetric_faithful::<f64>(3, 100 + seed).unwrap();
        let reference = pos_neg(&jordan_decompose(&phi).unwrap());
        for _ in 0..3 {
            let basis = random::hermitian_basis::<f64, _>(3, &mut r);
            let j = jordan_decompose_in(&phi, &basis, &Tolerances::default()).unwrap();
            assert_eq!(pos_neg(&j), reference);
        }
    }
}

#[test]
fn decomposition_rejects_degenerate_and_asymmetric_states() {
    let mut r = rng(13);
    let rho = random::density_matrix::<f64, _>(2, &mut r);
    let prod = BipartiteState::product(&rho, &rho).unwrap();
    assert!(matches!(jordan_decompose(&prod), Err(Error::DegenerateForm { .. })));

    let u = random::haar_unitary::<f64, _>(3, &mut r);
    let phi = BipartiteState::pure(&u).unwrap();
    assert!(matches!(jordan_decompose(&phi), Err(Error::NotSymmetric { .. })));
}

#[test]
fn varsigma_is_an_involution() {
    let mut r = rng(14);
    for seed in 0..3 {
        let phi = random_symmetric_faithful::<f64>(3, 200 + seed).unwrap();
        let j = jordan_decompose(&phi).unwrap();
        for _ in 0..4 {
            let a = random::hermitian::<f64, _>(3, &mut r);
            let twice = varsigma(&j, &varsigma(&j, &a));
            assert!(dist(twice.matrix(), a.matrix()) < 1e-9);
        }
    }
}

#[test]
fn varsigma_of_omega_is_complex_conjugation() {
    let mut r = rng(15);
    for d in 2..=4 {
        let j = jordan_decompose(&maximally_entangled::<f64>(d)).unwrap();
        for _ in 0..3 {
            let a = random::hermitian::<f64, _>(d, &mut r);
            let got = varsigma(&j, &a);
            assert!(dist(got.matrix(), &a.matrix().map(|z| z.conj())) < 1e-10);
        }
    }
}

#[test]
fn z_of_omega_is_the_transposition() {
    for d in 2..=4 {
        let j = jordan_decompose(&maximally_entangled::<f64>(d)).unwrap();
        assert!(z_superop(&j).distance(&SuperOp::transposition(d)) < 1e-10);
    }
}

#[test]
fn z_squares_to_identity_and_factorizes_through_f() {
    for seed in 0..4 {
        let d = 2 + (seed as usize % 2);
        let phi = random_symmetric_faithful::<f64>(d, 300 + seed).unwrap();
        let j = jordan_decompose(&phi).unwrap();
        let z = z_superop(&j);
        let id = SuperOp::identity(d);
        assert!(z.then_after(&z).distance(&id) < 1e-9);

        let f = extract_f(&phi).superop();
        let o = maximally_entangled::<f64>(d);
        let zo = z_wrt_basis_superop(&o, j.basis()).unwrap();
        assert!(f.then_after(&zo).distance(&z) < 1e-9);
        assert!(zo.then_after(&zo).distance(&id) < 1e-9);
        let sandwich = zo.then_after(&f).then_after(&zo);
        assert!(sandwich.distance(&f.inverse().unwrap()) < 1e-9);
    }
}

#[test]
fn z_map_acts_as_varsigma_on_effects() {
    let phi = random_symmetric_faithful::<f64>(2, 17).unwrap();
    let j = jordan_decompose(&phi).unwrap();
    let z = z_map(&j);
    let mut r = rng(16);
    for _ in 0..4 {
        let a = random::hermitian::<f64, _>(2, &mut r);
        let back = heisenberg_apply(&z, &a).unwrap();
        assert!(dist(back.matrix(), varsigma(&j, &a).matrix()) < 1e-9);
    }
}

#[test]
fn z_wrt_basis_validates_its_input() {
    let o = maximally_entangled::<f64>(2);
    let short: Vec<_> = canonical_hs_basis::<f64>(2).elements()[..3].to_vec();
    assert!(z_wrt_basis(&o, &short).is_err());
}

#[test]
fn absolute_form_is_positive_definite() {
    let mut r = rng(18);
    for seed in 0..3 {
        let phi = random_symmetric_faithful::<f64>(3, 400 + seed).unwrap();
        let j = jordan_decompose(&phi).unwrap();
        let basis = canonical_hs_basis::<f64>(3);
        let n = basis.len();
        let g = nalgebra::DMatrix::<f64>::from_fn(n, n, |a, b| {
            abs_form(&j, &basis.elements()[a], &basis.elements()[b])
        });
        assert!((&g - g.transpose()).norm() < 1e-9);
        let min = g.symmetric_eigen().eigenvalues.min();
        assert!(min > 1e-9, "smallest eigenvalue {min}");
        let a = random::hermitian::<f64, _>(3, &mut r);
        assert!(abs_form(&j, &a, &a) > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_of_symmetric_state_is_symmetric(seed in any::<u64>(), d in 1usize..4) {
        let phi = random_symmetric_faithful::<f64>(d, seed).unwrap();
        let g = gram_matrix(&phi, &canonical_hs_basis(d));
        prop_assert!((&g - g.transpose()).norm() < 1e-9 * g.norm().max(1.0));
    }

    #[test]
    fn signature_has_full_length(seed in any::<u64>(), d in 1usize..4) {
        let phi = random_symmetric_faithful::<f64>(d, seed).unwrap();
        let j = jordan_decompose(&phi).unwrap();
        prop_assert_eq!(j.signature().len(), d * d);
        prop_assert_eq!(j.basis().len(), d * d);
        let top = j.gram_eigvals().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(j.gram_eigvals().iter().all(|v| v.abs() > 1e-9 * top));
    }
}
