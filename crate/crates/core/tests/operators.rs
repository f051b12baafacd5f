mod common;

use common::*;
use opgns::linalg::{self, kron, swap, vec_rows};
use opgns::operators::hs_gram;
use opgns::*;
use proptest::prelude::*;

fn z_omega_pauli() -> QuantumMap<f64> {
    let signs = [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Plus];
    let terms = HermitianBasis::<f64>::pauli()
        .elements()
        .iter()
        .zip(signs)
        .map(|(c, sign)| KrausTerm {
            op: c.matrix().clone(),
            sign,
        })
        .collect();
    QuantumMap::new(2, terms).unwrap()
}

#[test]
fn identity_choi_is_rank_one_with_trace_d() {
    let c = map_to_choi(&QuantumMap::<f64>::identity(2));
    let v = vec_rows(&linalg::identity::<f64>(2));
    assert!(dist(c.matrix(), &(&v * v.adjoint())) < 1e-15);
    assert_eq!(linalg::rank(c.matrix(), 1e-9), 1);
    assert!((c.matrix().trace().re - 2.0).abs() < 1e-15);
}

#[test]
fn z_omega_kraus_choi_is_swap() {
    let c = map_to_choi(&z_omega_pauli());
    assert!(dist(c.matrix(), &swap(2)) < 1e-12);
}

#[test]
fn random_cp_choi_matches_entrywise_sum() {
    let d = 3;
    let m = random::cp_map::<f64, _>(d, 3, &mut rng(11));
    let mut brute = linalg::zeros::<f64>(d * d);
    for t in m.terms() {
        let a = &t.op;
        for k in 0..d {
            for l in 0..d {
                for p in 0..d {
                    for q in 0..d {
                        brute[(k * d + l, p * d + q)] += a[(k, l)] * a[(p, q)].conj();
                    }
                }
            }
        }
    }
    let c = map_to_choi(&m);
    assert!(dist(c.matrix(), &brute) < 1e-12);
    assert!(c.is_psd(&Tolerances::default()));
    let tr = effect_of_map(&m).trace();
    assert!((c.matrix().trace().re - tr).abs() < 1e-12);
}

#[test]
fn swap_choi_decomposes_into_three_plus_one_minus() {
    let e = ChoiMatrix::new(2, swap::<f64>(2)).unwrap();
    let m = choi_to_map(&e).unwrap();
    let minus = m.terms().iter().filter(|t| t.sign == Sign::Minus).count();
    assert_eq!(m.terms().len() - minus, 3);
    assert_eq!(minus, 1);
    assert!(dist(map_to_choi(&m).matrix(), e.matrix()) < 1e-12);
}

#[test]
fn identity_choi_gives_identity_map() {
    let c = map_to_choi(&QuantumMap::<f64>::identity(3));
    let m = choi_to_map(&c).unwrap();
    assert_eq!(m.terms().len(), 1);
    assert!(same_map(&m, &QuantumMap::identity(3)) < 1e-12);
}

#[test]
fn degenerate_choi_inputs_are_rejected() {
    let zero = ChoiMatrix::new(2, linalg::zeros::<f64>(4)).unwrap();
    assert!(matches!(choi_to_map(&zero), Err(Error::InvalidChoi(_))));
    let mut skew = linalg::zeros::<f64>(4);
    skew[(0, 1)] = C::new(1.0, 0.0);
    let skew = ChoiMatrix::new(2, skew).unwrap();
    assert!(matches!(choi_to_map(&skew), Err(Error::InvalidChoi(_))));
    assert!(ChoiMatrix::new(2, linalg::zeros::<f64>(3)).is_err());
}

#[test]
fn mismatched_kraus_shapes_are_rejected() {
    let terms = vec![
        KrausTerm { op: linalg::identity::<f64>(2), sign: Sign::Plus },
        KrausTerm { op: linalg::identity::<f64>(3), sign: Sign::Plus },
    ];
    assert!(matches!(QuantumMap::new(2, terms), Err(Error::InvalidMap(_))));
}

#[test]
fn apply_map_examples() {
    let x = random::hermitian::<f64, _>(3, &mut rng(1));
    let y = apply_map(&QuantumMap::identity(3), &x).unwrap();
    assert!(dist(y.matrix(), x.matrix()) < 1e-15);

    let flip = QuantumMap::conjugation(sx()).unwrap();
    let out = apply_map(&flip, &herm(sz())).unwrap();
    assert!(dist(out.matrix(), &(sx() * sz() * sx())) < 1e-15);
    assert!(dist(out.matrix(), &(-sz())) < 1e-15);

    let z = z_omega_pauli();
    assert!(dist(apply_map(&z, &herm(sy())).unwrap().matrix(), &(-sy())) < 1e-12);
    assert!(dist(apply_map(&z, &herm(sx())).unwrap().matrix(), &sx()) < 1e-12);

    assert!(matches!(
        apply_map(&z, &x),
        Err(Error::DimensionMismatch { expected: 2, found: 3 })
    ));
}

#[test]
fn heisenberg_examples() {
    let id = HermitianOperator::<f64>::identity(3);
    let u = random::unitary_map::<f64, _>(3, &mut rng(2));
    assert!(dist(heisenberg_apply(&u, &id).unwrap().matrix(), id.matrix()) < 1e-12);

    let m = random::cp_map::<f64, _>(3, 2, &mut rng(3));
    let lhs = heisenberg_apply(&m, &id).unwrap();
    assert!(dist(lhs.matrix(), effect_of_map(&m).matrix()) < 1e-12);

    let e = random::hermitian::<f64, _>(3, &mut rng(4));
    let via = linalg::unvec(&(adjoint_map(&m).superop().matrix() * vec_rows(e.matrix())), 3);
    assert!(dist(heisenberg_apply(&m, &e).unwrap().matrix(), &via) < 1e-12);
}

#[test]
fn effect_of_map_pairs_with_states() {
    assert!(dist(
        effect_of_map(&QuantumMap::<f64>::identity(2)).matrix(),
        &linalg::identity(2)
    ) < 1e-15);
    let u = random::unitary_map::<f64, _>(3, &mut rng(5));
    assert!(dist(effect_of_map(&u).matrix(), &linalg::identity(3)) < 1e-12);

    let mut r = rng(6);
    let m = random::cp_map::<f64, _>(3, 3, &mut r);
    let p = effect_of_map(&m);
    assert!(p.is_psd(&Tolerances::default()));
    for _ in 0..10 {
        let rho = random::density_matrix::<f64, _>(3, &mut r);
        let lhs = apply_map(&m, &rho).unwrap().trace();
        assert!((lhs - rho.hs_inner(&p)).abs() < 1e-12);
    }
}

#[test]
fn transpose_map_examples() {
    let id = QuantumMap::<f64>::identity(2);
    assert!(same_map(&transpose_map(&id), &id) < 1e-15);
    let y = QuantumMap::conjugation(sy()).unwrap();
    let neg_y = QuantumMap::conjugation(-sy()).unwrap();
    assert!(same_map(&transpose_map(&y), &neg_y) < 1e-15);
    assert!(same_map(&transpose_map(&y), &y) < 1e-15);
    assert!(transpose_map(&y).superop().distance(&y.superop().transpose()) < 1e-15);
}

#[test]
fn adjoint_map_examples() {
    let mut r = rng(7);
    let u = random::haar_unitary::<f64, _>(3, &mut r);
    let conj_u = QuantumMap::conjugation(u.clone()).unwrap();
    let conj_udag = QuantumMap::conjugation(u.adjoint()).unwrap();
    assert!(same_map(&adjoint_map(&conj_u), &conj_udag) < 1e-15);

    let m = random::cp_map::<f64, _>(3, 2, &mut r);
    let x = random::hermitian::<f64, _>(3, &mut r);
    let y = random::hermitian::<f64, _>(3, &mut r);
    let lhs = apply_map(&adjoint_map(&m), &x).unwrap().hs_inner(&y);
    let rhs = x.hs_inner(&apply_map(&m, &y).unwrap());
    assert!((lhs - rhs).abs() < 1e-10);
}

#[test]
fn compose_add_scale_examples() {
    let mut r = rng(8);
    let m = random::cp_map::<f64, _>(2, 2, &mut r);
    let id = QuantumMap::identity(2);
    assert!(same_map(&compose(&id, &m).unwrap(), &m) < 1e-12);

    let a = random::cp_map::<f64, _>(2, 3, &mut r);
    let b = random::cp_map::<f64, _>(2, 4, &mut r);
    let ab = compose(&a, &b).unwrap();
    let prod = a.superop().then_after(&b.superop());
    assert!(ab.superop().distance(&prod) < 1e-10);
    assert!(ab.terms().len() <= 4);

    let zero = scale(&m, 0.0);
    assert!(zero.superop().matrix().norm() < 1e-15);

    let neg = scale(&m, -2.0);
    let want = m.superop().scaled(C::new(-2.0, 0.0));
    assert!(neg.superop().distance(&want) < 1e-12);

    let sum = add(&a, &b).unwrap();
    assert!(sum.superop().distance(&a.superop().plus(&b.superop())) < 1e-10);

    assert!(compose(&a, &QuantumMap::identity(3)).is_err());
}

#[test]
fn superop_examples() {
    let id = superop(&QuantumMap::<f64>::identity(3));
    assert!(dist(id.matrix(), &linalg::identity(9)) < 1e-15);

    let mut r = rng(9);
    let m = random::cp_map::<f64, _>(3, 2, &mut r);
    let x = random::hermitian::<f64, _>(3, &mut r);
    let lhs = superop(&m).matrix() * vec_rows(x.matrix());
    let rhs = vec_rows(apply_map(&m, &x).unwrap().matrix());
    assert!((lhs - rhs).norm() < 1e-12);

    let z = superop(&z_omega_pauli());
    let signs = [1.0, 1.0, -1.0, 1.0];
    for (c, s) in HermitianBasis::<f64>::pauli().elements().iter().zip(signs) {
        let v = vec_rows(c.matrix());
        assert!((z.matrix() * &v - &v * C::new(s, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn canonical_basis_examples() {
    let b = canonical_hs_basis::<f64>(2);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let expected = [
        mat(2, &[(1., 0.), (0., 0.), (0., 0.), (0., 0.)]),
        mat(2, &[(0., 0.), (0., 0.), (0., 0.), (1., 0.)]),
        sx() * C::new(h, 0.0),
        sy() * C::new(-h, 0.0),
    ];
    for (e, want) in b.elements().iter().zip(&expected) {
        assert!(dist(e.matrix(), want) < 1e-15);
    }
    for d in 1..=5 {
        let b = canonical_hs_basis::<f64>(d);
        assert_eq!(b.len(), d * d);
        let g = hs_gram(&b);
        assert!((g - nalgebra::DMatrix::identity(d * d, d * d)).norm() < 1e-12);
        let mut sum = linalg::zeros::<f64>(d * d);
        for c in b.elements() {
            sum += kron(c.matrix(), c.matrix());
        }
        assert!(dist(&sum, &swap(d)) < 1e-12);
    }
}

#[test]
fn effect_norm_examples() {
    let p = HermitianOperator::<f64>::projector(&[C::new(0.6, 0.0), C::new(0.0, 0.8)]);
    assert!((effect_norm(&p) - 1.0).abs() < 1e-12);
    assert!((effect_norm(&herm(sz())) - 1.0).abs() < 1e-15);
    let h = herm(sx() * C::new(2.0, 0.0) + sz() * C::new(3.0, 0.0));
    assert!((effect_norm(&h) - 13f64.sqrt()).abs() < 1e-12);
}

/// `sup_e ‖e∘𝒜‖` over qubit reflections `±(2|n⟩⟨n| − I)` and `±I` on a Bloch grid.
fn grid_norm(m: &QuantumMap<f64>) -> f64 {
    let mut best = effect_norm(&heisenberg_apply(m, &HermitianOperator::identity(2)).unwrap());
    let steps = 120;
    for i in 0..=steps {
        let th = std::f64::consts::PI * i as f64 / steps as f64;
        for j in 0..(2 * steps) {
            let ph = std::f64::consts::PI * j as f64 / steps as f64;
            let psi = [C::new((th / 2.0).cos(), 0.0), C::from_polar((th / 2.0).sin(), ph)];
            let q = HermitianOperator::projector(&psi);
            let refl = q.scaled(2.0).minus(&HermitianOperator::identity(2));
            best = best.max(effect_norm(&heisenberg_apply(m, &refl).unwrap()));
        }
    }
    best
}

#[test]
fn map_norm_lower_examples() {
    assert!((map_norm_lower(&QuantumMap::<f64>::identity(3), 10) - 1.0).abs() < 1e-12);
    let u = random::unitary_map::<f64, _>(3, &mut rng(10));
    assert!((map_norm_lower(&u, 10) - 1.0).abs() < 1e-10);

    let half = scale(&QuantumMap::<f64>::identity(2), 0.5);
    let est = map_norm_lower(&half, 10);
    assert!((est - 0.5).abs() < 1e-12);
    assert!((grid_norm(&half) - 0.5).abs() < 1e-12);

    let m = random::cp_map::<f64, _>(2, 2, &mut rng(12));
    let z = z_omega_pauli();
    for map in [m, z] {
        let est = map_norm_lower(&map, 20);
        let grid = grid_norm(&map);
        assert!(est >= grid - 1e-3, "estimator {est} below grid {grid}");
    }
}

#[test]
fn norm_submultiplicative_on_estimates() {
    let mut r = rng(13);
    for _ in 0..5 {
        let a = random::cp_map::<f64, _>(2, 2, &mut r);
        let b = random::cp_map::<f64, _>(2, 2, &mut r);
        let ba = compose(&b, &a).unwrap();
        let lhs = map_norm_lower(&ba, 20);
        let rhs = map_norm_lower(&b, 20) * map_norm_lower(&a, 20);
        assert!(lhs <= rhs + 1e-9, "{lhs} > {rhs}");
    }
}

fn arb_map(d: usize) -> impl Strategy<Value = QuantumMap<f64>> {
    (any::<u64>(), 1usize..4).prop_map(move |(s, k)| random::cp_map::<f64, _>(d, k, &mut rng(s)))
}

fn arb_signed_map(d: usize) -> impl Strategy<Value = QuantumMap<f64>> {
    (arb_map(d), arb_map(d), -2.0f64..2.0).prop_map(|(a, b, l)| add(&a, &scale(&b, l)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transpose_is_an_involution(m in arb_signed_map(3)) {
        let back = transpose_map(&transpose_map(&m));
        prop_assert_eq!(back.superop(), m.superop());
    }

    #[test]
    fn adjoint_is_an_involution(m in arb_signed_map(3)) {
        let back = adjoint_map(&adjoint_map(&m));
        prop_assert_eq!(back.superop(), m.superop());
    }

    #[test]
    fn choi_round_trip(m in arb_signed_map(2)) {
        let c = map_to_choi(&m);
        let back = choi_to_map(&c).unwrap();
        prop_assert!(dist(map_to_choi(&back).matrix(), c.matrix()) < 1e-9);
        prop_assert!(same_map(&back, &m) < 1e-9);
    }

    #[test]
    fn superop_is_multiplicative(a in arb_signed_map(2), b in arb_signed_map(2)) {
        let lhs = compose(&a, &b).unwrap().superop();
        let rhs = a.superop().then_after(&b.superop());
        prop_assert!(lhs.distance(&rhs) < 1e-9);
    }

    #[test]
    fn cp_maps_have_psd_choi_and_consistent_effects(m in arb_map(3)) {
        prop_assert!(map_to_choi(&m).is_psd(&Tolerances::default()));
        let lhs = heisenberg_apply(&m, &HermitianOperator::identity(3)).unwrap();
        prop_assert!(dist(lhs.matrix(), effect_of_map(&m).matrix()) < 1e-12);
        prop_assert!(m.is_physical(&Tolerances::default()));
    }

    #[test]
    fn superop_of_transpose_and_adjoint(m in arb_signed_map(3)) {
        let s = m.superop();
        prop_assert!(transpose_map(&m).superop().distance(&s.transpose()) < 1e-12);
        prop_assert!(adjoint_map(&m).superop().distance(&s.adjoint()) < 1e-12);
    }
}
