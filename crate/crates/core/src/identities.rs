//! Named identity checks relating a symmetric faithful state `Φ = (F⊗I)Ω`
//! to the maximally entangled state.
//!
//! `C` is the transposition map `X ↦ Xᵀ` (superoperator `E`), `M*` the
//! entrywise conjugate map and `M†` the Kraus-level adjoint.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::faithfulness::{symmetry_residual, BipartiteState};
use crate::gns::StateCalculus;
use crate::jordan::{varsigma, z_map};
use crate::linalg;
use crate::operators::{heisenberg_apply, SuperOp};
use crate::random;
use crate::scalar::{modulus, Real, Tolerances};

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck<T: Real> {
    pub name: &'static str,
    pub max_residual: T,
    pub pass: bool,
}

/// Names of the checks in [`identity_suite`], in output order.
pub const IDENTITY_NAMES: [&str; 10] = [
    "swap_symmetry",
    "f_transpose_invariant",
    "f_inverse_conjugate_adjoint",
    "transposition_involution",
    "transposition_conjugates",
    "z_factorization",
    "transpose_wrt_formula",
    "varsigma_z_conjugation",
    "adjoint_commutation",
    "scalar_product_formula",
];

/// Runs every identity on `samples` random CP maps (seeded) and reports the
/// largest Frobenius-norm residual per identity.
pub fn identity_suite<T: Real>(
    phi: &BipartiteState<T>,
    samples: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<Vec<IdentityCheck<T>>> {
    let calc = StateCalculus::new_with_tol(phi, tol)?;
    Ok(identity_suite_with(&calc, samples, seed))
}

pub fn identity_suite_with<T: Real>(
    calc: &StateCalculus<T>,
    samples: usize,
    seed: u64,
) -> Vec<IdentityCheck<T>> {
    let d = calc.dim();
    let tol = *calc.tolerances();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: Vec<SuperOp<T>> = (0..samples.max(1))
        .map(|k| random::cp_map::<T, _>(d, 1 + k % 3, &mut rng).superop())
        .collect();
    let effects: Vec<_> = (0..samples.max(1))
        .map(|_| random::hermitian::<T, _>(d, &mut rng))
        .collect();

    let f = calc.f();
    let fi = calc.f_inv();
    let e = SuperOp::transposition(d);
    let id = SuperOp::identity(d);
    let z = calc.z();
    let max = |xs: &mut dyn Iterator<Item = T>| xs.fold(T::zero(), |m, x| m.max(x));

    let mut transposition = linalg::zeros::<T>(d * d);
    for k in 0..d * d {
        let out = linalg::vec_rows(&linalg::unit_matrix::<T>(d, k).transpose());
        transposition.set_column(k, &out);
    }
    let transposition = SuperOp::new(d, transposition).expect("square");

    let residuals: [T; 10] = [
        symmetry_residual(calc.state()),
        f.distance(&f.transpose()),
        fi.distance(&f.conj()).max(fi.distance(&f.adjoint())),
        max(&mut [
            e.then_after(&e).distance(&id),
            e.distance(&e.adjoint()),
            e.distance(&transposition),
        ]
        .into_iter()),
        max(&mut maps
            .iter()
            .map(|m| e.then_after(m).then_after(&e).distance(&m.conj()))),
        z.distance(&e.then_after(&f.adjoint()))
            .max(z.distance(&f.then_after(&e))),
        max(&mut maps.iter().map(|m| {
            let t = calc.transpose(m);
            let formula = f.then_after(&m.transpose()).then_after(fi);
            let lhs = calc.state().apply_local(m, &id);
            let rhs = calc.state().apply_local(&id, &t);
            t.distance(&formula).max(linalg::distance(&lhs, &rhs))
        })),
        {
            let zm = z_map(calc.jordan());
            let on_maps = maps.iter().map(|m| {
                let s = calc.varsigma(m);
                s.distance(&z.then_after(m).then_after(z))
                    .max(calc.varsigma(&s).distance(m))
            });
            let on_effects = effects.iter().map(|a| {
                let lhs = heisenberg_apply(&zm, a).expect("dimensions agree");
                linalg::distance(lhs.matrix(), varsigma(calc.jordan(), a).matrix())
            });
            max(&mut on_maps.chain(on_effects))
        },
        max(&mut maps.iter().map(|m| {
            let ts = calc.transpose(&calc.varsigma(m));
            let st = calc.varsigma(&calc.transpose(m));
            let dag = m.adjoint();
            ts.distance(&st).max(ts.distance(&dag)).max(st.distance(&dag))
        })),
        max(&mut maps.iter().zip(maps.iter().skip(1).chain(maps.iter().take(1))).map(
            |(a, b)| modulus(calc.scalar_product(a, b) - calc.scalar_product_explicit(a, b)),
        )),
    ];

    IDENTITY_NAMES
        .iter()
        .zip(residuals)
        .map(|(&name, r)| IdentityCheck {
            name,
            max_residual: r,
            pass: r < tol.num,
        })
        .collect()
}
