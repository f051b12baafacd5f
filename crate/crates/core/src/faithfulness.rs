//! Bipartite states and their faithfulness classification.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::operators::{choi_to_map, ChoiMatrix, HermitianOperator, QuantumMap, SuperOp};
use crate::random;
use crate::scalar::{cr, Real, Tolerances, C};

/// A density matrix on `C^d ⊗ C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState<T: Real> {
    dim: usize,
    mat: CMat<T>,
}

impl<T: Real> BipartiteState<T> {
    pub fn new(dim: usize, mat: CMat<T>) -> Result<Self> {
        Self::new_with_tol(dim, mat, &T::default_tolerances())
    }

    pub fn new_with_tol(dim: usize, mat: CMat<T>, tol: &Tolerances<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let n = dim * dim;
        if mat.shape() != (n, n) {
            return Err(Error::InvalidState(format!(
                "expected {n}×{n} matrix, found {:?}",
                mat.shape()
            )));
        }
        let herm = linalg::hermitian_residual(&mat);
        if herm > tol.herm {
            return Err(Error::InvalidState(format!(
                "not Hermitian (residual {herm})"
            )));
        }
        let h = HermitianOperator::from_hermitian_part(&mat);
        if !h.is_psd(tol) {
            return Err(Error::InvalidState("not positive semidefinite".into()));
        }
        let tr = h.trace();
        if (tr - T::one()).abs() > tol.num {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        Ok(Self {
            dim,
            mat: h.into_matrix(),
        })
    }

    /// `(1/d)|F⟩⟩⟨⟨F|` with `F` rescaled so that `Tr[F†F] = d`.
    pub fn pure(f: &CMat<T>) -> Result<Self> {
        let d = f.nrows();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if !f.is_square() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: f.ncols(),
            });
        }
        let n2 = linalg::frobenius(f);
        if n2 <= T::zero() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v = linalg::vec_rows(f) / cr(n2);
        Ok(Self {
            dim: d,
            mat: &v * v.adjoint(),
        })
    }

    pub fn product(rho: &HermitianOperator<T>, sigma: &HermitianOperator<T>) -> Result<Self> {
        if rho.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                found: sigma.dim(),
            });
        }
        Self::new(rho.dim(), linalg::kron(rho.matrix(), sigma.matrix()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.mat
    }

    /// `(𝒜⊗ℬ)(Φ)` for superoperators acting on the two factors.
    pub fn apply_local(&self, a: &SuperOp<T>, b: &SuperOp<T>) -> CMat<T> {
        apply_second(b, &apply_first(a, &self.mat, self.dim), self.dim)
    }
}

fn apply_first<T: Real>(s: &SuperOp<T>, m: &CMat<T>, d: usize) -> CMat<T> {
    let sm = s.matrix();
    let mut out = linalg::zeros::<T>(d * d);
    for a1 in 0..d {
        for b1 in 0..d {
            for i1 in 0..d {
                for j1 in 0..d {
                    let w = sm[(a1 * d + b1, i1 * d + j1)];
                    if w == C::new(T::zero(), T::zero()) {
                        continue;
                    }
                    for i2 in 0..d {
                        for j2 in 0..d {
                            out[(a1 * d + i2, b1 * d + j2)] += w * m[(i1 * d + i2, j1 * d + j2)];
                        }
                    }
                }
            }
        }
    }
    out
}

fn apply_second<T: Real>(s: &SuperOp<T>, m: &CMat<T>, d: usize) -> CMat<T> {
    let sm = s.matrix();
    let mut out = linalg::zeros::<T>(d * d);
    for a2 in 0..d {
        for b2 in 0..d {
            for i2 in 0..d {
                for j2 in 0..d {
                    let w = sm[(a2 * d + b2, i2 * d + j2)];
                    if w == C::new(T::zero(), T::zero()) {
                        continue;
                    }
                    for i1 in 0..d {
                        for j1 in 0..d {
                            out[(i1 * d + a2, j1 * d + b2)] += w * m[(i1 * d + i2, j1 * d + j2)];
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulnessReport<T: Real> {
    pub symmetric: bool,
    pub dynamically_faithful: bool,
    pub preparationally_faithful: bool,
    pub choi_rank: usize,
    pub f_map: Option<QuantumMap<T>>,
    pub notes: Vec<String>,
}

pub fn classify<T: Real>(phi: &BipartiteState<T>, tol: &Tolerances<T>) -> FaithfulnessReport<T> {
    let symmetric = is_symmetric_with(phi, tol);
    let (dynamically_faithful, choi_rank) = is_dynamically_faithful_with(phi, tol);
    let preparationally_faithful = dynamically_faithful && is_preparationally_faithful_with(phi, tol);
    let mut notes = Vec::new();
    if !symmetric {
        notes.push("EΦE differs from Φ".to_string());
    }
    if !dynamically_faithful {
        notes.push(format!(
            "Choi rank {choi_rank} < {}: local maps are not determined by their action on Φ",
            phi.dim * phi.dim
        ));
    } else if !preparationally_faithful {
        notes.push("the inverse of F is not completely positive".to_string());
    }
    let rank1 = linalg::rank(&phi.mat, tol.rank) == 1;
    if dynamically_faithful && !rank1 {
        notes.push("mixed state".to_string());
    }
    FaithfulnessReport {
        symmetric,
        dynamically_faithful,
        preparationally_faithful,
        choi_rank,
        f_map: dynamically_faithful.then(|| extract_f(phi)),
        notes,
    }
}

/// `Ω = (1/d)|I⟩⟩⟨⟨I|`.
pub fn maximally_entangled<T: Real>(d: usize) -> BipartiteState<T> {
    let v = linalg::vec_rows(&linalg::identity::<T>(d));
    BipartiteState {
        dim: d,
        mat: (&v * v.adjoint()) / cr(T::from_usize(d).expect("small integer")),
    }
}

/// The map `F` with `(F⊗id)(Ω) = Φ`, read off from `d·Φ` as a Choi matrix.
pub fn extract_f<T: Real>(phi: &BipartiteState<T>) -> QuantumMap<T> {
    let c = ChoiMatrix::new(phi.dim, scaled_choi(phi)).expect("shape checked on construction");
    choi_to_map(&c).expect("a unit-trace Hermitian matrix is a nonzero Choi matrix")
}

fn scaled_choi<T: Real>(phi: &BipartiteState<T>) -> CMat<T> {
    &phi.mat * cr(T::from_usize(phi.dim).expect("small integer"))
}

/// Superoperator `F̌` of the connecting map.
pub fn f_superop<T: Real>(phi: &BipartiteState<T>) -> SuperOp<T> {
    SuperOp::new(phi.dim, linalg::reshuffle(&scaled_choi(phi), phi.dim))
        .expect("shape checked on construction")
}

pub fn is_dynamically_faithful<T: Real>(phi: &BipartiteState<T>) -> (bool, usize) {
    is_dynamically_faithful_with(phi, &T::default_tolerances())
}

pub fn is_dynamically_faithful_with<T: Real>(
    phi: &BipartiteState<T>,
    tol: &Tolerances<T>,
) -> (bool, usize) {
    let r = linalg::rank(f_superop(phi).matrix(), tol.rank);
    (r == phi.dim * phi.dim, r)
}

pub fn is_preparationally_faithful<T: Real>(phi: &BipartiteState<T>) -> bool {
    is_preparationally_faithful_with(phi, &T::default_tolerances())
}

pub fn is_preparationally_faithful_with<T: Real>(
    phi: &BipartiteState<T>,
    tol: &Tolerances<T>,
) -> bool {
    let f = f_superop(phi);
    let n = phi.dim * phi.dim;
    if linalg::rank(f.matrix(), tol.rank) < n {
        return false;
    }
    match f.inverse() {
        Ok(inv) => inv.choi().is_psd(tol),
        Err(_) => false,
    }
}

pub fn is_symmetric<T: Real>(phi: &BipartiteState<T>) -> bool {
    is_symmetric_with(phi, &T::default_tolerances())
}

pub fn is_symmetric_with<T: Real>(phi: &BipartiteState<T>, tol: &Tolerances<T>) -> bool {
    symmetry_residual(phi) <= tol.num
}

/// `‖EΦE − Φ‖_F`.
pub fn symmetry_residual<T: Real>(phi: &BipartiteState<T>) -> T {
    let e = linalg::swap::<T>(phi.dim);
    linalg::distance(&(&e * &phi.mat * &e), &phi.mat)
}

const MAX_ATTEMPTS: usize = 100;
const MIN_SINGULAR: f64 = 0.05;

/// Pure symmetric state `(1/d)|F⟩⟩⟨⟨F|` with `F = QQᵀ`, `Q` Haar unitary.
///
/// `F` is symmetric and unitary, so the state is symmetric, dynamically
/// and preparationally faithful.
pub fn random_symmetric_faithful<T: Real>(d: usize, seed: u64) -> Result<BipartiteState<T>> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let q = random::haar_unitary::<T, _>(d, &mut rng);
        let f = &q * q.transpose();
        let s = linalg::singular_values(&f);
        if s.last().copied().unwrap_or_else(T::zero) < T::lit(MIN_SINGULAR) {
            continue;
        }
        let f = (&f + f.transpose()) * cr(T::lit(0.5));
        return BipartiteState::pure(&f);
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// Marginal state of one subsystem.
pub fn local_state<T: Real>(phi: &BipartiteState<T>, which: Subsystem) -> HermitianOperator<T> {
    HermitianOperator::from_hermitian_part(&linalg::partial_trace(
        &phi.mat,
        phi.dim,
        which == Subsystem::First,
    ))
}

/// Joint probability `Tr[(a⊗b)Φ]`.
pub fn joint_probability<T: Real>(
    phi: &BipartiteState<T>,
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
) -> T {
    joint_probability_raw(phi, a.matrix(), b.matrix()).re
}

/// `Tr[(a⊗b)Φ]` for arbitrary complex `a`, `b`.
pub fn joint_probability_raw<T: Real>(phi: &BipartiteState<T>, a: &CMat<T>, b: &CMat<T>) -> C<T> {
    (linalg::kron(a, b) * &phi.mat).trace()
}

/// `Tr_1[(a⊗I)Φ]`, so that `Tr[(a⊗b)Φ] = Tr[contract_first(a)·b]`.
pub fn contract_first<T: Real>(phi: &BipartiteState<T>, a: &CMat<T>) -> CMat<T> {
    let d = phi.dim;
    CMat::from_fn(d, d, |q, p| {
        let mut acc = C::new(T::zero(), T::zero());
        for i in 0..d {
            for k in 0..d {
                acc += a[(i, k)] * phi.mat[(k * d + q, i * d + p)];
            }
        }
        acc
    })
}

/// `Tr_2[(I⊗b)Φ]`, so that `Tr[(a⊗b)Φ] = Tr[a·contract_second(b)]`.
pub fn contract_second<T: Real>(phi: &BipartiteState<T>, b: &CMat<T>) -> CMat<T> {
    let d = phi.dim;
    CMat::from_fn(d, d, |q, p| {
        let mut acc = C::new(T::zero(), T::zero());
        for i in 0..d {
            for k in 0..d {
                acc += b[(i, k)] * phi.mat[(q * d + k, p * d + i)];
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_qubit_entries() {
        let o = maximally_entangled::<f64>(2);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert_eq!(o.matrix()[(i, j)], cr(0.5));
        }
        assert_eq!(o.matrix().iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn omega_is_fully_faithful() {
        let r = classify(&maximally_entangled::<f64>(3), &Tolerances::default());
        assert!(r.symmetric && r.dynamically_faithful && r.preparationally_faithful);
        assert_eq!(r.choi_rank, 9);
    }

    #[test]
    fn one_dimensional_state_is_trivially_faithful() {
        let s = random_symmetric_faithful::<f64>(1, 3).unwrap();
        assert!((s.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!(is_symmetric(&s) && is_preparationally_faithful(&s));
    }
}
