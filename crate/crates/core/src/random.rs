//! Seeded random matrices, states and maps.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::CMat;
use crate::operators::{HermitianOperator, QuantumMap};
use crate::scalar::{c, cr, modulus, Real, C};

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Vector of i.i.d. standard complex Gaussians.
pub fn gaussian_vector<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C<T>> {
    (0..d).map(|_| c(normal(rng), normal(rng))).collect()
}

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat<T> {
    CMat::from_fn(d, d, |_, _| c(normal(rng), normal(rng)))
}

/// Haar-distributed unitary via QR with the phase of `R`'s diagonal fixed.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat<T> {
    let qr = ginibre::<T, R>(d, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = modulus(rjj);
        let phase = if n > T::zero() { rjj / cr(n) } else { cr(T::one()) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random Hermitian matrix (GUE-like, unnormalized).
pub fn hermitian<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianOperator<T> {
    HermitianOperator::from_hermitian_part(&ginibre(d, rng))
}

/// Random full-rank density matrix `GG†/Tr[GG†]`.
pub fn density_matrix<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianOperator<T> {
    let g = ginibre::<T, R>(d, rng);
    let rho = &g * g.adjoint();
    let t = rho.trace().re;
    HermitianOperator::from_hermitian_part(&(rho / cr(t)))
}

/// Random effect `0 ≤ P ≤ I` with spectrum uniform in `[0, 1]`.
pub fn effect<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianOperator<T> {
    let u = haar_unitary::<T, R>(d, rng);
    let diag = CMat::from_fn(d, d, |i, j| {
        if i == j {
            cr(T::lit(rng.random::<f64>()))
        } else {
            cr(T::zero())
        }
    });
    HermitianOperator::from_hermitian_part(&(&u * diag * u.adjoint()))
}

/// Random trace non-increasing CP map with `kraus` Kraus operators,
/// rescaled so that `‖P_𝒜‖ = 1`.
pub fn cp_map<T: Real, R: Rng + ?Sized>(d: usize, kraus: usize, rng: &mut R) -> QuantumMap<T> {
    let ops: Vec<CMat<T>> = (0..kraus.max(1)).map(|_| ginibre(d, rng)).collect();
    let m = QuantumMap::from_kraus(ops).expect("nonempty Kraus list of equal shapes");
    let top = crate::operators::effect_of_map(&m)
        .eigenvalues()
        .first()
        .copied()
        .unwrap_or_else(T::one);
    crate::operators::scale(&m, T::one() / top)
}

/// Random unitary conjugation.
pub fn unitary_map<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> QuantumMap<T> {
    QuantumMap::conjugation(haar_unitary(d, rng)).expect("square unitary")
}

/// Random Hilbert–Schmidt orthonormal Hermitian basis: the canonical basis
/// rotated by a random real orthogonal matrix.
pub fn hermitian_basis<T: Real, R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> crate::operators::HermitianBasis<T> {
    let n = d * d;
    let g = nalgebra::DMatrix::<T>::from_fn(n, n, |_, _| normal(rng));
    let o = g.qr().q();
    let canon = crate::operators::canonical_hs_basis::<T>(d);
    let elements = (0..n)
        .map(|j| {
            let coeffs: Vec<T> = (0..n).map(|i| o[(i, j)]).collect();
            canon.combine(&coeffs)
        })
        .collect();
    crate::operators::HermitianBasis::new(elements, &T::default_tolerances())
        .expect("orthogonal rotation of an orthonormal basis")
}
