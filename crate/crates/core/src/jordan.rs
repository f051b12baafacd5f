//! The bilinear form a state induces on effects, its Jordan decomposition,
//! the involution `ς_Φ` and the maps `Z_Φ`, `Z_{Ω,f}`.
//!
//! The form is `Φ(a,b) = d·Tr[(a⊗b)Φ]`, i.e. the state is taken with the
//! normalization `Σ_l |F_l⟩⟩⟨⟨F_l|`, so that `Ω(a,b) = Tr[a bᵀ]` and the
//! canonical basis satisfies `Φ(f_i,f_j) = s_i δ_ij`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::faithfulness::{contract_first, contract_second, BipartiteState};
use crate::linalg::{self, CMat};
use crate::operators::{canonical_hs_basis, HermitianBasis, HermitianOperator, QuantumMap, Sign, SuperOp};
use crate::scalar::{cr, Real, Tolerances, C};

fn dim_factor<T: Real>(d: usize) -> T {
    T::from_usize(d).expect("small integer")
}

/// `Φ(a,b) = d·Tr[(a⊗b)Φ]`.
pub fn bilinear_form<T: Real>(
    phi: &BipartiteState<T>,
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
) -> T {
    bilinear_form_raw(phi, a.matrix(), b.matrix()).re
}

/// Complex-bilinear extension of [`bilinear_form`].
pub fn bilinear_form_raw<T: Real>(phi: &BipartiteState<T>, a: &CMat<T>, b: &CMat<T>) -> C<T> {
    (contract_first(phi, a) * b).trace() * cr(dim_factor::<T>(phi.dim()))
}

/// `G_ij = Φ(e_i, e_j)`.
pub fn gram_matrix<T: Real>(phi: &BipartiteState<T>, basis: &HermitianBasis<T>) -> DMatrix<T> {
    let d = dim_factor::<T>(phi.dim());
    let k: Vec<CMat<T>> = basis
        .elements()
        .iter()
        .map(|e| contract_first(phi, e.matrix()) * cr(d))
        .collect();
    let n = basis.len();
    DMatrix::from_fn(n, n, |i, j| (&k[i] * basis.elements()[j].matrix()).trace().re)
}

/// Jordan decomposition of the form of a symmetric faithful state.
#[derive(Clone, Debug)]
pub struct JordanData<T: Real> {
    state: BipartiteState<T>,
    input_basis: HermitianBasis<T>,
    basis: Vec<HermitianOperator<T>>,
    signature: Vec<Sign>,
    gram_eigvals: Vec<T>,
    change_of_basis: DMatrix<T>,
}

impl<T: Real> JordanData<T> {
    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    pub fn state(&self) -> &BipartiteState<T> {
        &self.state
    }

    /// Canonical basis `f_j`.
    pub fn basis(&self) -> &[HermitianOperator<T>] {
        &self.basis
    }

    pub fn signature(&self) -> &[Sign] {
        &self.signature
    }

    /// Eigenvalues of the Gram matrix, descending.
    pub fn gram_eigvals(&self) -> &[T] {
        &self.gram_eigvals
    }

    /// Orthogonal `U` with `G = U Λ Uᵀ`, columns ordered like [`Self::gram_eigvals`].
    pub fn change_of_basis(&self) -> &DMatrix<T> {
        &self.change_of_basis
    }

    /// The orthonormal basis the Gram matrix was computed in.
    pub fn input_basis(&self) -> &HermitianBasis<T> {
        &self.input_basis
    }

    pub fn negative_count(&self) -> usize {
        self.signature.iter().filter(|&&s| s == Sign::Minus).count()
    }
}

pub fn jordan_decompose<T: Real>(phi: &BipartiteState<T>) -> Result<JordanData<T>> {
    jordan_decompose_in(phi, &canonical_hs_basis(phi.dim()), &T::default_tolerances())
}

/// Jordan decomposition computed from the Gram matrix in `basis`.
pub fn jordan_decompose_in<T: Real>(
    phi: &BipartiteState<T>,
    basis: &HermitianBasis<T>,
    tol: &Tolerances<T>,
) -> Result<JordanData<T>> {
    if basis.dim() != phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: basis.dim(),
        });
    }
    let g = gram_matrix(phi, basis);
    let gnorm = g.norm();
    let asym = (&g - g.transpose()).norm();
    if asym > tol.num * gnorm.max(T::one()) {
        return Err(Error::NotSymmetric {
            residual: (asym / gnorm.max(T::one())).to_f64_lossy(),
        });
    }
    let (vals, u) = linalg::eigh_real(&g);
    let top = vals.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if let Some(&small) = vals
        .iter()
        .filter(|v| v.abs() <= tol.rank * top.max(T::one()))
        .min_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap_or(std::cmp::Ordering::Equal))
    {
        return Err(Error::DegenerateForm {
            eigenvalue: small.to_f64_lossy(),
        });
    }
    let n = basis.len();
    let mut f = Vec::with_capacity(n);
    for j in 0..n {
        let w = T::one() / vals[j].abs().sqrt();
        let coeffs: Vec<T> = (0..n).map(|i| u[(i, j)] * w).collect();
        f.push(basis.combine(&coeffs));
    }
    Ok(JordanData {
        state: phi.clone(),
        input_basis: basis.clone(),
        basis: f,
        signature: vals.iter().map(|&v| Sign::of(v)).collect(),
        gram_eigvals: vals,
        change_of_basis: u,
    })
}

/// `ς_Φ(a) = Σ_j Φ(f_j, a) f_j`.
pub fn varsigma<T: Real>(j: &JordanData<T>, a: &HermitianOperator<T>) -> HermitianOperator<T> {
    let mut acc = linalg::zeros::<T>(j.dim());
    for f in &j.basis {
        acc += f.matrix() * cr(bilinear_form(&j.state, f, a));
    }
    HermitianOperator::from_hermitian_part(&acc)
}

/// Superoperator of the effect-level map `a ↦ Σ_j Φ(f_j, a) f_j` (extended
/// complex-linearly), whose Heisenberg dual is the map `Z`.
fn expansion_superop<T: Real>(
    phi: &BipartiteState<T>,
    basis: &[HermitianOperator<T>],
    basis_first: bool,
) -> CMat<T> {
    let d = phi.dim();
    let scale = cr(dim_factor::<T>(d));
    let kernels: Vec<CMat<T>> = basis
        .iter()
        .map(|f| {
            if basis_first {
                contract_first(phi, f.matrix()) * scale
            } else {
                contract_second(phi, f.matrix()) * scale
            }
        })
        .collect();
    let n = d * d;
    let mut v = linalg::zeros::<T>(n);
    for (f, k) in basis.iter().zip(&kernels) {
        let vf = linalg::vec_rows(f.matrix());
        for p in 0..d {
            for q in 0..d {
                let w = k[(q, p)];
                for r in 0..n {
                    v[(r, p * d + q)] += vf[r] * w;
                }
            }
        }
    }
    v
}

/// The map `Z` with `Tr[Z(ρ) a] = Tr[ρ H(a)]` for the effect-level map `H`
/// with superoperator `v`: `Ž = E vᵀ E`.
fn schroedinger_dual<T: Real>(v: &CMat<T>, d: usize) -> CMat<T> {
    let e = linalg::swap::<T>(d);
    &e * v.transpose() * &e
}

/// Superoperator `Ž_Φ`: the map whose Heisenberg action on effects is `ς_Φ`.
pub fn z_superop<T: Real>(j: &JordanData<T>) -> SuperOp<T> {
    SuperOp::new(
        j.dim(),
        schroedinger_dual(&expansion_superop(&j.state, &j.basis, true), j.dim()),
    )
    .expect("square superoperator")
}

/// `Z_Φ` as a signed-Kraus map.
pub fn z_map<T: Real>(j: &JordanData<T>) -> QuantumMap<T> {
    z_superop(j)
        .to_map()
        .expect("Z is Hermiticity preserving and invertible")
}

/// Superoperator of `Z_{Ω,f}`, defined by `a∘Z_{Ω,f} = Σ_j Ω(a, f_j) f_j`.
pub fn z_wrt_basis_superop<T: Real>(
    omega: &BipartiteState<T>,
    basis: &[HermitianOperator<T>],
) -> Result<SuperOp<T>> {
    let d = omega.dim();
    if basis.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: basis.len(),
        });
    }
    if let Some(f) = basis.iter().find(|f| f.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: f.dim(),
        });
    }
    SuperOp::new(d, schroedinger_dual(&expansion_superop(omega, basis, false), d))
}

pub fn z_wrt_basis<T: Real>(
    omega: &BipartiteState<T>,
    basis: &[HermitianOperator<T>],
) -> Result<QuantumMap<T>> {
    z_wrt_basis_superop(omega, basis)?.to_map()
}

/// `|Φ|(a,b) = Φ(ς_Φ(a), b)`.
pub fn abs_form<T: Real>(
    j: &JordanData<T>,
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
) -> T {
    bilinear_form(&j.state, &varsigma(j, a), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faithfulness::maximally_entangled;

    #[test]
    fn qubit_gram_on_pauli_basis() {
        let g = gram_matrix(&maximally_entangled::<f64>(2), &HermitianBasis::pauli());
        let want = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0, 1.0]));
        assert!((g - want).norm() < 1e-12);
    }

    #[test]
    fn omega_varsigma_is_conjugation() {
        let j = jordan_decompose(&maximally_entangled::<f64>(3)).unwrap();
        for e in canonical_hs_basis::<f64>(3).elements() {
            let out = varsigma(&j, e);
            assert!(linalg::distance(out.matrix(), e.conj().matrix()) < 1e-12);
        }
    }

    #[test]
    fn omega_z_is_swap() {
        let j = jordan_decompose(&maximally_entangled::<f64>(2)).unwrap();
        let z = z_map(&j);
        assert!(linalg::distance(z.choi().matrix(), &linalg::swap(2)) < 1e-12);
    }
}
