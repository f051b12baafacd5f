//! State-dependent transposition, conjugation and adjoint of maps, the GNS
//! scalar product and representation, the C* norm and the Born pairing.
//!
//! Everything here works on [`SuperOp`]s so that complex combinations of
//! transformations are available; the free functions accept [`QuantumMap`]s.

use crate::error::{Error, Result};
use crate::faithfulness::{
    contract_second, f_superop, is_dynamically_faithful_with, joint_probability_raw,
    symmetry_residual, BipartiteState,
};
use crate::jordan::{jordan_decompose_in, z_superop, JordanData};
use crate::linalg::{self, CMat, CVec};
use crate::operators::{canonical_hs_basis, HermitianOperator, QuantumMap, SuperOp};
use crate::scalar::{cr, modulus, Real, Tolerances, C};

/// Maps attached to a symmetric dynamically faithful state: `F̌`, `F̌⁻¹`,
/// the Jordan data and `Ž_Φ`.
#[derive(Clone, Debug)]
pub struct StateCalculus<T: Real> {
    tol: Tolerances<T>,
    f: SuperOp<T>,
    f_inv: SuperOp<T>,
    jordan: JordanData<T>,
    z: SuperOp<T>,
}

impl<T: Real> StateCalculus<T> {
    pub fn new(phi: &BipartiteState<T>) -> Result<Self> {
        Self::new_with_tol(phi, &T::default_tolerances())
    }

    pub fn new_with_tol(phi: &BipartiteState<T>, tol: &Tolerances<T>) -> Result<Self> {
        let sym = symmetry_residual(phi);
        if sym > tol.num {
            return Err(Error::NotSymmetric {
                residual: sym.to_f64_lossy(),
            });
        }
        let (faithful, rank) = is_dynamically_faithful_with(phi, tol);
        if !faithful {
            return Err(Error::NotFaithful {
                rank,
                full: phi.dim() * phi.dim(),
            });
        }
        let f = f_superop(phi);
        let f_inv = f.inverse()?;
        let jordan = jordan_decompose_in(phi, &canonical_hs_basis(phi.dim()), tol)?;
        let z = z_superop(&jordan);
        Ok(Self {
            tol: *tol,
            f,
            f_inv,
            jordan,
            z,
        })
    }

    pub fn dim(&self) -> usize {
        self.jordan.dim()
    }

    pub fn state(&self) -> &BipartiteState<T> {
        self.jordan.state()
    }

    pub fn tolerances(&self) -> &Tolerances<T> {
        &self.tol
    }

    pub fn f(&self) -> &SuperOp<T> {
        &self.f
    }

    pub fn f_inv(&self) -> &SuperOp<T> {
        &self.f_inv
    }

    pub fn jordan(&self) -> &JordanData<T> {
        &self.jordan
    }

    pub fn z(&self) -> &SuperOp<T> {
        &self.z
    }

    /// `τ_Φ(𝒜) = τ(F⁻¹∘𝒜∘F)`, characterized by `(𝒜⊗id)(Φ) = (id⊗τ_Φ(𝒜))(Φ)`.
    pub fn transpose(&self, a: &SuperOp<T>) -> SuperOp<T> {
        self.f_inv.then_after(a).then_after(&self.f).transpose()
    }

    /// `ς_Φ(𝒜) = Z_Φ∘𝒜∘Z_Φ`, extended antilinearly to complex combinations.
    pub fn varsigma(&self, a: &SuperOp<T>) -> SuperOp<T> {
        self.z.then_after(&a.hermitian_conjugate()).then_after(&self.z)
    }

    /// `ad_Φ = ς_Φ∘τ_Φ`.
    pub fn adjoint(&self, a: &SuperOp<T>) -> SuperOp<T> {
        self.varsigma(&self.transpose(a))
    }

    /// Joint probability `Φ(𝒜,ℬ) = Tr[(P_𝒜⊗P_ℬ)Φ]`.
    pub fn joint(&self, a: &SuperOp<T>, b: &SuperOp<T>) -> C<T> {
        joint_probability_raw(self.state(), &a.effect(), &b.effect())
    }

    /// `⟨𝒜|ℬ⟩_Φ = Φ(ad_Φ(𝒜), τ_Φ(ℬ))`.
    pub fn scalar_product(&self, a: &SuperOp<T>, b: &SuperOp<T>) -> C<T> {
        self.joint(&self.adjoint(a), &self.transpose(b))
    }

    /// `(1/d) Σ_l ⟨⟨F_l|Ǎ†B̌|F_l⟩⟩ = Tr[Φ Ǎ†B̌]`.
    pub fn scalar_product_explicit(&self, a: &SuperOp<T>, b: &SuperOp<T>) -> C<T> {
        (self.state().matrix() * a.matrix().adjoint() * b.matrix()).trace()
    }

    /// Representative of the class of `𝒜`: `|P_{τ_Φ(𝒜)}ᵀ⟩⟩`.
    pub fn gns_vector(&self, a: &SuperOp<T>) -> CVec<T> {
        linalg::vec_rows(&self.transpose(a).effect().transpose())
    }
}

/// Concrete GNS space on the `d²`-dimensional span of a basis of maps.
#[derive(Clone, Debug)]
pub struct GnsSpace<T: Real> {
    calc: StateCalculus<T>,
    basis_maps: Vec<SuperOp<T>>,
    to_coords: CMat<T>,
    gram: CMat<T>,
    chol: CMat<T>,
}

impl<T: Real> GnsSpace<T> {
    /// Default basis `b_j = τ_Φ(c_j)` with `c_j(X) = Tr[e_jᵀX] I/d`, whose
    /// GNS vectors are `|e_j⟩⟩` for the canonical Hermitian basis `e_j`.
    pub fn new(phi: &BipartiteState<T>) -> Result<Self> {
        Self::from_calculus(StateCalculus::new(phi)?)
    }

    pub fn new_with_tol(phi: &BipartiteState<T>, tol: &Tolerances<T>) -> Result<Self> {
        Self::from_calculus(StateCalculus::new_with_tol(phi, tol)?)
    }

    pub fn from_calculus(calc: StateCalculus<T>) -> Result<Self> {
        let d = calc.dim();
        let vi = linalg::vec_rows(&linalg::identity::<T>(d));
        let inv_d = cr(T::one() / T::from_usize(d).expect("small integer"));
        let maps = canonical_hs_basis::<T>(d)
            .elements()
            .iter()
            .map(|e| {
                let c = SuperOp::new(d, &vi * linalg::vec_rows(e.matrix()).transpose() * inv_d)
                    .expect("square superoperator");
                calc.transpose(&c)
            })
            .collect();
        Self::with_basis(calc, maps)
    }

    /// GNS space spanned by arbitrary maps; they must span all classes.
    pub fn with_basis(calc: StateCalculus<T>, basis_maps: Vec<SuperOp<T>>) -> Result<Self> {
        let d = calc.dim();
        let n = d * d;
        if basis_maps.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis_maps.len(),
            });
        }
        if let Some(b) = basis_maps.iter().find(|b| b.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: b.dim(),
            });
        }
        let vecs = CMat::from_fn(n, n, |r, c| calc.gns_vector(&basis_maps[c])[r]);
        if linalg::rank(&vecs, calc.tol.rank) < n {
            return Err(Error::NotPositive);
        }
        let to_coords = linalg::inverse(&vecs)?;
        let gram = CMat::from_fn(n, n, |i, j| calc.scalar_product(&basis_maps[i], &basis_maps[j]));
        let chol = linalg::hermitian_part(&gram)
            .cholesky()
            .ok_or(Error::NotPositive)?
            .l();
        Ok(Self {
            calc,
            basis_maps,
            to_coords,
            gram,
            chol,
        })
    }

    pub fn calculus(&self) -> &StateCalculus<T> {
        &self.calc
    }

    pub fn basis_maps(&self) -> &[SuperOp<T>] {
        &self.basis_maps
    }

    pub fn gram(&self) -> &CMat<T> {
        &self.gram
    }

    /// Coordinates of the class of `𝒜` in the basis maps.
    pub fn coordinates(&self, a: &SuperOp<T>) -> CVec<T> {
        &self.to_coords * self.calc.gns_vector(a)
    }

    /// `x† W y`.
    pub fn inner(&self, x: &CVec<T>, y: &CVec<T>) -> C<T> {
        (x.adjoint() * &self.gram * y)[(0, 0)]
    }

    /// Matrix of `π_Φ(𝒜): |ℬ⟩ ↦ |𝒜∘ℬ⟩` in basis-map coordinates.
    pub fn representation_matrix(&self, a: &SuperOp<T>) -> CMat<T> {
        let n = self.basis_maps.len();
        let cols: Vec<CVec<T>> = self
            .basis_maps
            .iter()
            .map(|b| self.coordinates(&a.then_after(b)))
            .collect();
        CMat::from_fn(n, n, |r, c| cols[c][r])
    }

    /// Adjoint of a coordinate matrix with respect to the Gram inner product.
    pub fn gram_adjoint(&self, r: &CMat<T>) -> Result<CMat<T>> {
        Ok(linalg::inverse(&self.gram)? * r.adjoint() * &self.gram)
    }

    /// `‖L† R L^{-†}‖₂` with `W = L L†`.
    pub fn operator_norm(&self, r: &CMat<T>) -> T {
        let l_adj = self.chol.adjoint();
        let l_adj_inv = linalg::inverse(&l_adj).expect("Cholesky factor is invertible");
        linalg::spectral_norm(&(&l_adj * r * l_adj_inv))
    }

    pub fn cstar_norm(&self, a: &SuperOp<T>) -> T {
        self.operator_norm(&self.representation_matrix(a))
    }
}

/// `τ_Φ(m)`.
pub fn transpose_wrt<T: Real>(phi: &BipartiteState<T>, m: &QuantumMap<T>) -> Result<QuantumMap<T>> {
    StateCalculus::new(phi)?.transpose(&m.superop()).to_map()
}

/// `ad_Φ(m)`.
pub fn adjoint_wrt<T: Real>(phi: &BipartiteState<T>, m: &QuantumMap<T>) -> Result<QuantumMap<T>> {
    StateCalculus::new(phi)?.adjoint(&m.superop()).to_map()
}

pub fn scalar_product<T: Real>(
    phi: &BipartiteState<T>,
    a: &QuantumMap<T>,
    b: &QuantumMap<T>,
) -> Result<C<T>> {
    Ok(StateCalculus::new(phi)?.scalar_product(&a.superop(), &b.superop()))
}

pub fn scalar_product_explicit<T: Real>(
    phi: &BipartiteState<T>,
    a: &QuantumMap<T>,
    b: &QuantumMap<T>,
) -> Result<C<T>> {
    Ok(StateCalculus::new(phi)?.scalar_product_explicit(&a.superop(), &b.superop()))
}

pub fn gns_vector<T: Real>(phi: &BipartiteState<T>, m: &QuantumMap<T>) -> Result<CVec<T>> {
    Ok(StateCalculus::new(phi)?.gns_vector(&m.superop()))
}

pub fn representation_matrix<T: Real>(phi: &BipartiteState<T>, m: &QuantumMap<T>) -> Result<CMat<T>> {
    Ok(GnsSpace::new(phi)?.representation_matrix(&m.superop()))
}

pub fn cstar_norm<T: Real>(phi: &BipartiteState<T>, m: &QuantumMap<T>) -> Result<T> {
    Ok(GnsSpace::new(phi)?.cstar_norm(&m.superop()))
}

fn check_density<T: Real>(rho: &HermitianOperator<T>, tol: &Tolerances<T>) -> Result<()> {
    if !rho.is_psd(tol) {
        return Err(Error::InvalidState("target is not positive semidefinite".into()));
    }
    if (rho.trace() - T::one()).abs() > tol.num {
        return Err(Error::InvalidState(format!(
            "target has trace {}",
            rho.trace()
        )));
    }
    Ok(())
}

/// A transformation `𝒯` on system 2 steering system 1 into `ρ_target`.
///
/// Solves `Tr_2[(I⊗P)Φ] = ρ_target` for the effect `P`, rescales it to a
/// contraction and returns the conjugation by `√P`.
pub fn find_preparation<T: Real>(
    phi: &BipartiteState<T>,
    rho_target: &HermitianOperator<T>,
) -> Result<QuantumMap<T>> {
    find_preparation_with(phi, rho_target, &T::default_tolerances())
}

pub fn find_preparation_with<T: Real>(
    phi: &BipartiteState<T>,
    rho_target: &HermitianOperator<T>,
    tol: &Tolerances<T>,
) -> Result<QuantumMap<T>> {
    let d = phi.dim();
    if rho_target.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho_target.dim(),
        });
    }
    check_density(rho_target, tol)?;
    let n = d * d;
    let cols: Vec<CVec<T>> = (0..n)
        .map(|k| linalg::vec_rows(&contract_second(phi, &linalg::unit_matrix(d, k))))
        .collect();
    let lin = CMat::from_fn(n, n, |r, c| cols[c][r]);
    if linalg::rank(&lin, tol.rank) < n {
        return Err(Error::NotPreparationallyFaithful(
            "local transformations do not reach every marginal".into(),
        ));
    }
    let x = lin
        .lu()
        .solve(&linalg::vec_rows(rho_target.matrix()))
        .ok_or(Error::Singular)?;
    let p = linalg::unvec(&x, d);
    if linalg::hermitian_residual(&p) > tol.herm.max(tol.num) {
        return Err(Error::NotPreparationallyFaithful(
            "required effect is not Hermitian".into(),
        ));
    }
    let (vals, vecs) = linalg::eigh(&p);
    let top = vals.first().copied().unwrap_or_else(T::zero);
    if top <= T::zero() || vals.iter().any(|&v| v < -tol.psd * top) {
        return Err(Error::NotPreparationallyFaithful(
            "required effect is not positive".into(),
        ));
    }
    let mut root = linalg::zeros::<T>(d);
    for (k, &v) in vals.iter().enumerate() {
        let col = vecs.column(k);
        root += (col * col.adjoint()) * cr((v.max(T::zero()) / top).sqrt());
    }
    QuantumMap::conjugation(root)
}

/// Both sides of the Born rule for preparation `𝒯` and measured map `𝒜`.
#[derive(Clone, Debug, PartialEq)]
pub struct BornPairing<T: Real> {
    /// `Tr[ρ_ω P_𝒜]`.
    pub direct: T,
    /// `⟨ad_Φ(𝒜)|ϱ⟩_Φ` with `ϱ = τ_Φ(𝒯)/Φ(I,𝒯)`.
    pub gns: C<T>,
    /// `Φ(I,𝒯)`.
    pub preparation_probability: T,
    /// `ρ_ω`.
    pub local_state: HermitianOperator<T>,
}

impl<T: Real> BornPairing<T> {
    pub fn residual(&self) -> T {
        modulus(self.gns - cr(self.direct))
    }

    pub fn probability(&self) -> T {
        self.direct
    }
}

pub fn born_rule<T: Real>(
    phi: &BipartiteState<T>,
    omega_prep: &QuantumMap<T>,
    effect_map: &QuantumMap<T>,
) -> Result<BornPairing<T>> {
    born_rule_with(&StateCalculus::new(phi)?, omega_prep, effect_map)
}

pub fn born_rule_with<T: Real>(
    calc: &StateCalculus<T>,
    omega_prep: &QuantumMap<T>,
    effect_map: &QuantumMap<T>,
) -> Result<BornPairing<T>> {
    let d = calc.dim();
    for m in [omega_prep, effect_map] {
        if m.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: m.dim(),
            });
        }
    }
    let t = omega_prep.superop();
    let a = effect_map.superop();
    let pt = t.effect();
    let p = joint_probability_raw(calc.state(), &linalg::identity(d), &pt).re;
    if p <= calc.tol.num {
        return Err(Error::InvalidState(
            "preparation occurs with zero probability".into(),
        ));
    }
    let rho = contract_second(calc.state(), &pt) / cr(p);
    let direct = (&rho * a.effect()).trace().re;
    let varrho = calc.transpose(&t).scaled(cr(T::one() / p));
    let gns = calc.scalar_product(&calc.adjoint(&a), &varrho);
    Ok(BornPairing {
        direct,
        gns,
        preparation_probability: p,
        local_state: HermitianOperator::from_hermitian_part(&rho),
    })
}
