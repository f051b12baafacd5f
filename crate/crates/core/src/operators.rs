//! Hermitian operators, effects, signed-Kraus maps and their Choi and
//! superoperator representations.

use std::fmt;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::random;
use crate::scalar::{c, cr, Real, Tolerances, C};

/// A `d×d` complex Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<T: Real> {
    mat: CMat<T>,
}

impl<T: Real> HermitianOperator<T> {
    pub fn new(mat: CMat<T>) -> Result<Self> {
        Self::new_with_tol(mat, &T::default_tolerances())
    }

    pub fn new_with_tol(mat: CMat<T>, tol: &Tolerances<T>) -> Result<Self> {
        if mat.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        let residual = linalg::hermitian_residual(&mat);
        if residual > tol.herm {
            return Err(Error::NotHermitian {
                residual: residual.to_f64_lossy(),
            });
        }
        Ok(Self {
            mat: linalg::hermitian_part(&mat),
        })
    }

    /// Takes the Hermitian part of `mat` without validation.
    pub fn from_hermitian_part(mat: &CMat<T>) -> Self {
        Self {
            mat: linalg::hermitian_part(mat),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            mat: linalg::identity(d),
        }
    }

    pub fn zero(d: usize) -> Self {
        Self {
            mat: linalg::zeros(d),
        }
    }

    /// Projector `|ψ⟩⟨ψ|` onto the normalized vector `psi`.
    pub fn projector(psi: &[C<T>]) -> Self {
        let n = psi
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        let d = psi.len();
        Self::from_hermitian_part(&CMat::from_fn(d, d, |i, j| {
            psi[i] * psi[j].conj() / cr(n * n)
        }))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat<T> {
        self.mat
    }

    pub fn trace(&self) -> T {
        self.mat.trace().re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        linalg::eigh(&self.mat).0
    }

    /// `Tr[self · other]`.
    pub fn hs_inner(&self, other: &Self) -> T {
        (&self.mat * &other.mat).trace().re
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat + &other.mat,
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat - &other.mat,
        }
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            mat: &self.mat * cr(s),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            mat: self.mat.transpose(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            mat: linalg::conj(&self.mat),
        }
    }

    pub fn is_psd(&self, tol: &Tolerances<T>) -> bool {
        let vals = self.eigenvalues();
        let scale = vals.iter().fold(T::one(), |m, v| m.max(v.abs()));
        vals.iter().all(|&v| v >= -tol.psd * scale)
    }
}

/// A positive contraction `0 ≤ P ≤ I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect<T: Real> {
    op: HermitianOperator<T>,
}

impl<T: Real> Effect<T> {
    pub fn new(op: HermitianOperator<T>) -> Result<Self> {
        Self::new_with_tol(op, &T::default_tolerances())
    }

    pub fn new_with_tol(op: HermitianOperator<T>, tol: &Tolerances<T>) -> Result<Self> {
        let vals = op.eigenvalues();
        let lo = vals.last().copied().unwrap_or_else(T::zero);
        let hi = vals.first().copied().unwrap_or_else(T::zero);
        if lo < -tol.psd || hi > T::one() + tol.psd {
            return Err(Error::InvalidEffect(format!(
                "spectrum [{lo}, {hi}] outside [0, 1]"
            )));
        }
        Ok(Self { op })
    }

    pub fn op(&self) -> &HermitianOperator<T> {
        &self.op
    }

    pub fn matrix(&self) -> &CMat<T> {
        self.op.matrix()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<T: Real>(x: T) -> Self {
        if x < T::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Self {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrausTerm<T: Real> {
    pub op: CMat<T>,
    pub sign: Sign,
}

/// A generalized transformation `X ↦ Σ_i s_i A_i X A_i†` with `s_i = ±1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumMap<T: Real> {
    dim: usize,
    terms: Vec<KrausTerm<T>>,
}

impl<T: Real> QuantumMap<T> {
    pub fn new(dim: usize, terms: Vec<KrausTerm<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if terms.is_empty() {
            return Err(Error::InvalidMap("no Kraus terms".into()));
        }
        for t in &terms {
            if t.op.shape() != (dim, dim) {
                return Err(Error::InvalidMap(format!(
                    "Kraus operator of shape {:?} in a map on dimension {dim}",
                    t.op.shape()
                )));
            }
        }
        Ok(Self { dim, terms })
    }

    /// Completely positive map with the given Kraus operators.
    pub fn from_kraus(ops: Vec<CMat<T>>) -> Result<Self> {
        let dim = ops.first().map_or(0, |a| a.nrows());
        Self::new(
            dim,
            ops.into_iter()
                .map(|op| KrausTerm {
                    op,
                    sign: Sign::Plus,
                })
                .collect(),
        )
    }

    /// Conjugation `X ↦ A X A†`.
    pub fn conjugation(a: CMat<T>) -> Result<Self> {
        Self::from_kraus(vec![a])
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim: d,
            terms: vec![KrausTerm {
                op: linalg::identity(d),
                sign: Sign::Plus,
            }],
        }
    }

    pub fn zero(d: usize) -> Self {
        Self {
            dim: d,
            terms: vec![KrausTerm {
                op: linalg::zeros(d),
                sign: Sign::Plus,
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[KrausTerm<T>] {
        &self.terms
    }

    pub fn is_cp(&self) -> bool {
        self.terms.iter().all(|t| t.sign == Sign::Plus)
    }

    /// Trace non-increasing completely positive map.
    pub fn is_physical(&self, tol: &Tolerances<T>) -> bool {
        self.is_cp()
            && effect_of_map(self)
                .eigenvalues()
                .first()
                .is_none_or(|&v| v <= T::one() + tol.psd)
    }

    pub fn superop(&self) -> SuperOp<T> {
        superop(self)
    }

    pub fn choi(&self) -> ChoiMatrix<T> {
        map_to_choi(self)
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: d,
            })
        }
    }

    fn compressed(self) -> Self {
        if self.terms.len() <= self.dim * self.dim {
            return self;
        }
        let d = self.dim;
        choi_to_map(&map_to_choi(&self)).unwrap_or_else(|_| Self::zero(d))
    }
}

/// Choi matrix `(𝒜⊗id)(|I⟩⟩⟨⟨I|) = Σ_i s_i |A_i⟩⟩⟨⟨A_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix<T: Real> {
    dim: usize,
    mat: CMat<T>,
}

impl<T: Real> ChoiMatrix<T> {
    pub fn new(dim: usize, mat: CMat<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if mat.shape() != (dim * dim, dim * dim) {
            return Err(Error::InvalidChoi(format!(
                "expected {0}×{0}, found {1:?}",
                dim * dim,
                mat.shape()
            )));
        }
        Ok(Self { dim, mat })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.mat
    }

    pub fn is_psd(&self, tol: &Tolerances<T>) -> bool {
        HermitianOperator::from_hermitian_part(&self.mat).is_psd(tol)
    }

    pub fn superop(&self) -> SuperOp<T> {
        SuperOp {
            dim: self.dim,
            mat: linalg::reshuffle(&self.mat, self.dim),
        }
    }
}

/// Matrix of a linear map on `d×d` matrices acting on row-major vectorizations.
///
/// Complex combinations of transformations live here; only Hermiticity
/// preserving superoperators convert back to a [`QuantumMap`].
#[derive(Clone, Debug, PartialEq)]
pub struct SuperOp<T: Real> {
    dim: usize,
    mat: CMat<T>,
}

impl<T: Real> SuperOp<T> {
    pub fn new(dim: usize, mat: CMat<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if mat.shape() != (dim * dim, dim * dim) {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: mat.nrows(),
            });
        }
        Ok(Self { dim, mat })
    }

    pub(crate) fn raw(dim: usize, mat: CMat<T>) -> Self {
        Self { dim, mat }
    }

    pub fn identity(d: usize) -> Self {
        Self::raw(d, linalg::identity(d * d))
    }

    pub fn zero(d: usize) -> Self {
        Self::raw(d, linalg::zeros(d * d))
    }

    /// The transposition map `X ↦ Xᵀ`, whose matrix is the swap `E`.
    pub fn transposition(d: usize) -> Self {
        Self::raw(d, linalg::swap(d))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.mat
    }

    pub fn apply(&self, x: &CMat<T>) -> CMat<T> {
        linalg::unvec(&(&self.mat * linalg::vec_rows(x)), self.dim)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_after(&self, other: &Self) -> Self {
        Self::raw(self.dim, &self.mat * &other.mat)
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::raw(self.dim, &self.mat + &other.mat)
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self::raw(self.dim, &self.mat - &other.mat)
    }

    pub fn scaled(&self, s: C<T>) -> Self {
        Self::raw(self.dim, &self.mat * s)
    }

    /// Superoperator of the Kraus-level adjoint `Σ s A_i† · A_i`.
    pub fn adjoint(&self) -> Self {
        Self::raw(self.dim, self.mat.adjoint())
    }

    /// Superoperator of the Kraus-level transpose `Σ s A_iᵀ · A_i*`.
    pub fn transpose(&self) -> Self {
        Self::raw(self.dim, self.mat.transpose())
    }

    /// Superoperator of `X ↦ 𝒜(X†)†`; fixes every Hermiticity-preserving map.
    pub fn hermitian_conjugate(&self) -> Self {
        let e = linalg::swap::<T>(self.dim);
        Self::raw(self.dim, &e * linalg::conj(&self.mat) * e)
    }

    /// Superoperator of `X ↦ 𝒜(X*)*`, the entrywise conjugate.
    pub fn conj(&self) -> Self {
        Self::raw(self.dim, linalg::conj(&self.mat))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::raw(self.dim, linalg::inverse(&self.mat)?))
    }

    /// The operator `P` with `Tr[𝒜(X)] = Tr[P X]`.
    pub fn effect(&self) -> CMat<T> {
        let vi = linalg::vec_rows(&linalg::identity::<T>(self.dim));
        linalg::unvec(&(self.mat.transpose() * vi), self.dim).transpose()
    }

    pub fn choi(&self) -> ChoiMatrix<T> {
        ChoiMatrix {
            dim: self.dim,
            mat: linalg::reshuffle(&self.mat, self.dim),
        }
    }

    /// Signed-Kraus form, if the superoperator preserves Hermiticity.
    pub fn to_map(&self) -> Result<QuantumMap<T>> {
        choi_to_map(&self.choi())
    }

    pub fn distance(&self, other: &Self) -> T {
        linalg::distance(&self.mat, &other.mat)
    }
}

/// A Hilbert–Schmidt orthonormal basis of the `d×d` Hermitian matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianBasis<T: Real> {
    dim: usize,
    elements: Vec<HermitianOperator<T>>,
}

impl<T: Real> HermitianBasis<T> {
    pub fn new(elements: Vec<HermitianOperator<T>>, tol: &Tolerances<T>) -> Result<Self> {
        let dim = elements.first().map_or(0, HermitianOperator::dim);
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if elements.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: elements.len(),
            });
        }
        if let Some(e) = elements.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: e.dim(),
            });
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let want = if i == j { T::one() } else { T::zero() };
                let r = (a.hs_inner(b) - want).abs();
                if r > tol.orth {
                    return Err(Error::InvalidBasis(format!(
                        "not orthonormal: Tr[e_{i} e_{j}] off by {r}"
                    )));
                }
            }
        }
        Ok(Self { dim, elements })
    }

    /// `[Z_0…Z_{d−1}, X_01…X_{d−2,d−1}, Y_01…Y_{d−2,d−1}]`.
    pub fn canonical(d: usize) -> Self {
        canonical_hs_basis(d)
    }

    /// `σ_j/√2` for `j = 0,1,2,3` (identity, x, y, z).
    pub fn pauli() -> Self {
        let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
        let z = T::zero();
        let mk = |m: [[(T, T); 2]; 2]| {
            HermitianOperator::from_hermitian_part(&CMat::from_fn(2, 2, |i, j| {
                c(m[i][j].0 * h, m[i][j].1 * h)
            }))
        };
        let o = T::one();
        Self {
            dim: 2,
            elements: vec![
                mk([[(o, z), (z, z)], [(z, z), (o, z)]]),
                mk([[(z, z), (o, z)], [(o, z), (z, z)]]),
                mk([[(z, z), (z, -o)], [(z, o), (z, z)]]),
                mk([[(o, z), (z, z)], [(z, z), (-o, z)]]),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianOperator<T>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Expansion coefficients `Tr[e_j a]`.
    pub fn coordinates(&self, a: &CMat<T>) -> Vec<C<T>> {
        self.elements
            .iter()
            .map(|e| (e.matrix() * a).trace())
            .collect()
    }

    /// `Σ_j x_j e_j` for real coefficients.
    pub fn combine(&self, x: &[T]) -> HermitianOperator<T> {
        let mut acc = linalg::zeros::<T>(self.dim);
        for (e, &xj) in self.elements.iter().zip(x) {
            acc += e.matrix() * cr(xj);
        }
        HermitianOperator::from_hermitian_part(&acc)
    }
}

pub fn canonical_hs_basis<T: Real>(d: usize) -> HermitianBasis<T> {
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let mut elements = Vec::with_capacity(d * d);
    for l in 0..d {
        let mut z = linalg::zeros::<T>(d);
        z[(l, l)] = cr(T::one());
        elements.push(HermitianOperator { mat: z });
    }
    for k in 0..d {
        for l in (k + 1)..d {
            let mut x = linalg::zeros::<T>(d);
            x[(k, l)] = cr(h);
            x[(l, k)] = cr(h);
            elements.push(HermitianOperator { mat: x });
        }
    }
    for k in 0..d {
        for l in (k + 1)..d {
            let mut y = linalg::zeros::<T>(d);
            y[(k, l)] = c(T::zero(), h);
            y[(l, k)] = c(T::zero(), -h);
            elements.push(HermitianOperator { mat: y });
        }
    }
    HermitianBasis { dim: d, elements }
}

pub fn map_to_choi<T: Real>(m: &QuantumMap<T>) -> ChoiMatrix<T> {
    let n = m.dim * m.dim;
    let mut acc = linalg::zeros::<T>(n);
    for t in &m.terms {
        let v = linalg::vec_rows(&t.op);
        let outer = &v * v.adjoint();
        match t.sign {
            Sign::Plus => acc += outer,
            Sign::Minus => acc -= outer,
        }
    }
    ChoiMatrix {
        dim: m.dim,
        mat: acc,
    }
}

pub fn choi_to_map<T: Real>(c: &ChoiMatrix<T>) -> Result<QuantumMap<T>> {
    choi_to_map_with(c, &T::default_tolerances())
}

pub fn choi_to_map_with<T: Real>(c: &ChoiMatrix<T>, tol: &Tolerances<T>) -> Result<QuantumMap<T>> {
    let residual = linalg::hermitian_residual(&c.mat);
    if residual > tol.herm {
        return Err(Error::InvalidChoi(format!(
            "not Hermitian (residual {residual})"
        )));
    }
    let d = c.dim;
    let (vals, vecs) = linalg::eigh(&c.mat);
    let cut = tol.rank * vals.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let mut terms = Vec::new();
    for (k, &lam) in vals.iter().enumerate() {
        if lam.abs() <= cut {
            continue;
        }
        let v = vecs.column(k).into_owned() * cr(lam.abs().sqrt());
        terms.push(KrausTerm {
            op: linalg::unvec(&v, d),
            sign: Sign::of(lam),
        });
    }
    if terms.is_empty() {
        return Err(Error::InvalidChoi("zero Choi matrix".into()));
    }
    QuantumMap::new(d, terms)
}

pub fn apply_map<T: Real>(
    m: &QuantumMap<T>,
    x: &HermitianOperator<T>,
) -> Result<HermitianOperator<T>> {
    m.check_dim(x.dim())?;
    Ok(HermitianOperator::from_hermitian_part(&apply_map_raw(
        m,
        x.matrix(),
    )))
}

/// `Σ s_i A_i X A_i†` on an arbitrary complex matrix.
pub fn apply_map_raw<T: Real>(m: &QuantumMap<T>, x: &CMat<T>) -> CMat<T> {
    let mut acc = linalg::zeros::<T>(m.dim);
    for t in &m.terms {
        let y = &t.op * x * t.op.adjoint();
        match t.sign {
            Sign::Plus => acc += y,
            Sign::Minus => acc -= y,
        }
    }
    acc
}

/// Effect composition `e∘𝒜 = Σ s_i A_i† e A_i`.
pub fn heisenberg_apply<T: Real>(
    m: &QuantumMap<T>,
    e: &HermitianOperator<T>,
) -> Result<HermitianOperator<T>> {
    m.check_dim(e.dim())?;
    Ok(heisenberg_raw(m, e.matrix()))
}

fn heisenberg_raw<T: Real>(m: &QuantumMap<T>, e: &CMat<T>) -> HermitianOperator<T> {
    let mut acc = linalg::zeros::<T>(m.dim);
    for t in &m.terms {
        let y = t.op.adjoint() * e * &t.op;
        match t.sign {
            Sign::Plus => acc += y,
            Sign::Minus => acc -= y,
        }
    }
    HermitianOperator::from_hermitian_part(&acc)
}

/// `P_𝒜 = Σ s_i A_i† A_i`.
pub fn effect_of_map<T: Real>(m: &QuantumMap<T>) -> HermitianOperator<T> {
    heisenberg_raw(m, &linalg::identity(m.dim))
}

pub fn transpose_map<T: Real>(m: &QuantumMap<T>) -> QuantumMap<T> {
    m.map_terms(|a| a.transpose())
}

pub fn adjoint_map<T: Real>(m: &QuantumMap<T>) -> QuantumMap<T> {
    m.map_terms(|a| a.adjoint())
}

impl<T: Real> QuantumMap<T> {
    fn map_terms(&self, f: impl Fn(&CMat<T>) -> CMat<T>) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| KrausTerm {
                    op: f(&t.op),
                    sign: t.sign,
                })
                .collect(),
        }
    }
}

/// `a∘b`: apply `b` first.
pub fn compose<T: Real>(a: &QuantumMap<T>, b: &QuantumMap<T>) -> Result<QuantumMap<T>> {
    a.check_dim(b.dim)?;
    let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
    for ta in &a.terms {
        for tb in &b.terms {
            terms.push(KrausTerm {
                op: &ta.op * &tb.op,
                sign: ta.sign.times(tb.sign),
            });
        }
    }
    Ok(QuantumMap { dim: a.dim, terms }.compressed())
}

pub fn add<T: Real>(a: &QuantumMap<T>, b: &QuantumMap<T>) -> Result<QuantumMap<T>> {
    a.check_dim(b.dim)?;
    let mut terms = a.terms.clone();
    terms.extend(b.terms.iter().cloned());
    Ok(QuantumMap { dim: a.dim, terms }.compressed())
}

pub fn scale<T: Real>(a: &QuantumMap<T>, lambda: T) -> QuantumMap<T> {
    let r = cr(lambda.abs().sqrt());
    let flip = lambda < T::zero();
    QuantumMap {
        dim: a.dim,
        terms: a
            .terms
            .iter()
            .map(|t| KrausTerm {
                op: &t.op * r,
                sign: if flip { t.sign.flip() } else { t.sign },
            })
            .collect(),
    }
}

/// `Ǎ = Σ s_i A_i ⊗ A_i*`.
pub fn superop<T: Real>(m: &QuantumMap<T>) -> SuperOp<T> {
    let n = m.dim * m.dim;
    let mut acc = linalg::zeros::<T>(n);
    for t in &m.terms {
        let k = linalg::kron(&t.op, &linalg::conj(&t.op));
        match t.sign {
            Sign::Plus => acc += k,
            Sign::Minus => acc -= k,
        }
    }
    SuperOp {
        dim: m.dim,
        mat: acc,
    }
}

/// `sup_ρ |Tr[ρ e]| = max_i |λ_i(e)|`.
pub fn effect_norm<T: Real>(e: &HermitianOperator<T>) -> T {
    e.eigenvalues()
        .into_iter()
        .fold(T::zero(), |m, v| m.max(v.abs()))
}

const NORM_RESTARTS: usize = 32;
const NORM_SEED: u64 = 0x6e6f726d;

/// Lower bound on `sup_{‖e‖≤1} ‖e∘𝒜‖` by alternating ascent.
///
/// For a pure input `ψ` the best `e` is the reflection `sign(𝒜(|ψ⟩⟨ψ|))`,
/// and for a fixed `e` the best `ψ` is a top eigenvector of `e∘𝒜`. Each
/// restart alternates the two steps `iters` times. Not certified.
pub fn map_norm_lower<T: Real>(m: &QuantumMap<T>, iters: usize) -> T {
    let d = m.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(NORM_SEED);
    let mut best = T::zero();
    for restart in 0..NORM_RESTARTS {
        let mut psi: Vec<C<T>> = if restart < d {
            (0..d)
                .map(|k| cr(if k == restart { T::one() } else { T::zero() }))
                .collect()
        } else {
            random::gaussian_vector(d, &mut rng)
        };
        for _ in 0..iters.max(1) {
            let rho = HermitianOperator::projector(&psi);
            let out = apply_map_raw(m, rho.matrix());
            let (vals, vecs) = linalg::eigh(&out);
            let value = vals.iter().fold(T::zero(), |s, v| s + v.abs());
            best = best.max(value);
            let mut refl = linalg::zeros::<T>(d);
            for (k, &lam) in vals.iter().enumerate() {
                let v = vecs.column(k);
                let s = if lam < T::zero() { -T::one() } else { T::one() };
                refl += (v * v.adjoint()) * cr(s);
            }
            let dual = heisenberg_raw(m, &refl);
            let (dv, dvecs) = linalg::eigh(dual.matrix());
            let top = if dv.first().map(|v| v.abs()) >= dv.last().map(|v| v.abs()) {
                0
            } else {
                d - 1
            };
            psi = dvecs.column(top).iter().copied().collect();
        }
    }
    best
}

/// Real `d²×d²` Gram matrix `Tr[e_i e_j]`.
pub fn hs_gram<T: Real>(basis: &HermitianBasis<T>) -> DMatrix<T> {
    let n = basis.len();
    DMatrix::from_fn(n, n, |i, j| basis.elements[i].hs_inner(&basis.elements[j]))
}
