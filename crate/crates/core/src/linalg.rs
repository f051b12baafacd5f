//! Dense complex matrix helpers.
//!
//! Vectorization is row-major throughout the crate: `|A⟩⟩ = Σ A_ij |i⟩⊗|j⟩`,
//! so that `(A⊗B)|X⟩⟩ = |A X Bᵀ⟩⟩` and `(A⊗A*)|X⟩⟩ = |A X A†⟩⟩`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{cr, modulus, Real, C};

pub type CMat<T> = DMatrix<C<T>>;
pub type CVec<T> = DVector<C<T>>;

pub fn zeros<T: Real>(n: usize) -> CMat<T> {
    CMat::zeros(n, n)
}

pub fn identity<T: Real>(n: usize) -> CMat<T> {
    CMat::identity(n, n)
}

/// Matrix unit `|k/d⟩⟨k%d|`, the `k`-th element of the row-major basis.
pub fn unit_matrix<T: Real>(d: usize, k: usize) -> CMat<T> {
    let mut m = zeros::<T>(d);
    m[(k / d, k % d)] = cr(T::one());
    m
}

/// Row-major vectorization `|A⟩⟩`.
pub fn vec_rows<T: Real>(a: &CMat<T>) -> CVec<T> {
    let (r, c) = a.shape();
    CVec::from_fn(r * c, |k, _| a[(k / c, k % c)])
}

/// Inverse of [`vec_rows`] for a square `d×d` matrix.
pub fn unvec<T: Real>(v: &CVec<T>, d: usize) -> CMat<T> {
    debug_assert_eq!(v.len(), d * d);
    CMat::from_fn(d, d, |i, j| v[i * d + j])
}

pub fn kron<T: Real>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    a.kronecker(b)
}

/// Swap operator `E` on `C^d ⊗ C^d`: `E|a⟩|b⟩ = |b⟩|a⟩`, equivalently `E|X⟩⟩ = |Xᵀ⟩⟩`.
pub fn swap<T: Real>(d: usize) -> CMat<T> {
    let mut e = zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            e[(i * d + j, j * d + i)] = C::new(T::one(), T::zero());
        }
    }
    e
}

pub fn conj<T: Real>(a: &CMat<T>) -> CMat<T> {
    a.map(|z| z.conj())
}

pub fn trace<T: Real>(a: &CMat<T>) -> C<T> {
    a.trace()
}

pub fn frobenius<T: Real>(a: &CMat<T>) -> T {
    a.iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// `‖a − b‖_F`.
pub fn distance<T: Real>(a: &CMat<T>, b: &CMat<T>) -> T {
    frobenius(&(a - b))
}

/// `‖a − b‖_F / max(1, ‖b‖_F)`.
pub fn rel_distance<T: Real>(a: &CMat<T>, b: &CMat<T>) -> T {
    distance(a, b) / frobenius(b).max(T::one())
}

/// `‖a − a†‖_F / max(1, ‖a‖_F)`.
pub fn hermitian_residual<T: Real>(a: &CMat<T>) -> T {
    if !a.is_square() {
        return T::max_value().unwrap_or_else(T::one);
    }
    distance(a, &a.adjoint()) / frobenius(a).max(T::one())
}

pub fn hermitian_part<T: Real>(a: &CMat<T>) -> CMat<T> {
    (a + a.adjoint()) * cr(T::lit(0.5))
}

/// Hermitian eigendecomposition with eigenvalues sorted in descending order
/// (stable with respect to nalgebra's output order) and each eigenvector
/// normalized so its largest-modulus component is real positive.
pub fn eigh<T: Real>(a: &CMat<T>) -> (Vec<T>, CMat<T>) {
    let n = a.nrows();
    let herm = hermitian_part(a);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut vecs = zeros::<T>(n);
    let mut vals = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        vals.push(eig.eigenvalues[k]);
        let v = eig.eigenvectors.column(k);
        let pivot = v
            .iter()
            .copied()
            .fold(C::new(T::zero(), T::zero()), |best, z| {
                if z.norm_sqr() > best.norm_sqr() + T::lit(1e-14) {
                    z
                } else {
                    best
                }
            });
        let phase = if modulus(pivot) > T::zero() {
            pivot.conj() / cr(modulus(pivot))
        } else {
            cr(T::one())
        };
        for r in 0..n {
            vecs[(r, col)] = v[r] * phase;
        }
    }
    (vals, vecs)
}

/// Real symmetric eigendecomposition, eigenvalues descending, eigenvectors
/// with largest-modulus component positive.
pub fn eigh_real<T: Real>(a: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let n = a.nrows();
    let sym = (a + a.transpose()) * T::lit(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut vecs = DMatrix::<T>::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        vals.push(eig.eigenvalues[k]);
        let v = eig.eigenvectors.column(k);
        let mut pivot = T::zero();
        for &x in v.iter() {
            if x.abs() > pivot.abs() + T::lit(1e-14) {
                pivot = x;
            }
        }
        let s = if pivot < T::zero() { -T::one() } else { T::one() };
        for r in 0..n {
            vecs[(r, col)] = v[r] * s;
        }
    }
    (vals, vecs)
}

pub fn singular_values<T: Real>(a: &CMat<T>) -> Vec<T> {
    let mut s: Vec<T> = a.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    s
}

pub fn spectral_norm<T: Real>(a: &CMat<T>) -> T {
    singular_values(a).first().copied().unwrap_or_else(T::zero)
}

/// Number of singular values above `tol · σ_max`.
pub fn rank<T: Real>(a: &CMat<T>, tol: T) -> usize {
    let s = singular_values(a);
    match s.first() {
        Some(&top) if top > T::zero() => s.iter().filter(|&&x| x > tol * top).count(),
        _ => 0,
    }
}

/// Rank of a real matrix, same relative criterion as [`rank`].
pub fn rank_real<T: Real>(a: &DMatrix<T>, tol: T) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = a.clone().singular_values();
    let top = s.iter().copied().fold(T::zero(), |m, x| m.max(x));
    if top <= T::zero() {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * top).count()
}

pub fn inverse<T: Real>(a: &CMat<T>) -> Result<CMat<T>> {
    a.clone().try_inverse().ok_or(Error::Singular)
}

/// Realignment between the Choi matrix and the superoperator of a map:
/// `out[(i,j),(k,l)] = m[(i,k),(j,l)]`. It is an involution.
pub fn reshuffle<T: Real>(m: &CMat<T>, d: usize) -> CMat<T> {
    let n = d * d;
    CMat::from_fn(n, n, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        m[(i * d + k, j * d + l)]
    })
}

/// Partial trace of an operator on `C^d ⊗ C^d`, keeping subsystem 1 or 2.
pub fn partial_trace<T: Real>(m: &CMat<T>, d: usize, keep_first: bool) -> CMat<T> {
    CMat::from_fn(d, d, |a, b| {
        let mut acc = C::new(T::zero(), T::zero());
        for k in 0..d {
            acc += if keep_first {
                m[(a * d + k, b * d + k)]
            } else {
                m[(k * d + a, k * d + b)]
            };
        }
        acc
    })
}

/// Real coordinates of a Hermitian matrix: diagonal, then `√2·Re`, `√2·Im`
/// of the strict upper triangle. Isometric for the Hilbert–Schmidt product.
pub fn hermitian_coords<T: Real>(a: &CMat<T>) -> Vec<T> {
    let d = a.nrows();
    let s2 = T::lit(std::f64::consts::SQRT_2);
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(a[(i, i)].re);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            out.push(a[(i, j)].re * s2);
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            out.push(a[(i, j)].im * s2);
        }
    }
    out
}

/// Stack coordinate vectors as the columns of a real matrix.
pub fn columns<T: Real>(cols: &[Vec<T>]) -> DMatrix<T> {
    let rows = cols.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: usize, f: impl Fn(usize, usize) -> (f64, f64)) -> CMat<f64> {
        CMat::from_fn(d, d, |i, j| {
            let (re, im) = f(i, j);
            C::new(re, im)
        })
    }

    #[test]
    fn vec_kron_identity() {
        let a = m(2, |i, j| (i as f64 + 1.0, j as f64 - 0.5));
        let b = m(2, |i, j| (j as f64 * 0.3, i as f64 + 2.0));
        let x = m(2, |i, j| ((i * 2 + j) as f64, -(j as f64)));
        let lhs = kron(&a, &b) * vec_rows(&x);
        let rhs = vec_rows(&(&a * &x * b.transpose()));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn swap_transposes() {
        let x = m(3, |i, j| (i as f64, j as f64 * 2.0));
        let y = swap::<f64>(3) * vec_rows(&x);
        assert_eq!(unvec(&y, 3), x.transpose());
    }

    #[test]
    fn reshuffle_is_involution() {
        let x = m(4, |i, j| ((i * 7 + j) as f64, (i as f64) - (j as f64)));
        assert_eq!(reshuffle(&reshuffle(&x, 2), 2), x);
    }

    #[test]
    fn eigh_sorted_descending() {
        let h = m(2, |i, j| if i == j { (i as f64, 0.0) } else { (0.0, 0.0) });
        let (vals, _) = eigh(&h);
        assert_eq!(vals, vec![1.0, 0.0]);
    }

    #[test]
    fn partial_traces_of_product() {
        let a = m(2, |i, j| if i == j { (0.25 + 0.5 * i as f64, 0.0) } else { (0.1, 0.0) });
        let b = m(2, |i, j| if i == j { (0.5, 0.0) } else { (0.0, 0.2 * (j as f64 - i as f64)) });
        let ab = kron(&a, &b);
        assert!(distance(&partial_trace(&ab, 2, true), &(&a * b.trace())) < 1e-12);
        assert!(distance(&partial_trace(&ab, 2, false), &(&b * a.trace())) < 1e-12);
    }
}
