use std::fmt::{Debug, Display};

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar the whole library is generic over.
///
/// Every algorithm here needs square roots and Hermitian eigensolvers, so
/// the bound is a floating-point field rather than an arbitrary ring.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Display + Debug + Send + Sync + 'static
{
    /// Default numerical tolerances for this precision.
    fn default_tolerances() -> Tolerances<Self>;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tolerances() -> Tolerances<f64> {
        Tolerances {
            herm: 1e-10,
            orth: 1e-10,
            psd: 1e-9,
            rank: 1e-9,
            num: 1e-9,
        }
    }
}

impl Real for f32 {
    fn default_tolerances() -> Tolerances<f32> {
        Tolerances {
            herm: 1e-5,
            orth: 1e-5,
            psd: 1e-4,
            rank: 1e-4,
            num: 1e-4,
        }
    }
}

/// Thresholds used by validation and rank decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Hermiticity residual, relative to the Frobenius norm.
    pub herm: T,
    /// Hilbert–Schmidt orthonormality residual.
    pub orth: T,
    /// Allowed negative eigenvalue, relative to the spectral radius.
    pub psd: T,
    /// Relative eigenvalue / singular value cut for rank decisions.
    pub rank: T,
    /// Generic equality tolerance for derived identities.
    pub num: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        T::default_tolerances()
    }
}

impl<T: Real> Tolerances<T> {
    pub fn with_num(mut self, num: T) -> Self {
        self.num = num;
        self
    }
}

/// Complex number over the library scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// Modulus `|z|`.
#[inline]
pub fn modulus<T: Real>(z: C<T>) -> T {
    z.norm_sqr().sqrt()
}
