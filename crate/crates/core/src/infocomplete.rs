//! Observables, informational completeness, the coarse-graining induction
//! building a minimal informationally complete observable, and the
//! dimension counts of single and bipartite systems.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::operators::{Effect, HermitianOperator};
use crate::scalar::{c, cr, Real, Tolerances};

/// A complete set of effects, `Σ_i l_i = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable<T: Real> {
    dim: usize,
    effects: Vec<Effect<T>>,
}

impl<T: Real> Observable<T> {
    pub fn new(effects: Vec<Effect<T>>) -> Result<Self> {
        Self::new_with_tol(effects, &T::default_tolerances())
    }

    pub fn new_with_tol(effects: Vec<Effect<T>>, tol: &Tolerances<T>) -> Result<Self> {
        let dim = effects
            .first()
            .map(Effect::dim)
            .ok_or_else(|| Error::InvalidObservable("no effects".into()))?;
        if let Some(e) = effects.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: e.dim(),
            });
        }
        let obs = Self { dim, effects };
        let r = obs.completeness_residual();
        if r > tol.num {
            return Err(Error::InvalidObservable(format!(
                "effects sum to I only within {r}"
            )));
        }
        Ok(obs)
    }

    /// Builds an observable from Hermitian matrices, validating each effect.
    pub fn from_operators(ops: Vec<HermitianOperator<T>>) -> Result<Self> {
        let effects = ops.into_iter().map(Effect::new).collect::<Result<Vec<_>>>()?;
        Self::new(effects)
    }

    /// Projective measurement onto an orthonormal basis given as columns.
    pub fn projective(basis: &CMat<T>) -> Result<Self> {
        let d = basis.nrows();
        let ops = (0..basis.ncols())
            .map(|k| {
                let v: Vec<_> = basis.column(k).iter().copied().collect();
                HermitianOperator::projector(&v)
            })
            .collect();
        let obs = Self::from_operators(ops)?;
        debug_assert_eq!(obs.dim, d);
        Ok(obs)
    }

    /// The uninformative observable `{I}`.
    pub fn trivial(d: usize) -> Self {
        Self {
            dim: d,
            effects: vec![Effect::new(HermitianOperator::identity(d)).expect("identity is an effect")],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[Effect<T>] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn operators(&self) -> Vec<HermitianOperator<T>> {
        self.effects.iter().map(|e| e.op().clone()).collect()
    }

    /// `‖Σ_i l_i − I‖_F`.
    pub fn completeness_residual(&self) -> T {
        let mut acc = linalg::zeros::<T>(self.dim);
        for e in &self.effects {
            acc += e.matrix();
        }
        linalg::distance(&acc, &linalg::identity(self.dim))
    }
}

/// Rank of the real span of Hermitian operators inside the `d²`-dimensional
/// real space of Hermitian matrices.
pub fn span_rank<T: Real>(effects: &[HermitianOperator<T>]) -> usize {
    span_rank_with(effects, &T::default_tolerances())
}

pub fn span_rank_with<T: Real>(effects: &[HermitianOperator<T>], tol: &Tolerances<T>) -> usize {
    let cols: Vec<Vec<T>> = effects
        .iter()
        .map(|e| linalg::hermitian_coords(e.matrix()))
        .collect();
    linalg::rank_real(&linalg::columns(&cols), tol.rank)
}

pub fn is_infocomplete<T: Real>(obs: &Observable<T>) -> bool {
    span_rank(&obs.operators()) == obs.dim * obs.dim
}

pub fn is_minimal<T: Real>(obs: &Observable<T>) -> bool {
    is_infocomplete(obs) && obs.len() == obs.dim * obs.dim
}

const FULL_PARTITION_LIMIT: usize = 6;

/// Two-outcome observables `{x, I−x}` obtained by summing effects.
///
/// Up to six outcomes every bipartition is listed once, as the subsets `x`
/// not containing the last effect in increasing bitmask order; beyond that
/// only singleton-versus-rest partitions.
pub fn binary_coarse_grainings<T: Real>(obs: &Observable<T>) -> Vec<Observable<T>> {
    let n = obs.len();
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![obs.clone()];
    }
    let sum = |pick: &dyn Fn(usize) -> bool| {
        let mut acc = linalg::zeros::<T>(obs.dim);
        for (i, e) in obs.effects.iter().enumerate() {
            if pick(i) {
                acc += e.matrix();
            }
        }
        Effect::new(HermitianOperator::from_hermitian_part(&acc)).expect("partial sums of effects are effects")
    };
    let pair = |x: Effect<T>, y: Effect<T>| Observable {
        dim: obs.dim,
        effects: vec![x, y],
    };
    if n <= FULL_PARTITION_LIMIT {
        (1usize..(1 << (n - 1)))
            .map(|mask| pair(sum(&|i| mask >> i & 1 == 1), sum(&|i| mask >> i & 1 == 0)))
            .collect()
    } else {
        (0..n)
            .map(|k| pair(sum(&|i| i == k), sum(&|i| i != k)))
            .collect()
    }
}

/// Output of [`build_infocomplete`].
#[derive(Clone, Debug, PartialEq)]
pub struct InfoCompleteBuild<T: Real> {
    pub observable: Observable<T>,
    /// Span rank of the starting observable and after each merge.
    pub rank_trace: Vec<usize>,
    /// The starting observable and the result of each merge.
    pub steps: Vec<Observable<T>>,
}

/// Grows an observable by merging binary coarse-grainings of pool members.
///
/// Starts from the pool observable of largest span rank (or `{I}` if its
/// effects are linearly dependent). Whenever a coarse-graining `{x, y}` has
/// `x` outside the current span, `E = {l_1,…,l_n}` is replaced by
/// `{½y, ½(l_1+x), ½l_2, …, ½l_n}`, which spans one more dimension.
pub fn build_infocomplete<T: Real>(pool: &[Observable<T>]) -> Result<InfoCompleteBuild<T>> {
    build_infocomplete_with(pool, &T::default_tolerances())
}

pub fn build_infocomplete_with<T: Real>(
    pool: &[Observable<T>],
    tol: &Tolerances<T>,
) -> Result<InfoCompleteBuild<T>> {
    let first = pool.first().ok_or(Error::EmptyPool)?;
    let d = first.dim;
    if let Some(o) = pool.iter().find(|o| o.dim != d) {
        return Err(Error::PoolDimensionMismatch {
            expected: d,
            found: o.dim,
        });
    }
    let all: Vec<HermitianOperator<T>> = pool.iter().flat_map(Observable::operators).collect();
    let target = span_rank_with(&all, tol);

    let ranks: Vec<usize> = pool.iter().map(|o| span_rank_with(&o.operators(), tol)).collect();
    let best = ranks
        .iter()
        .enumerate()
        .fold(0, |b, (i, &r)| if r > ranks[b] { i } else { b });
    let mut current = if ranks[best] == pool[best].len() {
        pool[best].clone()
    } else {
        Observable::trivial(d)
    };
    let mut rank = span_rank_with(&current.operators(), tol);
    let mut rank_trace = vec![rank];
    let mut steps = vec![current.clone()];

    let half = cr(T::lit(0.5));
    'pool: for obs in pool {
        for bin in binary_coarse_grainings(obs) {
            if rank >= target {
                break 'pool;
            }
            let x = bin.effects[0].op().clone();
            let y = bin.effects[1].op().clone();
            let mut with_x = current.operators();
            with_x.push(x.clone());
            if span_rank_with(&with_x, tol) <= rank {
                continue;
            }
            let mut with_y = current.operators();
            with_y.push(y.clone());
            assert!(
                span_rank_with(&with_y, tol) > rank,
                "complement of a new effect must also be new"
            );
            let mut merged = Vec::with_capacity(current.len() + 1);
            merged.push(y.matrix() * half);
            for (i, l) in current.effects.iter().enumerate() {
                if i == 0 {
                    merged.push((l.matrix() + x.matrix()) * half);
                } else {
                    merged.push(l.matrix() * half);
                }
            }
            let ops = merged
                .iter()
                .map(HermitianOperator::from_hermitian_part)
                .collect();
            current = Observable::from_operators(ops)?;
            rank = span_rank_with(&current.operators(), tol);
            rank_trace.push(rank);
            steps.push(current.clone());
        }
    }
    Ok(InfoCompleteBuild {
        observable: current,
        rank_trace,
        steps,
    })
}

/// Dimension counts for a quantum system of dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub d: usize,
    /// Rank of single-system effects, `d²`.
    pub dim_p: usize,
    /// Affine dimension of single-system states, `d² − 1`.
    pub dim_s: usize,
    /// Rank of product effects of the bipartite system.
    pub bipartite: usize,
    /// Affine dimension of bipartite states spanned by product states.
    pub dim_s2: usize,
    /// Rank of the transformations spanned by measure-and-prepare maps.
    pub dim_t: usize,
    pub identity_holds: bool,
}

/// Informationally complete family of `d²` pure-state projectors:
/// `|k⟩`, `(|k⟩+|l⟩)/√2` and `(|k⟩+i|l⟩)/√2`.
pub fn pure_state_family<T: Real>(d: usize) -> Vec<HermitianOperator<T>> {
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let zero = cr(T::zero());
    let mut out = Vec::with_capacity(d * d);
    for k in 0..d {
        let mut v = vec![zero; d];
        v[k] = cr(T::one());
        out.push(HermitianOperator::projector(&v));
    }
    for (phase_re, phase_im) in [(T::one(), T::zero()), (T::zero(), T::one())] {
        for k in 0..d {
            for l in (k + 1)..d {
                let mut v = vec![zero; d];
                v[k] = cr(h);
                v[l] = c(phase_re * h, phase_im * h);
                out.push(HermitianOperator::projector(&v));
            }
        }
    }
    out
}

pub fn dimension_check<T: Real>(d: usize) -> Result<DimensionReport> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let tol = T::default_tolerances();
    let single = pure_state_family::<T>(d);
    let coords = |ops: &[CMat<T>]| {
        let cols: Vec<Vec<T>> = ops.iter().map(linalg::hermitian_coords).collect();
        linalg::rank_real(&linalg::columns(&cols), tol.rank)
    };
    let mats: Vec<CMat<T>> = single.iter().map(|p| p.matrix().clone()).collect();
    let dim_p = coords(&mats);
    let diffs: Vec<CMat<T>> = mats.iter().skip(1).map(|m| m - &mats[0]).collect();
    let dim_s = coords(&diffs);

    let mut products = Vec::with_capacity(mats.len() * mats.len());
    let mut measure_prepare = Vec::with_capacity(mats.len() * mats.len());
    for a in &mats {
        for b in &mats {
            products.push(linalg::kron(a, b));
            measure_prepare.push(linalg::kron(b, &a.transpose()));
        }
    }
    let bipartite = coords(&products);
    let prod_diffs: Vec<CMat<T>> = products.iter().skip(1).map(|m| m - &products[0]).collect();
    let dim_s2 = coords(&prod_diffs);
    let dim_t = coords(&measure_prepare);

    let identity_holds =
        bipartite == dim_p * dim_p && dim_s2 + 1 == (dim_s + 1) * (dim_s + 1) && dim_t == dim_p * dim_p;
    Ok(DimensionReport {
        d,
        dim_p,
        dim_s,
        bipartite,
        dim_s2,
        dim_t,
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_outcomes_give_three_binaries() {
        let d = 3;
        let obs = Observable::<f64>::projective(&linalg::identity(d)).unwrap();
        assert_eq!(binary_coarse_grainings(&obs).len(), 3);
    }

    #[test]
    fn trivial_pool_returns_identity() {
        let b = build_infocomplete(&[Observable::<f64>::trivial(2)]).unwrap();
        assert_eq!(b.rank_trace, vec![1]);
        assert_eq!(b.observable.len(), 1);
    }

    #[test]
    fn qubit_dimensions() {
        let r = dimension_check::<f64>(2).unwrap();
        assert_eq!((r.dim_p, r.dim_s, r.bipartite, r.dim_t), (4, 3, 16, 16));
        assert!(r.identity_holds);
    }
}
