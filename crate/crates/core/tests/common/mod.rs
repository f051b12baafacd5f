#![allow(dead_code)]

use opgns::{CMat, HermitianOperator, QuantumMap, C};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mat(d: usize, entries: &[(f64, f64)]) -> CMat<f64> {
    CMat::from_fn(d, d, |i, j| {
        let (re, im) = entries[i * d + j];
        C::new(re, im)
    })
}

pub fn sx() -> CMat<f64> {
    mat(2, &[(0., 0.), (1., 0.), (1., 0.), (0., 0.)])
}

pub fn sy() -> CMat<f64> {
    mat(2, &[(0., 0.), (0., -1.), (0., 1.), (0., 0.)])
}

pub fn sz() -> CMat<f64> {
    mat(2, &[(1., 0.), (0., 0.), (0., 0.), (-1., 0.)])
}

pub fn herm(m: CMat<f64>) -> HermitianOperator<f64> {
    HermitianOperator::new(m).expect("Hermitian")
}

pub fn dist(a: &CMat<f64>, b: &CMat<f64>) -> f64 {
    (a - b).norm()
}

pub fn same_map(a: &QuantumMap<f64>, b: &QuantumMap<f64>) -> f64 {
    a.superop().distance(&b.superop())
}
