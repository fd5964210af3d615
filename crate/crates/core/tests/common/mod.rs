#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use qlossless::{BitString, Ensemble, FockVector};
use rand::seq::SliceRandom;
use rand::Rng;

pub const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn fixture(name: &str) -> Ensemble {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    Ensemble::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn v(terms: &[(&str, f64)]) -> FockVector {
    FockVector::from_real(terms)
}

pub fn fig2() -> Ensemble {
    Ensemble::new(vec![
        (0.3, v(&[("00", 1.0)])),
        (0.3, v(&[("01", 1.0)])),
        (0.275, v(&[("00", H), ("01", H)])),
        (0.0625, v(&[("10", 1.0)])),
        (0.0625, v(&[("01", H), ("10", H)])),
    ])
    .unwrap()
}

pub fn e_noise(delta: f64) -> Ensemble {
    let (a, b) = ((1.0 - delta).sqrt(), delta.sqrt());
    Ensemble::new(vec![(0.5, v(&[("0", a), ("1", b)])), (0.5, v(&[("0", a), ("1", -b)]))]).unwrap()
}

pub fn classical() -> Ensemble {
    Ensemble::new(vec![
        (0.5, v(&[("00", 1.0)])),
        (0.25, v(&[("01", 1.0)])),
        (0.125, v(&[("10", 1.0)])),
        (0.125, v(&[("11", 1.0)])),
    ])
    .unwrap()
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_string(rng: &mut impl Rng, max_len: usize) -> BitString {
    let len = rng.gen_range(0..=max_len);
    BitString::from_value(rng.gen::<u64>(), len).unwrap()
}

/// A random ensemble of at most `max_states` states whose span has dimension at
/// most `max_span`, built from strings of length at most `max_len`.
///
/// Generators are random superpositions over a pool of distinct strings and each
/// state mixes a random subset of generators, so states often share subspaces.
pub fn random_ensemble(rng: &mut impl Rng, max_states: usize, max_span: usize, max_len: usize) -> Ensemble {
    let n_gen = rng.gen_range(1..=max_span);
    let mut pool: Vec<BitString> = Vec::new();
    while pool.len() < n_gen + 2 {
        let s = random_string(rng, max_len);
        if !pool.contains(&s) {
            pool.push(s);
        }
    }
    let generators: Vec<FockVector> = (0..n_gen)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let support: Vec<BitString> = pool.choose_multiple(rng, k).copied().collect();
            FockVector::from_terms(support.into_iter().map(|s| (s, random_complex(rng))))
        })
        .collect();
    let n_states = rng.gen_range(1..=max_states);
    let mut states = Vec::with_capacity(n_states);
    while states.len() < n_states {
        let k = rng.gen_range(1..=n_gen);
        let psi =
            generators.choose_multiple(rng, k).fold(FockVector::zero(), |acc, g| &acc + &g.scale(random_complex(rng)));
        // skip near-cancellations so states stay well conditioned
        if psi.norm() > 0.1 {
            states.push(psi.normalized().unwrap());
        }
    }
    let raw: Vec<f64> = (0..n_states).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    Ensemble::new(raw.iter().map(|w| w / total).zip(states).collect()).unwrap()
}

/// Haar-ish random unitary from the QR factorization of a complex Gaussian-like matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> nalgebra::DMatrix<Complex64> {
    let m = nalgebra::DMatrix::from_fn(n, n, |_, _| random_complex(rng));
    m.qr().q()
}
