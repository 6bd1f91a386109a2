#![allow(dead_code)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use symnorm::tensor::SymTensor;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn cgauss(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gauss(rng), gauss(rng))
}

/// Gaussian tensor, unit Hilbert-Schmidt norm.
pub fn random_tensor(rng: &mut ChaCha8Rng, n: usize, d: usize, real: bool) -> SymTensor {
    let z = SymTensor::zero(n, d).unwrap();
    let fj = z
        .weights()
        .iter()
        .map(|w| {
            let c = if real { Complex64::new(gauss(rng), 0.0) } else { cgauss(rng) };
            c / w.sqrt()
        })
        .collect();
    let t = SymTensor::from_fj_vec(n, d, fj).unwrap();
    let h = t.hs_norm();
    t.scale(Complex64::new(1.0 / h, 0.0))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| cgauss(rng)).collect()
}

pub fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let x = random_vector(rng, n);
    let r = symnorm::tensor::norm(&x);
    x.iter().map(|z| z / r).collect()
}

/// Haar-like unitary from Gram-Schmidt on a Gaussian matrix, rows returned.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Complex64>> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    while rows.len() < n {
        let mut v = random_vector(rng, n);
        for r in &rows {
            let ip: Complex64 = r.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ri) in v.iter_mut().zip(r) {
                *vi -= ip * ri;
            }
        }
        let nv = symnorm::tensor::norm(&v);
        if nv > 1e-6 {
            rows.push(v.iter().map(|z| z / nv).collect());
        }
    }
    rows
}
