//! Multi-start projected ascent of `|f|` on the unit sphere.
//!
//! Any unit vector bounds the spectral norm from below, so the best value found
//! certifies a computed norm from below. The complex iteration is
//! `x <- conj(F(x))/|F(x)|` with the phase of `x` chosen so that `f(x) >= 0`;
//! when a full step lowers `|f|` it is blended with the current point.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{Field, NormReport};
use crate::tensor::{norm, SymTensor};

const STOP: f64 = 1e-12;
const ALPHA_FLOOR: f64 = 1e-3;
const MAX_RESTARTS: usize = 8;
pub const CERTIFY_SLACK: f64 = 1e-8;
pub const HS_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    pub lower_bound: f64,
    pub witness: Vec<Complex64>,
    pub starts: usize,
    pub converged_fraction: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Gap { excess: f64 },
}

pub fn default_starts(n: usize, d: usize) -> usize {
    16 * n * d
}

fn normalize(x: &mut [Complex64]) -> bool {
    let r = norm(x);
    if !(r > 0.0) || !r.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|z| *z /= r);
    true
}

/// Rotates `x` so that `f(x)` is real and nonnegative; returns `|f(x)|`.
fn align(s: &SymTensor, x: &mut [Complex64], field: Field) -> f64 {
    let f = s.evaluate(x).expect("dimension checked");
    match field {
        Field::Complex => {
            if f.norm() > 0.0 {
                let zeta = Complex64::from_polar(1.0, -f.arg() / s.d() as f64);
                x.iter_mut().for_each(|z| *z *= zeta);
            }
        }
        Field::Real => {
            if f.re < 0.0 && s.d() % 2 == 1 {
                x.iter_mut().for_each(|z| *z = -*z);
            }
        }
    }
    f.norm()
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Vec<Complex64> {
    loop {
        let mut x: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = if field == Field::Complex { StandardNormal.sample(rng) } else { 0.0 };
                Complex64::new(re, im)
            })
            .collect();
        if normalize(&mut x) {
            return x;
        }
    }
}

/// Ascent direction: `conj(F(x))` over the complex field, `F(x)` over the reals.
fn step_target(s: &SymTensor, x: &[Complex64], field: Field) -> Option<Vec<Complex64>> {
    let fx = s.grad_map_f(x).expect("dimension checked");
    let mut y: Vec<Complex64> = match field {
        Field::Complex => fx.iter().map(|z| z.conj()).collect(),
        Field::Real => fx.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
    };
    normalize(&mut y).then_some(y)
}

struct Trajectory {
    value: f64,
    x: Vec<Complex64>,
    converged: bool,
}

fn trajectory(s: &SymTensor, field: Field, max_iters: usize, seed: u64, index: usize) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = s.n();
    let mut restarts = 0;
    let mut x = random_unit(&mut rng, n, field);
    let mut value = align(s, &mut x, field);
    let mut iter = 0;
    while iter < max_iters {
        iter += 1;
        let Some(y) = step_target(s, &x, field) else {
            if restarts == MAX_RESTARTS {
                break;
            }
            restarts += 1;
            x = random_unit(&mut rng, n, field);
            value = align(s, &mut x, field);
            continue;
        };
        let mut alpha = 1.0;
        let mut accepted = None;
        while alpha >= ALPHA_FLOOR {
            let mut cand: Vec<Complex64> = x.iter().zip(&y).map(|(a, b)| a * (1.0 - alpha) + b * alpha).collect();
            if normalize(&mut cand) {
                let v = align(s, &mut cand, field);
                if v >= value {
                    accepted = Some((cand, v));
                    break;
                }
            }
            alpha *= 0.5;
        }
        let Some((cand, v)) = accepted else {
            return Trajectory { value, x, converged: true };
        };
        let moved = cand.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let gain = v - value;
        x = cand;
        value = v;
        if gain < STOP && moved < 1e-9 {
            return Trajectory { value, x, converged: true };
        }
    }
    Trajectory { value, x, converged: false }
}

fn run(s: &SymTensor, field: Field, num_starts: usize, max_iters: usize, seed: u64) -> Result<OracleResult> {
    if s.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if field == Field::Real && !s.is_real() {
        return Err(Error::NotReal);
    }
    let starts = num_starts.max(1);
    let runs: Vec<Trajectory> = (0..starts).into_par_iter().map(|i| trajectory(s, field, max_iters, seed, i)).collect();
    let converged = runs.iter().filter(|t| t.converged).count();
    let mut best = 0;
    for (i, t) in runs.iter().enumerate() {
        if t.value > runs[best].value {
            best = i;
        }
    }
    let witness = runs[best].x.clone();
    let lower_bound = s.evaluate(&witness)?.norm();
    Ok(OracleResult { lower_bound, witness, starts, converged_fraction: converged as f64 / starts as f64 })
}

/// Complex-field ascent.
pub fn ascend(s: &SymTensor, num_starts: usize, max_iters: usize, seed: u64) -> Result<OracleResult> {
    run(s, Field::Complex, num_starts, max_iters, seed)
}

/// Real-field ascent over real unit vectors.
pub fn ascend_real(s: &SymTensor, num_starts: usize, max_iters: usize, seed: u64) -> Result<OracleResult> {
    run(s, Field::Real, num_starts, max_iters, seed)
}

pub fn ascend_field(s: &SymTensor, field: Field, num_starts: usize, max_iters: usize, seed: u64) -> Result<OracleResult> {
    run(s, field, num_starts, max_iters, seed)
}

/// Continues the ascent from a given unit vector.
pub fn polish(s: &SymTensor, field: Field, x: &[Complex64], max_iters: usize) -> (f64, Vec<Complex64>) {
    let mut x = x.to_vec();
    if !normalize(&mut x) {
        return (0.0, x);
    }
    let mut value = align(s, &mut x, field);
    for _ in 0..max_iters {
        let Some(y) = step_target(s, &x, field) else { break };
        let mut y = y;
        let v = align(s, &mut y, field);
        if v <= value {
            break;
        }
        value = v;
        x = y;
    }
    (value, x)
}

/// PASS when `oracle <= reported + 1e-8` and `reported <= hs + 1e-12`.
pub fn certify(report: &NormReport, oracle: &OracleResult) -> Verdict {
    certify_values(report.value, report.hs_norm, oracle.lower_bound)
}

pub fn certify_values(reported: f64, hs_norm: f64, lower_bound: f64) -> Verdict {
    let over_hs = reported - (hs_norm + HS_SLACK);
    let gap = lower_bound - (reported + CERTIFY_SLACK);
    if gap > 0.0 {
        Verdict::Gap { excess: lower_bound - reported }
    } else if over_hs > 0.0 {
        Verdict::Gap { excess: reported - hs_norm }
    } else {
        Verdict::Pass
    }
}

/// `|F(x) - lambda conj(x)|` with `lambda = |f(x)|` for a unit `x` with `f(x) >= 0`.
pub fn anti_eigen_residual(s: &SymTensor, x: &[Complex64]) -> f64 {
    let lambda = s.evaluate(x).expect("dimension checked").norm();
    let fx = s.grad_map_f(x).expect("dimension checked");
    fx.iter().zip(x).map(|(a, b)| (a - b.conj() * lambda).norm_sqr()).sum::<f64>().sqrt()
}
