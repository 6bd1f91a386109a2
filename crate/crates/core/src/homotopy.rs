//! Total-degree homotopy continuation for small square polynomial systems.
//!
//! Paths are tracked in projective coordinates `(X_0, X_1, ..., X_m)` on a
//! random affine patch, so paths heading to infinity stay bounded and are
//! recognized at the end by a vanishing `X_0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A multivariate polynomial as a list of `(exponents, coefficient)` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, Complex64)>,
    /// Degree used for homogenization when the top-degree terms vanish.
    pub nominal_degree: usize,
}

impl Polynomial {
    /// Merges repeated exponents and drops exact zeros.
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, Complex64)>) -> Self {
        let mut merged: Vec<(Vec<u32>, Complex64)> = Vec::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            match merged.iter_mut().find(|(f, _)| *f == e) {
                Some(slot) => slot.1 += c,
                None => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| *c != ZERO);
        Polynomial { nvars, terms: merged, nominal_degree: 0 }
    }

    /// Treats the polynomial as having degree at least `d`.
    pub fn with_nominal_degree(mut self, d: usize) -> Self {
        self.nominal_degree = d;
        self
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>() as usize).max().unwrap_or(0).max(self.nominal_degree)
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, xi)| acc * xi.powu(k)))
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct PolySystem {
    equations: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(equations: Vec<Polynomial>) -> Result<Self> {
        let m = equations.len();
        for eq in &equations {
            if eq.nvars != m {
                return Err(Error::DimensionMismatch { expected: m, got: eq.nvars });
            }
            if eq.degree() == 0 {
                return Err(Error::DegreeTooSmall(0));
            }
        }
        Ok(PolySystem { equations })
    }

    pub fn m(&self) -> usize {
        self.equations.len()
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.equations.iter().map(Polynomial::degree).collect()
    }

    /// Bezout number `prod d_i`.
    pub fn total_degree(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }
}

/// `max_i |g_i(x)| / (1 + scale(g_i))`.
pub fn residual(sys: &PolySystem, x: &[Complex64]) -> f64 {
    sys.equations.iter().map(|g| g.eval(x).norm() / (1.0 + g.scale())).fold(0.0, f64::max)
}

/// Residual with each equation further divided by `max(1, |x|)^{d_i}`.
pub fn scaled_residual(sys: &PolySystem, x: &[Complex64]) -> f64 {
    let r = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    sys.equations
        .iter()
        .map(|g| g.eval(x).norm() / ((1.0 + g.scale()) * r.powi(g.degree() as i32)))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    /// Acceptance threshold for `scaled_residual` of an endpoint.
    pub accept_residual: f64,
    pub corrector_tol: f64,
    pub max_corrector_steps: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub divergence_bound: f64,
    pub cluster_radius: f64,
    pub max_failure_rate: f64,
    pub max_paths: u128,
    pub max_vars: usize,
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            accept_residual: 1e-8,
            corrector_tol: 1e-10,
            max_corrector_steps: 3,
            initial_step: 0.05,
            min_step: 1e-7,
            max_step: 0.1,
            divergence_bound: 1e8,
            cluster_radius: 1e-6,
            max_failure_rate: 0.05,
            max_paths: 20_000,
            max_vars: 10,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionPoint {
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub multiplicity: usize,
    pub path_count: usize,
    /// Indices of the paths that ended here, ascending.
    pub paths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub points: Vec<SolutionPoint>,
    pub diverged_paths: usize,
    pub failed_paths: usize,
    pub tracked_paths: usize,
    pub total_degree: u128,
}

impl SolutionSet {
    pub fn found_with_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

/// Outcome of one path.
#[derive(Clone, Debug)]
pub enum PathEnd {
    Finite(Vec<Complex64>),
    Diverged,
    Failed,
}

/// Projective homotopy data shared by every path.
struct Tracker {
    m: usize,
    /// Homogenized target terms per equation over variables `(X_0..X_m)`.
    target: Vec<Vec<(Vec<u32>, Complex64)>>,
    degrees: Vec<u32>,
    gamma: Complex64,
    b: Vec<Complex64>,
    patch: Vec<Complex64>,
}

impl Tracker {
    fn new(sys: &PolySystem, rng: &mut ChaCha8Rng) -> Self {
        let m = sys.m();
        let degrees: Vec<u32> = sys.degrees().iter().map(|&d| d as u32).collect();
        let target = sys
            .equations
            .iter()
            .zip(&degrees)
            .map(|(eq, &d)| {
                eq.terms
                    .iter()
                    .map(|(e, c)| {
                        let mut h = Vec::with_capacity(m + 1);
                        h.push(d - e.iter().sum::<u32>());
                        h.extend_from_slice(e);
                        (h, *c)
                    })
                    .collect()
            })
            .collect();
        let unit = |rng: &mut ChaCha8Rng| Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
        let gamma = unit(rng);
        let b = (0..m).map(|_| unit(rng)).collect();
        let patch: Vec<Complex64> = (0..=m)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let pn = patch.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let patch = patch.iter().map(|z| z / pn).collect();
        Tracker { m, target, degrees, gamma, b, patch }
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        let maxd = *self.degrees.iter().max().unwrap_or(&1) as usize;
        x.iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(maxd + 1);
                let mut acc = ONE;
                for _ in 0..=maxd {
                    row.push(acc);
                    acc *= xi;
                }
                row
            })
            .collect()
    }

    /// Target values and Jacobian rows (homogenized).
    fn eval_target(&self, pw: &[Vec<Complex64>], val: &mut [Complex64], jac: &mut DMatrix<Complex64>) {
        let n = self.m + 1;
        for (i, terms) in self.target.iter().enumerate() {
            let mut v = ZERO;
            for j in 0..n {
                jac[(i, j)] = ZERO;
            }
            for (e, c) in terms {
                let mut mono = *c;
                for k in 0..n {
                    mono *= pw[k][e[k] as usize];
                }
                v += mono;
                for k in 0..n {
                    if e[k] == 0 {
                        continue;
                    }
                    let mut g = *c * e[k] as f64;
                    for l in 0..n {
                        let el = if l == k { e[l] - 1 } else { e[l] };
                        g *= pw[l][el as usize];
                    }
                    jac[(i, k)] += g;
                }
            }
            val[i] = v;
        }
    }

    /// Homotopy value `H(X,t)`, its X-Jacobian, and `dH/dt`, including the patch row.
    fn eval(&self, x: &[Complex64], t: f64) -> (DVector<Complex64>, DMatrix<Complex64>, DVector<Complex64>) {
        let m = self.m;
        let n = m + 1;
        let pw = self.powers(x);
        let mut tv = vec![ZERO; m];
        let mut tj = DMatrix::from_element(n, n, ZERO);
        self.eval_target(&pw, &mut tv, &mut tj);
        let mut h = DVector::from_element(n, ZERO);
        let mut jac = DMatrix::from_element(n, n, ZERO);
        let mut ht = DVector::from_element(n, ZERO);
        let s = 1.0 - t;
        for i in 0..m {
            let d = self.degrees[i] as usize;
            let xi = x[i + 1];
            let start = self.gamma * (pw[i + 1][d] - self.b[i] * pw[0][d]);
            h[i] = start * s + tv[i] * t;
            ht[i] = tv[i] - start;
            for k in 0..n {
                jac[(i, k)] = tj[(i, k)] * t;
            }
            let dd = d as f64;
            jac[(i, i + 1)] += self.gamma * dd * xi.powu(d as u32 - 1) * s;
            jac[(i, 0)] -= self.gamma * self.b[i] * dd * x[0].powu(d as u32 - 1) * s;
        }
        let mut p = -ONE;
        for k in 0..n {
            p += self.patch[k] * x[k];
            jac[(m, k)] = self.patch[k];
        }
        h[m] = p;
        (h, jac, ht)
    }

    fn start_point(&self, mut index: usize) -> Vec<Complex64> {
        let mut x = Vec::with_capacity(self.m + 1);
        x.push(ONE);
        for i in 0..self.m {
            let d = self.degrees[i] as usize;
            let k = index % d;
            index /= d;
            let root = Complex64::from_polar(1.0, (self.b[i].arg() + std::f64::consts::TAU * k as f64) / d as f64);
            x.push(root);
        }
        self.normalize(x)
    }

    fn normalize(&self, x: Vec<Complex64>) -> Vec<Complex64> {
        let s: Complex64 = self.patch.iter().zip(&x).map(|(a, b)| a * b).sum();
        x.iter().map(|z| z / s).collect()
    }

    fn tangent(&self, x: &[Complex64], t: f64) -> Option<DVector<Complex64>> {
        let (_, jac, ht) = self.eval(x, t);
        jac.lu().solve(&(-ht))
    }

    /// Newton at fixed `t`; returns the corrected point if the step size
    /// falls below `tol` within `max_steps` iterations.
    fn correct(&self, x: &[Complex64], t: f64, tol: f64, max_steps: usize) -> Option<Vec<Complex64>> {
        let mut x = x.to_vec();
        for _ in 0..max_steps {
            let (h, jac, _) = self.eval(&x, t);
            let dx = jac.lu().solve(&(-h))?;
            let xn = norm(&x);
            for (xi, di) in x.iter_mut().zip(dx.iter()) {
                *xi += di;
            }
            if dx.norm() <= tol * xn.max(1.0) {
                return Some(x);
            }
        }
        None
    }

    /// Damped Gauss-Newton at `t = 1` for endpoints where plain Newton stalls.
    fn polish_endpoint(&self, x: &[Complex64], iters: usize) -> Vec<Complex64> {
        let mut x = x.to_vec();
        let mut lambda = 1e-8;
        let mut best = self.eval(&x, 1.0).0.norm();
        for _ in 0..iters {
            let (h, jac, _) = self.eval(&x, 1.0);
            let jh = jac.adjoint();
            let mut a = &jh * &jac;
            for k in 0..a.nrows() {
                let diag = a[(k, k)].norm();
                a[(k, k)] += Complex64::new(lambda * (1.0 + diag), 0.0);
            }
            let Some(dx) = a.lu().solve(&(-(&jh * &h))) else { break };
            let cand: Vec<Complex64> = x.iter().zip(dx.iter()).map(|(a, b)| a + b).collect();
            let r = self.eval(&cand, 1.0).0.norm();
            if r < best {
                x = cand;
                best = r;
                lambda = (lambda * 0.1).max(1e-15);
                if dx.norm() <= 1e-15 * norm(&x) {
                    break;
                }
            } else {
                lambda *= 10.0;
                if lambda > 1e6 {
                    break;
                }
            }
        }
        x
    }

    fn track(&self, index: usize, opts: &SolveOptions) -> Option<Vec<Complex64>> {
        let mut x = self.start_point(index);
        let mut t = 0.0f64;
        let mut dt = opts.initial_step;
        let mut streak = 0usize;
        while t < 1.0 {
            let h = dt.min(1.0 - t);
            let accepted = self.tangent(&x, t).and_then(|v| {
                let pred: Vec<Complex64> = x.iter().zip(v.iter()).map(|(a, b)| a + b * h).collect();
                self.correct(&pred, t + h, opts.corrector_tol, opts.max_corrector_steps)
            });
            match accepted {
                Some(xn) => {
                    x = xn;
                    t = if h >= 1.0 - t { 1.0 } else { t + h };
                    streak += 1;
                    if streak >= 4 {
                        dt = (dt * 1.5).min(opts.max_step);
                        streak = 0;
                    }
                }
                None => {
                    dt *= 0.5;
                    streak = 0;
                    if dt < opts.min_step {
                        // Singular endpoints stall just short of t = 1.
                        if 1.0 - t < 1e-4 {
                            return Some(self.polish_endpoint(&x, 200));
                        }
                        return None;
                    }
                }
            }
        }
        let polished = self.correct(&x, 1.0, 1e-14, 20).unwrap_or(x);
        Some(self.polish_endpoint(&polished, 50))
    }
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Affine Newton refinement on the original system; keeps the best iterate.
pub fn refine(sys: &PolySystem, x: &[Complex64], iters: usize) -> Vec<Complex64> {
    let m = sys.m();
    let mut x = x.to_vec();
    let mut best = scaled_residual(sys, &x);
    for _ in 0..iters {
        let (val, jac) = eval_with_jacobian(sys, &x);
        let jh = jac.adjoint();
        let mut a = &jh * &jac;
        for k in 0..m {
            let diag = a[(k, k)].norm();
            a[(k, k)] += Complex64::new(1e-14 * (1.0 + diag), 0.0);
        }
        let Some(dx) = a.lu().solve(&(-(&jh * &val))) else { break };
        let cand: Vec<Complex64> = x.iter().zip(dx.iter()).map(|(a, b)| a + b).collect();
        let r = scaled_residual(sys, &cand);
        if r < best {
            best = r;
            x = cand;
        } else {
            break;
        }
    }
    x
}

/// Values and Jacobian of an affine system.
pub fn eval_with_jacobian(sys: &PolySystem, x: &[Complex64]) -> (DVector<Complex64>, DMatrix<Complex64>) {
    let m = sys.m();
    let mut val = DVector::from_element(m, ZERO);
    let mut jac = DMatrix::from_element(m, m, ZERO);
    for (i, eq) in sys.equations.iter().enumerate() {
        for (e, c) in &eq.terms {
            let mut mono = *c;
            for (k, &ek) in e.iter().enumerate() {
                mono *= x[k].powu(ek);
            }
            val[i] += mono;
            for k in 0..m {
                if e[k] == 0 {
                    continue;
                }
                let mut g = *c * e[k] as f64;
                for (l, &el) in e.iter().enumerate() {
                    g *= x[l].powu(if l == k { el - 1 } else { el });
                }
                jac[(i, k)] += g;
            }
        }
    }
    (val, jac)
}

/// Tracks every path of the total-degree homotopy and returns raw endpoints in path order.
pub fn track_all(sys: &PolySystem, opts: &SolveOptions) -> Result<Vec<PathEnd>> {
    let m = sys.m();
    if m == 0 || m > opts.max_vars {
        return Err(Error::SystemTooLarge(format!("{m} variables (limit {})", opts.max_vars)));
    }
    let total = sys.total_degree();
    if total > opts.max_paths {
        return Err(Error::SystemTooLarge(format!("{total} paths (limit {})", opts.max_paths)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tracker = Tracker::new(sys, &mut rng);
    let run = |i: usize| -> PathEnd {
        let Some(xh) = tracker.track(i, opts) else { return PathEnd::Failed };
        let x0 = xh[0];
        let tail = norm(&xh[1..]);
        if x0.norm() * opts.divergence_bound < tail || x0 == ZERO {
            return PathEnd::Diverged;
        }
        let x: Vec<Complex64> = xh[1..].iter().map(|z| z / x0).collect();
        let x = refine(sys, &x, 8);
        if scaled_residual(sys, &x) <= opts.accept_residual {
            PathEnd::Finite(x)
        } else if norm(&x) > opts.divergence_bound.sqrt() {
            PathEnd::Diverged
        } else {
            PathEnd::Failed
        }
    };
    let ends: Vec<PathEnd> = if opts.parallel {
        (0..total as usize).into_par_iter().map(run).collect()
    } else {
        (0..total as usize).map(run).collect()
    };
    Ok(ends)
}

/// Merges finite endpoints that agree within the cluster radius.
pub fn cluster_endpoints(sys: &PolySystem, ends: &[PathEnd], opts: &SolveOptions) -> SolutionSet {
    let mut points: Vec<SolutionPoint> = Vec::new();
    let mut diverged = 0;
    let mut failed = 0;
    for (i, end) in ends.iter().enumerate() {
        match end {
            PathEnd::Diverged => diverged += 1,
            PathEnd::Failed => failed += 1,
            PathEnd::Finite(x) => {
                let r = opts.cluster_radius * (1.0 + norm(x));
                let hit = points.iter_mut().find(|p| {
                    p.x.iter().zip(x).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt() <= r
                });
                match hit {
                    Some(p) => {
                        p.multiplicity += 1;
                        p.path_count += 1;
                        p.paths.push(i);
                    }
                    None => points.push(SolutionPoint {
                        residual: residual(sys, x),
                        x: x.clone(),
                        multiplicity: 1,
                        path_count: 1,
                        paths: vec![i],
                    }),
                }
            }
        }
    }
    SolutionSet {
        points,
        diverged_paths: diverged,
        failed_paths: failed,
        tracked_paths: ends.len(),
        total_degree: sys.total_degree(),
    }
}

/// Solves `sys` by total-degree homotopy. A failure rate above
/// `opts.max_failure_rate` yields `TrackingUnreliable` carrying the partial set.
pub fn solve_total_degree(sys: &PolySystem, opts: &SolveOptions) -> Result<SolutionSet> {
    let ends = track_all(sys, opts)?;
    let set = cluster_endpoints(sys, &ends, opts);
    if set.failed_paths as f64 > opts.max_failure_rate * set.tracked_paths as f64 {
        return Err(Error::TrackingUnreliable {
            failed: set.failed_paths,
            total: set.tracked_paths,
            partial: Box::new(set),
        });
    }
    Ok(set)
}
