//! Spectral norms from the fixed points of `F = (1/d) grad f` and `H = conj(F(conj(F(x))))`.
//!
//! Every nonzero fixed point `x` gives the candidate `|f(x)|/|x|^d`; the largest one
//! over `fix(H)` is the complex norm and over the real points of `fix(F)` (plus the
//! `e^{-i pi/(d-2)}`-twisted ones for even `d`) the real norm.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::homotopy::{self, PolySystem, Polynomial, SolutionSet, SolveOptions};
use crate::report::{Diagnostics, Field, Method, NormReport};
use crate::tensor::{norm, SymTensor};

const REAL_TOL: f64 = 1e-7;
const ANTIFIX_TOL: f64 = 1e-6;
const RADIUS_SLACK: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct FixedPointOptions {
    pub solve: SolveOptions,
    /// Re-solve singular tensors after a small random real perturbation.
    pub perturb_singular: bool,
    /// Perturbation size relative to the Hilbert-Schmidt norm.
    pub perturbation: f64,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions { solve: SolveOptions::default(), perturb_singular: true, perturbation: 1e-3 }
    }
}

#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub x: Vec<Complex64>,
    pub multiplicity: usize,
    pub residual: f64,
    pub real: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub expected: u128,
    pub found: usize,
    pub diverged: usize,
    pub failed: usize,
}

#[derive(Clone, Debug)]
pub struct FixedPointInventory {
    pub field: Field,
    pub points: Vec<FixedPoint>,
    pub counts: Counts,
    /// Indices into `points` with `F(x) = conj(x)` within tolerance.
    pub antifix_subset: Vec<usize>,
    /// Whether tracking stayed under the failure threshold.
    pub reliable: bool,
}

impl FixedPointInventory {
    /// Real points counted with multiplicity.
    pub fn real_count(&self) -> usize {
        self.points.iter().filter(|p| p.real).map(|p| p.multiplicity).sum()
    }

    pub fn origin_multiplicity(&self, radius: f64) -> usize {
        self.points.iter().filter(|p| norm(&p.x) < radius).map(|p| p.multiplicity).sum()
    }

    /// Anti-eigenvalue classes `|afix \ {0}| / d`, counting points outside `radius`.
    pub fn anti_eigen_count(&self, d: usize, radius: f64) -> f64 {
        let nonzero: usize = self.antifix_subset.iter().filter(|&&i| norm(&self.points[i].x) >= radius).map(|&i| self.points[i].multiplicity).sum();
        nonzero as f64 / d as f64
    }
}

fn is_real_vec(x: &[Complex64]) -> bool {
    let tol = REAL_TOL * (1.0 + norm(x));
    x.iter().all(|z| z.im.abs() <= tol)
}

/// Polynomials `F_i` over `n` variables, optionally with conjugated coefficients.
fn gradient_polys(s: &SymTensor, nvars: usize, offset: usize, conj: bool) -> Vec<Vec<(Vec<u32>, Complex64)>> {
    let n = s.n();
    let d = s.d() as f64;
    let a = s.monomial_coeffs();
    (0..n)
        .map(|i| {
            s.indices()
                .iter()
                .zip(&a)
                .filter(|(j, c)| j.j[i] > 0 && c.norm() > 0.0)
                .map(|(j, c)| {
                    let mut e = vec![0u32; nvars];
                    for k in 0..n {
                        e[offset + k] = j.j[k] - u32::from(k == i);
                    }
                    let c = c * (j.j[i] as f64 / d);
                    (e, if conj { c.conj() } else { c })
                })
                .collect()
        })
        .collect()
}

fn unit(nvars: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0u32; nvars];
    e[k] = 1;
    e
}

/// `F(x) - x = 0`, `n` equations of degree `d-1`.
pub fn fix_f_system(s: &SymTensor) -> Result<PolySystem> {
    if s.d() < 3 {
        return Err(Error::DegreeTooSmall(s.d()));
    }
    let n = s.n();
    let eqs = gradient_polys(s, n, 0, false)
        .into_iter()
        .enumerate()
        .map(|(i, mut terms)| {
            terms.push((unit(n, i), Complex64::new(-1.0, 0.0)));
            Polynomial::new(n, terms).with_nominal_degree(s.d() - 1)
        })
        .collect();
    PolySystem::new(eqs)
}

/// `F(x) - y = 0, conj(F)(y) - x = 0` in the `2n` variables `(x, y)`.
pub fn fix_h_system(s: &SymTensor) -> Result<PolySystem> {
    if s.d() < 3 {
        return Err(Error::DegreeTooSmall(s.d()));
    }
    let n = s.n();
    let m = 2 * n;
    let mut eqs = Vec::with_capacity(m);
    for (i, mut terms) in gradient_polys(s, m, 0, false).into_iter().enumerate() {
        terms.push((unit(m, n + i), Complex64::new(-1.0, 0.0)));
        eqs.push(Polynomial::new(m, terms).with_nominal_degree(s.d() - 1));
    }
    for (i, mut terms) in gradient_polys(s, m, n, true).into_iter().enumerate() {
        terms.push((unit(m, i), Complex64::new(-1.0, 0.0)));
        eqs.push(Polynomial::new(m, terms).with_nominal_degree(s.d() - 1));
    }
    PolySystem::new(eqs)
}

fn solve_allowing_partial(sys: &PolySystem, opts: &SolveOptions) -> Result<(SolutionSet, bool)> {
    match homotopy::solve_total_degree(sys, opts) {
        Ok(set) => Ok((set, true)),
        Err(Error::TrackingUnreliable { partial, .. }) => Ok((*partial, false)),
        Err(e) => Err(e),
    }
}

fn inventory(s: &SymTensor, field: Field, set: &SolutionSet, reliable: bool) -> FixedPointInventory {
    let n = s.n();
    let points: Vec<FixedPoint> = set
        .points
        .iter()
        .map(|p| {
            let x = p.x[..n].to_vec();
            FixedPoint { real: is_real_vec(&x), x, multiplicity: p.multiplicity, residual: p.residual }
        })
        .collect();
    let antifix_subset = points
        .iter()
        .enumerate()
        .filter(|(_, p)| is_antifixed(s, &p.x))
        .map(|(i, _)| i)
        .collect();
    FixedPointInventory {
        field,
        points,
        counts: Counts {
            expected: set.total_degree,
            found: set.found_with_multiplicity(),
            diverged: set.diverged_paths,
            failed: set.failed_paths,
        },
        antifix_subset,
        reliable,
    }
}

fn is_antifixed(s: &SymTensor, x: &[Complex64]) -> bool {
    let fx = s.grad_map_f(x).expect("dimension checked");
    let gap = fx.iter().zip(x).map(|(a, b)| (a - b.conj()).norm_sqr()).sum::<f64>().sqrt();
    gap <= ANTIFIX_TOL * (1.0 + norm(x)).powi(s.d() as i32 - 1)
}

/// Solutions of `F(x) = x`.
pub fn fix_f_points(s: &SymTensor, opts: &SolveOptions) -> Result<FixedPointInventory> {
    let sys = fix_f_system(s)?;
    let (set, reliable) = solve_allowing_partial(&sys, opts)?;
    Ok(inventory(s, Field::Real, &set, reliable))
}

/// `x`-parts of the solutions of the `H` system.
pub fn fix_h_points(s: &SymTensor, opts: &SolveOptions) -> Result<FixedPointInventory> {
    let sys = fix_h_system(s)?;
    let (set, reliable) = solve_allowing_partial(&sys, opts)?;
    Ok(inventory(s, Field::Complex, &set, reliable))
}

/// Anti-fixed points `F(x) = conj(x)` among the fixed points of `H`.
pub fn antifixed_points(s: &SymTensor, opts: &SolveOptions) -> Result<FixedPointInventory> {
    let inv = fix_h_points(s, opts)?;
    Ok(FixedPointInventory { field: Field::Complex, ..inv })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub diverged_paths: usize,
    pub failed_paths: usize,
    pub singular: bool,
}

/// Paths of the `F` system that escape to infinity signal a singular tensor.
pub fn singularity_diagnostic(s: &SymTensor, opts: &SolveOptions) -> Result<SingularityReport> {
    let inv = fix_f_points(s, opts)?;
    Ok(SingularityReport {
        diverged_paths: inv.counts.diverged,
        failed_paths: inv.counts.failed,
        singular: inv.counts.diverged > 0,
    })
}

/// Deterministic random real tensor of unit Hilbert-Schmidt norm.
pub fn random_real_tensor(n: usize, d: usize, seed: u64) -> Result<SymTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_7e45);
    let zero = SymTensor::zero(n, d)?;
    let fj: Vec<Complex64> = zero
        .weights()
        .iter()
        .map(|w| {
            let g: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(g / w.sqrt(), 0.0)
        })
        .collect();
    let t = SymTensor::from_fj_vec(n, d, fj)?;
    let h = t.hs_norm();
    Ok(t.scale(Complex64::new(1.0 / h, 0.0)))
}

struct Candidate {
    value: f64,
    x: Vec<Complex64>,
}

/// Best `|f(x)|/|x|^d` over candidates outside the origin-exclusion radius.
fn best_candidate(s: &SymTensor, xs: impl IntoIterator<Item = Vec<Complex64>>, min_radius: f64, mismatches: &mut usize) -> Option<Candidate> {
    let d = s.d() as i32;
    let mut best: Option<Candidate> = None;
    let mut cands = Vec::new();
    for x in xs {
        let r = norm(&x);
        if !(r >= min_radius) || !r.is_finite() {
            continue;
        }
        let value = s.evaluate(&x).expect("dimension checked").norm() / r.powi(d);
        cands.push((r, value));
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(Candidate { value, x });
        }
    }
    if let Some(b) = &best {
        *mismatches = cands.iter().filter(|(r, _)| r.powi(2 - d) > b.value + RADIUS_SLACK).count();
    }
    best
}

/// Unit witness with `f(w)` real and nonnegative.
fn unit_witness(s: &SymTensor, x: &[Complex64]) -> Vec<Complex64> {
    let r = norm(x);
    let w: Vec<Complex64> = x.iter().map(|z| z / r).collect();
    let fw = s.evaluate(&w).expect("dimension checked");
    if fw.norm() == 0.0 {
        return w;
    }
    let zeta = Complex64::from_polar(1.0, -fw.arg() / s.d() as f64);
    w.iter().map(|z| z * zeta).collect()
}

pub fn exclusion_radius(s: &SymTensor) -> f64 {
    s.hs_norm().powf(-1.0 / (s.d() as f64 - 2.0)) * (1.0 - 1e-6)
}

fn check_input(s: &SymTensor) -> Result<()> {
    if s.is_zero() {
        return Err(Error::ZeroTensor);
    }
    if s.d() < 3 {
        return Err(Error::DegreeTooSmall(s.d()));
    }
    Ok(())
}

/// Candidate points and solver counts for one field.
struct Pass {
    candidates: Vec<Vec<Complex64>>,
    inv: FixedPointInventory,
    residual: f64,
}

fn real_candidates<'a>(xs: impl IntoIterator<Item = &'a Vec<Complex64>>, d: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    let twist = Complex64::from_polar(1.0, -std::f64::consts::PI / (d as f64 - 2.0));
    let real_part = |v: &[Complex64]| v.iter().map(|z| Complex64::new(z.re, 0.0)).collect();
    for x in xs {
        if is_real_vec(x) {
            out.push(real_part(x));
        }
        if d % 2 == 0 {
            let y: Vec<Complex64> = x.iter().map(|z| z * twist).collect();
            if is_real_vec(&y) {
                out.push(real_part(&y));
            }
        }
    }
    out
}

fn run_pass(s: &SymTensor, field: Field, opts: &SolveOptions) -> Result<Pass> {
    let inv = match field {
        Field::Real => fix_f_points(s, opts)?,
        Field::Complex => fix_h_points(s, opts)?,
    };
    let candidates = match field {
        Field::Real => real_candidates(inv.points.iter().map(|p| &p.x), s.d()),
        Field::Complex => inv.points.iter().map(|p| p.x.clone()).collect(),
    };
    let residual = inv.points.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(Pass { candidates, inv, residual })
}

/// Fixed points of a perturbed tensor pulled back onto the original system.
fn perturbed_candidates(s: &SymTensor, field: Field, opts: &FixedPointOptions) -> Result<(Vec<Vec<Complex64>>, f64)> {
    let t = random_real_tensor(s.n(), s.d(), opts.solve.seed)?;
    let mut eps = opts.perturbation * s.hs_norm();
    let (sp, pass) = loop {
        let sp = s.combine(Complex64::new(1.0, 0.0), &t, Complex64::new(eps, 0.0))?;
        let pass = run_pass(&sp, field, &opts.solve)?;
        let lost = pass.inv.counts.failed + pass.inv.counts.diverged;
        if lost == 0 || eps >= 0.1 * s.hs_norm() {
            break (sp, pass);
        }
        eps *= 10.0;
    };
    let n = s.n();
    let mut out = pass.candidates;
    match field {
        Field::Real => {
            let sys = fix_f_system(s)?;
            let refined: Vec<Vec<Complex64>> = pass.inv.points.iter().map(|p| homotopy::refine(&sys, &p.x, 30)).collect();
            out.extend(real_candidates(&refined, s.d()));
        }
        Field::Complex => {
            let sys = fix_h_system(s)?;
            for p in &pass.inv.points {
                let mut xy = p.x.clone();
                xy.extend(sp.grad_map_f(&p.x)?);
                out.push(homotopy::refine(&sys, &xy, 30)[..n].to_vec());
            }
        }
    }
    Ok((out, eps))
}

fn norm_by_fixed_points(s: &SymTensor, field: Field, opts: &FixedPointOptions) -> Result<NormReport> {
    check_input(s)?;
    if field == Field::Real && !s.is_real() {
        return Err(Error::NotReal);
    }
    let pass = run_pass(s, field, &opts.solve)?;
    let counts = pass.inv.counts;
    let singular = counts.diverged > 0 || counts.failed > 0;
    let mut candidates = pass.candidates;
    let mut method = match field {
        Field::Real => Method::HomotopyF,
        Field::Complex => Method::HomotopyH,
    };
    let mut diag = Diagnostics {
        expected_paths: Some(counts.expected as u64),
        found_with_multiplicity: Some(counts.found),
        diverged_paths: Some(counts.diverged),
        failed_paths: Some(counts.failed),
        singular,
        lower_bound_only: !pass.inv.reliable,
        ..Diagnostics::default()
    };
    if singular && opts.perturb_singular {
        let (extra, eps) = perturbed_candidates(s, field, opts)?;
        candidates.extend(extra);
        method = Method::Perturbation;
        diag.perturbation_size = Some(eps);
    }
    let n_real = candidates.iter().filter(|x| is_real_vec(x)).count();
    diag.real_points = Some(n_real);
    diag.distinct_points = Some(candidates.len());
    let mut mismatches = 0;
    let best = best_candidate(s, candidates, exclusion_radius(s), &mut mismatches)
        .ok_or_else(|| Error::Internal("no nonzero fixed point found".into()))?;
    diag.radius_mismatches = mismatches;
    if mismatches > 0 {
        diag.notes.push(format!("{mismatches} fixed points have |x|^-(d-2) above the reported value"));
    }
    Ok(NormReport {
        value: best.value,
        field,
        method,
        witness: unit_witness(s, &best.x),
        residual: pass.residual,
        hs_norm: s.hs_norm(),
        oracle_lower_bound: None,
        diagnostics: diag,
    })
}

/// Complex spectral norm as the maximum over nonzero fixed points of `H`.
pub fn complex_spectral_norm(s: &SymTensor, opts: &FixedPointOptions) -> Result<NormReport> {
    norm_by_fixed_points(s, Field::Complex, opts)
}

/// Real spectral norm of a real tensor from the real fixed points of `F`.
pub fn real_spectral_norm(s: &SymTensor, opts: &FixedPointOptions) -> Result<NormReport> {
    norm_by_fixed_points(s, Field::Real, opts)
}
