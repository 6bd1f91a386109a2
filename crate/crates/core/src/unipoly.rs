//! Dense univariate complex polynomials and a simultaneous root finder.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
    scale: f64,
}

impl ComplexPolynomial {
    /// Coefficient `k` multiplies `z^k`. Trailing exact zeros are trimmed.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        ComplexPolynomial { coeffs, scale }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0)])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::new(vec![ZERO, Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    fn checked(self) -> Result<Self> {
        if self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            Ok(self)
        } else {
            Err(Error::NumericOverflow)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|k| self.coeffs.get(k).copied().unwrap_or(ZERO) + other.coeffs.get(k).copied().unwrap_or(ZERO))
            .collect();
        Self::new(c).checked()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut c = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c).checked()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect())
    }

    /// `self^k`.
    pub fn compose_power(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `z * self`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(ZERO);
        c.extend_from_slice(&self.coeffs);
        Self::new(c)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Drops leading coefficients of modulus at most `rel * reference`.
    pub fn trim_relative(&self, rel: f64, reference: f64) -> Self {
        let mut c = self.coeffs.clone();
        while let Some(last) = c.last() {
            if last.norm() <= rel * reference {
                c.pop();
            } else {
                break;
            }
        }
        Self::new(c)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Value and first derivative by Horner's rule.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |z|^k`, the scale of rounding errors in `eval(z)`.
    pub fn abs_eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Coefficients of `p(z + c)`.
    pub fn taylor_shift(&self, c: Complex64) -> Vec<Complex64> {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let next = a[k + 1];
                a[k] += c * next;
            }
        }
        a
    }

    /// Newton correction `p(z)/p'(z)`, evaluated through the reversed
    /// polynomial when `|z| > 1` to avoid overflow.
    fn newton_ratio(&self, z: Complex64) -> (Complex64, bool) {
        let m = self.coeffs.len() - 1;
        if z.norm() <= 1.0 {
            let (p, dp) = self.eval_with_derivative(z);
            if p == ZERO {
                return (ZERO, true);
            }
            return (p / dp, false);
        }
        let y = z.inv();
        let mut r = ZERO;
        let mut dr = ZERO;
        for c in self.coeffs.iter() {
            dr = dr * y + r;
            r = r * y + c;
        }
        if r == ZERO {
            return (ZERO, true);
        }
        (z / (m as f64 - y * dr / r), false)
    }
}

/// True iff every coefficient has modulus at most `rel_eps * scale`.
pub fn is_zero_poly(poly: &ComplexPolynomial, rel_eps: f64, scale: f64) -> bool {
    poly.scale() <= rel_eps * scale
}

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// Backward error `|p(root)| / sum_k |c_k| |root|^k`.
    pub residual: f64,
    pub polished: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub degree: usize,
    pub converged: bool,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).max().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    pub target_residual: f64,
    pub cluster_radius: f64,
    pub max_sweeps: usize,
    pub newton_steps: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { target_residual: 1e-10, cluster_radius: 1e-7, max_sweeps: 200, newton_steps: 20 }
    }
}

/// All roots with default options and the given residual target.
pub fn roots(poly: &ComplexPolynomial, target_residual: f64) -> Result<RootSet> {
    roots_with(poly, &RootOptions { target_residual, ..RootOptions::default() })
}

pub fn roots_with(poly: &ComplexPolynomial, opts: &RootOptions) -> Result<RootSet> {
    let deg = poly.degree().ok_or_else(|| Error::Internal("roots of the zero polynomial".into()))?;
    if deg == 0 {
        return Ok(RootSet { roots: Vec::new(), degree: 0, converged: true });
    }
    let zeros = poly.coeffs().iter().take_while(|c| **c == ZERO).count();
    let reduced = ComplexPolynomial::new(poly.coeffs()[zeros..].to_vec());
    let (mut values, converged) = aberth(&reduced, opts.max_sweeps);
    for z in values.iter_mut() {
        *z = newton_polish(&reduced, *z, opts.newton_steps);
    }
    let mut clusters = cluster(&reduced, &values, opts.cluster_radius);
    for cl in clusters.iter_mut() {
        if cl.1 > 1 {
            cl.0 = multiple_newton(&reduced, cl.0, cl.1, cl.2);
        }
    }
    let mut out: Vec<Root> = Vec::new();
    if zeros > 0 {
        out.push(Root { value: ZERO, multiplicity: zeros, residual: 0.0, polished: true });
    }
    for (value, multiplicity, _) in clusters {
        let residual = poly.eval(value).norm() / poly.abs_eval(value).max(f64::MIN_POSITIVE);
        out.push(Root { value, multiplicity, residual, polished: residual <= opts.target_residual });
    }
    let set = RootSet { roots: out, degree: deg, converged };
    if !converged && set.roots.iter().any(|r| !r.polished) {
        return Err(Error::SolverStall(Box::new(set)));
    }
    Ok(set)
}

/// Starting points on circles read off the Newton polygon of `|c_k|`.
fn initial_points(p: &ComplexPolynomial) -> Vec<Complex64> {
    let c = p.coeffs();
    let m = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != ZERO)
        .map(|(k, v)| (k, v.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let tau = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(m);
    for (seg, w) in hull.windows(2).enumerate() {
        let (k0, y0) = w[0];
        let (k1, y1) = w[1];
        let count = k1 - k0;
        let radius = ((y0 - y1) / count as f64).exp();
        for i in 0..count {
            let angle = tau * i as f64 / count as f64 + tau * seg as f64 / m as f64 + golden * (k0 + i + 1) as f64 / m as f64 + 0.4;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

fn aberth(p: &ComplexPolynomial, max_sweeps: usize) -> (Vec<Complex64>, bool) {
    let m = p.degree().unwrap_or(0);
    if m == 0 {
        return (Vec::new(), true);
    }
    if m == 1 {
        let c = p.coeffs();
        return (vec![-c[0] / c[1]], true);
    }
    let mut z = initial_points(p);
    let mut done = vec![false; m];
    let eps = f64::EPSILON;
    for _ in 0..max_sweeps {
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (ratio, exact) = p.newton_ratio(z[i]);
            if exact {
                done[i] = true;
                continue;
            }
            let s: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] -= w;
            let small_step = w.norm() <= 4.0 * eps * z[i].norm();
            let small_value = z[i].norm() <= 1.0 && p.eval(z[i]).norm() <= 8.0 * eps * m as f64 * p.abs_eval(z[i]);
            if small_step || small_value {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return (z, true);
        }
    }
    let all_small = z.iter().all(|&zi| {
        let (ratio, _) = p.newton_ratio(zi);
        ratio.norm() <= 1e-6 * (1.0 + zi.norm())
    });
    (z, all_small)
}

fn newton_polish(p: &ComplexPolynomial, z0: Complex64, steps: usize) -> Complex64 {
    let mut z = z0;
    let mut best = p.eval(z).norm() / p.abs_eval(z).max(f64::MIN_POSITIVE);
    for _ in 0..steps {
        let (ratio, exact) = p.newton_ratio(z);
        if exact || ratio.norm() <= f64::EPSILON * z.norm() {
            break;
        }
        let cand = z - ratio;
        let r = p.eval(cand).norm() / p.abs_eval(cand).max(f64::MIN_POSITIVE);
        if r < best {
            z = cand;
            best = r;
        } else {
            break;
        }
    }
    z
}

/// Refines an `m`-fold root as the simple root of the `(m-1)`-th derivative.
fn multiple_newton(p: &ComplexPolynomial, z0: Complex64, mult: usize, reach: f64) -> Complex64 {
    let mut dp = p.clone();
    for _ in 1..mult {
        dp = dp.derivative();
    }
    let z = newton_polish(&dp, z0, 20);
    if (z - z0).norm() <= reach {
        z
    } else {
        z0
    }
}

/// Estimated radius over which rounding noise spreads an `m`-fold root at `c`,
/// or zero when the local Taylor expansion is not dominated by its `m`-th term
/// within distance `diam`.
fn noise_spread(p: &ComplexPolynomial, c: Complex64, m: usize, diam: f64) -> f64 {
    let shifted = p.taylor_shift(c);
    let lead = shifted.get(m).map(|v| v.norm()).unwrap_or(0.0);
    if lead == 0.0 {
        return 0.0;
    }
    let deg = p.degree().unwrap_or(1).max(1) as f64;
    let noise = 8.0 * f64::EPSILON * deg * p.abs_eval(c);
    let spread = (noise / lead).powf(1.0 / m as f64);
    let reach = 2.0 * diam.max(spread);
    let dominated = (0..m).all(|k| shifted[k].norm() <= 4.0 * lead * reach.powi((m - k) as i32));
    if dominated {
        spread
    } else {
        0.0
    }
}

/// Groups approximate roots into clusters `(centroid, size, reach)`.
fn cluster(p: &ComplexPolynomial, z: &[Complex64], radius: f64) -> Vec<(Complex64, usize, f64)> {
    let m = z.len();
    let deg = p.degree().unwrap_or(1).max(1) as f64;
    // A root whose forward error is far below its separation is a simple root.
    let certified: Vec<bool> = (0..m)
        .map(|i| {
            let nearest = (0..m).filter(|&j| j != i).map(|j| (z[j] - z[i]).norm()).fold(f64::INFINITY, f64::min);
            let (_, dp) = p.eval_with_derivative(z[i]);
            let err = 8.0 * f64::EPSILON * deg * p.abs_eval(z[i]) / dp.norm();
            err < 0.01 * nearest
        })
        .collect();
    let mut assigned = vec![false; m];
    let mut out = Vec::new();
    for i in 0..m {
        if assigned[i] {
            continue;
        }
        let mut others: Vec<(f64, usize)> =
            (0..m).filter(|&j| j != i && !assigned[j]).map(|j| ((z[j] - z[i]).norm(), j)).collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut chosen = vec![i];
        let max_extra = others.len().min(24);
        for k in (1..=max_extra).rev() {
            let members: Vec<usize> = std::iter::once(i).chain(others[..k].iter().map(|o| o.1)).collect();
            if members.iter().any(|&j| certified[j]) {
                continue;
            }
            let centroid = members.iter().map(|&j| z[j]).sum::<Complex64>() / members.len() as f64;
            let diam = members.iter().map(|&j| (z[j] - centroid).norm()).fold(0.0, f64::max);
            let tight = diam <= radius * (1.0 + centroid.norm());
            let spread = if tight { 0.0 } else { noise_spread(p, centroid, members.len(), diam) };
            let gap = others.get(k).map(|o| o.0).unwrap_or(f64::INFINITY);
            if (tight || diam <= 5.0 * spread) && gap > 10.0 * diam.max(radius * (1.0 + centroid.norm())) {
                chosen = members;
                break;
            }
        }
        for &j in &chosen {
            assigned[j] = true;
        }
        let centroid = chosen.iter().map(|&j| z[j]).sum::<Complex64>() / chosen.len() as f64;
        let diam = chosen.iter().map(|&j| (z[j] - centroid).norm()).fold(0.0, f64::max);
        out.push((centroid, chosen.len(), 2.0 * diam + radius * (1.0 + centroid.norm())));
    }
    out
}

/// Roots with `|Im| <= im_tol (1 + |root|)`, imaginary parts dropped.
pub fn real_roots(roots: &RootSet, im_tol: f64) -> Vec<f64> {
    roots
        .roots
        .iter()
        .filter(|r| r.value.im.abs() <= im_tol * (1.0 + r.value.norm()))
        .map(|r| r.value.re)
        .collect()
}
