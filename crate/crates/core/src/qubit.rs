//! Binary forms (`n = 2`): spectral norms through one univariate polynomial.
//!
//! With `s_k = f_{(d-k,k)}` the form is `x_1^d phi(x_2/x_1)` where
//! `phi(z) = sum_k binom(d,k) s_k z^k`. Critical points of `|f|` on the sphere
//! map to roots of `z v(z) - u(z)` (complex field) or `z q(z) - p(z)` (real field).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::{Diagnostics, Field, Method, NormReport};
use crate::tensor::{binomial, SymTensor};
use crate::unipoly::{self, is_zero_poly, ComplexPolynomial, RootSet};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

const ZERO_POLY_EPS: f64 = 1e-9;
const SINGLE_COEFF_RTOL: f64 = 1e-12;
const REAL_ROOT_IM_TOL: f64 = 1e-6;
const ROOT_TARGET: f64 = 1e-10;
/// Default relative accuracy of the exceptional-case perturbation.
pub const DEFAULT_DELTA: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct QubitCoeffs {
    pub d: usize,
    pub s: Vec<Complex64>,
    pub phi: ComplexPolynomial,
    pub p: ComplexPolynomial,
    pub q: ComplexPolynomial,
    pub u: ComplexPolynomial,
    pub v: ComplexPolynomial,
    /// Coefficientwise rounding-error scale of `z v - u`.
    g_abs: Vec<f64>,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExceptionalClass {
    Generic,
    PureTop { a: Complex64 },
    Monomial { k: usize, a: Complex64 },
    /// `phi = A (z+a)^p (z+b)^(d-p)` with `a = e^{-i theta} c`, `b = -e^{-i theta}/c`.
    TwoRootForm { c: f64, theta: f64, p: usize, a: Complex64 },
    /// Real `phi = A (z^2+1)^(d/2)`.
    RealCircle { a: Complex64 },
}

impl ExceptionalClass {
    pub fn label(&self) -> String {
        match self {
            ExceptionalClass::Generic => "generic".into(),
            ExceptionalClass::PureTop { .. } => "pure-top".into(),
            ExceptionalClass::Monomial { k, .. } => format!("monomial(k={k})"),
            ExceptionalClass::TwoRootForm { c, theta, p, .. } => {
                format!("two-root(c={c:.6}, theta={theta:.6}, p={p})")
            }
            ExceptionalClass::RealCircle { .. } => "real-circle".into(),
        }
    }
}

/// Points of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MajoranaPoint {
    Finite(Complex64),
    Infinity,
}

fn binom_f(n: usize, k: usize) -> f64 {
    binomial(n as u64, k as u64) as f64
}

fn abs_poly(p: &ComplexPolynomial) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.norm()).collect()
}

fn abs_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn abs_add(a: &mut Vec<f64>, b: &[f64], w: f64) {
    if a.len() < b.len() {
        a.resize(b.len(), 0.0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += w * y;
    }
}

impl QubitCoeffs {
    pub fn build(s: &[Complex64]) -> Result<Self> {
        if s.len() < 4 {
            return Err(Error::DegreeTooSmall(s.len().saturating_sub(1)));
        }
        let d = s.len() - 1;
        let phi = ComplexPolynomial::new((0..=d).map(|j| s[j] * binom_f(d, j)).collect());
        let p = ComplexPolynomial::new((0..d).map(|j| s[j + 1] * binom_f(d - 1, j)).collect());
        let q = ComplexPolynomial::new((0..d).map(|j| s[j] * binom_f(d - 1, j)).collect());

        let dphi = phi.derivative().scaled(Complex64::new(1.0 / d as f64, 0.0));
        let q_check = phi.sub(&dphi.shift_up())?;
        let tol = 1e-10 * phi.scale().max(f64::MIN_POSITIVE);
        if p.sub(&dphi)?.scale() > tol || q.sub(&q_check)?.scale() > tol {
            return Err(Error::Internal("p, q fail the identities with phi".into()));
        }

        let mut p_pow = vec![ComplexPolynomial::one()];
        let mut q_pow = vec![ComplexPolynomial::one()];
        let pa = abs_poly(&p);
        let qa = abs_poly(&q);
        let mut pa_pow = vec![vec![1.0]];
        let mut qa_pow = vec![vec![1.0]];
        for k in 1..d {
            p_pow.push(p_pow[k - 1].mul(&p)?);
            q_pow.push(q_pow[k - 1].mul(&q)?);
            pa_pow.push(abs_mul(&pa_pow[k - 1], &pa));
            qa_pow.push(abs_mul(&qa_pow[k - 1], &qa));
        }
        let mut u = ComplexPolynomial::zero();
        let mut v = ComplexPolynomial::zero();
        let mut ua = Vec::new();
        let mut va = Vec::new();
        for j in 0..d {
            let b = binom_f(d - 1, j);
            let pq = p_pow[j].mul(&q_pow[d - 1 - j])?;
            let pq_abs = abs_mul(&pa_pow[j], &qa_pow[d - 1 - j]);
            u = u.add(&pq.scaled(s[j + 1].conj() * b))?;
            v = v.add(&pq.scaled(s[j].conj() * b))?;
            abs_add(&mut ua, &pq_abs, b * s[j + 1].norm());
            abs_add(&mut va, &pq_abs, b * s[j].norm());
        }
        let mut g_abs = vec![0.0];
        g_abs.extend_from_slice(&va);
        abs_add(&mut g_abs, &ua, 1.0);

        let max = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let real = s.iter().all(|z| z.im.abs() <= 1e-14 * max);
        Ok(QubitCoeffs { d, s: s.to_vec(), phi, p, q, u, v, g_abs, real })
    }

    pub fn from_tensor(t: &SymTensor) -> Result<Self> {
        Self::build(&t.qubit_coeffs()?)
    }

    fn s_inf(&self) -> f64 {
        self.s.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Scale against which `z v - u` is declared identically zero.
    pub fn zero_scale(&self) -> f64 {
        (self.s_inf().powi(self.d as i32) * 4f64.powi(self.d as i32)).max(1.0)
    }

    /// `z v(z) - u(z)`, exactly as computed.
    pub fn zv_minus_u(&self) -> Result<ComplexPolynomial> {
        self.v.shift_up().sub(&self.u)
    }

    /// `z v - u` with leading coefficients at rounding-noise level removed.
    pub fn zv_minus_u_trimmed(&self) -> Result<ComplexPolynomial> {
        let g = self.zv_minus_u()?;
        let noise = 64.0 * (self.d * self.d) as f64 * f64::EPSILON;
        let mut c = g.coeffs().to_vec();
        while let Some(last) = c.last() {
            let k = c.len() - 1;
            if last.norm() <= noise * self.g_abs.get(k).copied().unwrap_or(0.0) {
                c.pop();
            } else {
                break;
            }
        }
        Ok(ComplexPolynomial::new(c))
    }

    pub fn zq_minus_p(&self) -> Result<ComplexPolynomial> {
        self.q.shift_up().sub(&self.p)
    }

    fn single_nonzero(&self) -> Option<usize> {
        let max = self.s_inf();
        let big: Vec<usize> = (0..=self.d).filter(|&k| self.s[k].norm() > SINGLE_COEFF_RTOL * max).collect();
        (big.len() == 1).then(|| big[0])
    }

    pub fn classify(&self) -> Result<ExceptionalClass> {
        let d = self.d;
        if self.s_inf() == 0.0 {
            return Err(Error::ZeroTensor);
        }
        if let Some(k) = self.single_nonzero() {
            if k == d {
                return Ok(ExceptionalClass::PureTop { a: self.s[d] });
            }
            if k >= 1 {
                return Ok(ExceptionalClass::Monomial { k, a: self.s[k] });
            }
        }
        if self.real && d % 2 == 0 {
            let scale = self.s_inf().max(1.0) * 2f64.powi(d as i32);
            if is_zero_poly(&self.zq_minus_p()?, ZERO_POLY_EPS, scale) {
                return Ok(ExceptionalClass::RealCircle { a: self.s[d] });
            }
        }
        if is_zero_poly(&self.zv_minus_u()?, ZERO_POLY_EPS, self.zero_scale()) {
            return self.fit_two_root_form();
        }
        Ok(ExceptionalClass::Generic)
    }

    fn fit_two_root_form(&self) -> Result<ExceptionalClass> {
        let d = self.d;
        let lead = self.s[d];
        if lead.norm() <= SINGLE_COEFF_RTOL * self.s_inf() {
            return Err(Error::UnclassifiedExceptional);
        }
        let monic = self.phi.scaled(lead.inv());
        let set = unipoly::roots(&monic, ROOT_TARGET)?;
        let pts: Vec<Complex64> = set.roots.iter().flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity)).collect();
        let (mut i0, mut i1, mut far) = (0, 0, -1.0);
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let dist = (pts[i] - pts[j]).norm();
                if dist > far {
                    (i0, i1, far) = (i, j, dist);
                }
            }
        }
        let (mut g0, mut g1) = (Vec::new(), Vec::new());
        for &z in &pts {
            if (z - pts[i0]).norm() <= (z - pts[i1]).norm() {
                g0.push(z);
            } else {
                g1.push(z);
            }
        }
        if g0.is_empty() || g1.is_empty() {
            return Err(Error::UnclassifiedExceptional);
        }
        let mean = |g: &[Complex64]| g.iter().sum::<Complex64>() / g.len() as f64;
        let a = -mean(&g0);
        let b = -mean(&g1);
        let p = g0.len();
        let consistency = (a * b.conj() + ONE).norm();
        if consistency > 1e-6 {
            return Err(Error::UnclassifiedExceptional);
        }
        let fit = ComplexPolynomial::new(vec![a, ONE])
            .compose_power(p as u32)?
            .mul(&ComplexPolynomial::new(vec![b, ONE]).compose_power((d - p) as u32)?)?;
        if fit.sub(&monic)?.scale() > 1e-6 * monic.scale() {
            return Err(Error::UnclassifiedExceptional);
        }
        let c = a.norm();
        let theta = -a.arg();
        Ok(ExceptionalClass::TwoRootForm { c, theta, p, a: lead })
    }

    /// `|phi(z)| / (1+|z|^2)^{d/2}`, the value of `|f|` at `(1,z)/|(1,z)|`.
    pub fn value_at(&self, z: Complex64) -> f64 {
        let r2 = 1.0 + z.norm_sqr();
        // Evaluate through the reversed polynomial when |z| is large.
        if z.norm() <= 1.0 {
            self.phi.eval(z).norm() / r2.powf(self.d as f64 / 2.0)
        } else {
            let y = z.inv();
            let mut acc = ZERO;
            for k in 0..=self.d {
                acc = acc * y + self.phi.coeffs().get(k).copied().unwrap_or(ZERO);
            }
            // phi(z) = z^d * acc(y) with acc reversed; |z|^d / (1+|z|^2)^{d/2} = (1+|y|^2)^{-d/2}
            acc.norm() / (1.0 + y.norm_sqr()).powf(self.d as f64 / 2.0)
        }
    }

    fn witness(z: Complex64) -> Vec<Complex64> {
        let r = (1.0 + z.norm_sqr()).sqrt();
        vec![ONE / r, z / r]
    }

    fn hs_norm(&self) -> f64 {
        (0..=self.d).map(|k| binom_f(self.d, k) * self.s[k].norm_sqr()).sum::<f64>().sqrt()
    }

    fn base_report(&self, field: Field, method: Method, value: f64, witness: Vec<Complex64>) -> NormReport {
        NormReport {
            value,
            field,
            method,
            witness,
            residual: 0.0,
            hs_norm: self.hs_norm(),
            oracle_lower_bound: None,
            diagnostics: Diagnostics::default(),
        }
    }

    fn top_report(&self, field: Field, method: Method) -> NormReport {
        self.base_report(field, method, self.s[self.d].norm(), vec![ZERO, ONE])
    }

    fn max_over(&self, zs: &[Complex64], field: Field, method: Method) -> NormReport {
        let mut best = self.top_report(field, method);
        for &z in zs {
            let v = self.value_at(z);
            if v > best.value {
                best.value = v;
                best.witness = Self::witness(z);
            }
        }
        best
    }

    fn record_roots(diag: &mut Diagnostics, degree: Option<usize>, set: &RootSet, real: usize) {
        diag.poly_degree = degree;
        diag.root_count = Some(set.total_multiplicity());
        diag.distinct_roots = Some(set.roots.len());
        diag.real_root_count = Some(real);
        diag.max_multiplicity = Some(set.max_multiplicity());
    }

    /// Complex spectral norm; exceptional classes use their dedicated formulas.
    pub fn complex_norm(&self) -> Result<NormReport> {
        let class = self.classify()?;
        match class {
            ExceptionalClass::Generic => self.generic_complex_norm(),
            ExceptionalClass::TwoRootForm { .. } | ExceptionalClass::RealCircle { .. } => {
                self.exceptional_norm(DEFAULT_DELTA)
            }
            _ => self.closed_form(&class, Field::Complex),
        }
    }

    fn closed_form(&self, class: &ExceptionalClass, field: Field) -> Result<NormReport> {
        let mut rep = match *class {
            ExceptionalClass::PureTop { .. } => self.top_report(field, Method::ClosedForm),
            ExceptionalClass::Monomial { k, a } => {
                let value = monomial_norm(a.norm(), k, self.d)?;
                let x1 = ((self.d - k) as f64 / self.d as f64).sqrt();
                let x2 = (k as f64 / self.d as f64).sqrt();
                let w = vec![Complex64::new(x1, 0.0), Complex64::new(x2, 0.0)];
                self.base_report(field, Method::ClosedForm, value, w)
            }
            ExceptionalClass::RealCircle { a } => {
                let w = vec![ONE, ZERO];
                self.base_report(field, Method::ClosedForm, a.norm(), w)
            }
            _ => return Err(Error::Internal("no closed form for this class".into())),
        };
        rep.diagnostics.exceptional = Some(class.label());
        Ok(rep)
    }

    fn generic_complex_norm(&self) -> Result<NormReport> {
        let g = self.zv_minus_u_trimmed()?;
        let mut rep = self.top_report(Field::Complex, Method::Univariate);
        if g.degree().unwrap_or(0) == 0 {
            rep.diagnostics.poly_degree = g.degree();
            return Ok(rep);
        }
        let set = unipoly::roots(&g, ROOT_TARGET)?;
        let zs: Vec<Complex64> = set.roots.iter().map(|r| r.value).collect();
        let mut rep = self.max_over(&zs, Field::Complex, Method::Univariate);
        rep.residual = set.roots.iter().map(|r| r.residual).fold(0.0, f64::max);
        let real = unipoly::real_roots(&set, REAL_ROOT_IM_TOL).len();
        Self::record_roots(&mut rep.diagnostics, g.degree(), &set, real);
        rep.diagnostics.exceptional = Some("generic".into());
        Ok(rep)
    }

    /// Real spectral norm of a real binary form.
    pub fn real_norm(&self) -> Result<NormReport> {
        if !self.real {
            return Err(Error::NotReal);
        }
        let class = self.classify()?;
        match class {
            ExceptionalClass::PureTop { .. } | ExceptionalClass::Monomial { .. } | ExceptionalClass::RealCircle { .. } => {
                self.closed_form(&class, Field::Real)
            }
            _ => {
                let h = self.zq_minus_p()?;
                let mut rep = self.top_report(Field::Real, Method::Univariate);
                if h.degree().unwrap_or(0) == 0 {
                    rep.diagnostics.poly_degree = h.degree();
                    return Ok(rep);
                }
                let set = unipoly::roots(&h, ROOT_TARGET)?;
                let reals: Vec<Complex64> = unipoly::real_roots(&set, REAL_ROOT_IM_TOL)
                    .into_iter()
                    .map(|r| Complex64::new(r, 0.0))
                    .collect();
                let mut rep = self.max_over(&reals, Field::Real, Method::Univariate);
                rep.residual = set.roots.iter().map(|r| r.residual).fold(0.0, f64::max);
                Self::record_roots(&mut rep.diagnostics, h.degree(), &set, reals.len());
                rep.diagnostics.exceptional = Some(class.label());
                Ok(rep)
            }
        }
    }

    /// Complex norm of an exceptional two-root form through the perturbation
    /// `phi + omega`, `omega = delta/4`. The true norm lies in `[L(1-omega), L(1+omega)]`.
    pub fn exceptional_norm(&self, delta: f64) -> Result<NormReport> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Internal(format!("delta {delta} outside (0,1)")));
        }
        let class = self.classify()?;
        if !matches!(class, ExceptionalClass::TwoRootForm { .. } | ExceptionalClass::RealCircle { .. }) {
            return Err(Error::Internal(format!("exceptional_norm called on {}", class.label())));
        }
        let lead = self.s[self.d];
        let omega = delta / 4.0;
        let mut s: Vec<Complex64> = self.s.iter().map(|z| z / lead).collect();
        s[0] += omega;
        let perturbed = QubitCoeffs::build(&s)?;
        match perturbed.classify()? {
            ExceptionalClass::Generic => {}
            other => {
                return Err(Error::Internal(format!("perturbed form is still exceptional: {}", other.label())));
            }
        }
        let inner = perturbed.generic_complex_norm()?;
        let mut rep = self.base_report(Field::Complex, Method::Univariate, inner.value * lead.norm(), inner.witness.clone());
        rep.residual = inner.residual;
        rep.diagnostics = inner.diagnostics;
        rep.diagnostics.exceptional = Some(class.label());
        rep.diagnostics.perturbation_size = Some(omega);
        let lower = self.witness_value(&inner.witness);
        rep.diagnostics.notes.push(format!(
            "relative band [{:.3e}, {:.3e}]; witness value on the unperturbed form {lower:.12}",
            -omega, omega
        ));
        Ok(rep)
    }

    /// `|f(x)|` for a vector `x`.
    pub fn witness_value(&self, x: &[Complex64]) -> f64 {
        let mut acc = ZERO;
        for k in 0..=self.d {
            acc += self.phi.coeffs().get(k).copied().unwrap_or(ZERO) * x[0].powu((self.d - k) as u32) * x[1].powu(k as u32);
        }
        acc.norm()
    }

    /// Roots of `phi` with multiplicity, plus infinity with multiplicity `d - deg phi`.
    pub fn majorana_roots(&self) -> Result<Vec<(MajoranaPoint, usize)>> {
        let deg = self.phi.degree().ok_or(Error::ZeroTensor)?;
        let mut out = Vec::new();
        if deg > 0 {
            let set = unipoly::roots(&self.phi, ROOT_TARGET)?;
            out.extend(set.roots.iter().map(|r| (MajoranaPoint::Finite(r.value), r.multiplicity)));
        }
        if deg < self.d {
            out.push((MajoranaPoint::Infinity, self.d - deg));
        }
        Ok(out)
    }
}

/// `|A| binom(d,k) (1-k/d)^{(d-k)/2} (k/d)^{k/2}`.
pub fn monomial_norm(a_abs: f64, k: usize, d: usize) -> Result<f64> {
    if k == 0 || k >= d {
        return Err(Error::InvalidIndex(format!("k={k} outside 1..{}", d.saturating_sub(1))));
    }
    let kd = k as f64 / d as f64;
    Ok(a_abs * binom_f(d, k) * (1.0 - kd).powf((d - k) as f64 / 2.0) * kd.powf(k as f64 / 2.0))
}
