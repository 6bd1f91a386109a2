//! Entry point that routes a tensor to the right solver and attaches an oracle bound.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fixedpoint::{self, FixedPointOptions};
use crate::oracle::{self, Verdict};
use crate::qubit::QubitCoeffs;
use crate::report::{Diagnostics, Field, Method, NormReport};
use crate::tensor::{MultiIndex, SymTensor};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    #[default]
    Auto,
    Univariate,
    Homotopy,
}

#[derive(Clone, Debug)]
pub struct NormOptions {
    pub field: Field,
    pub route: Route,
    pub fixed: FixedPointOptions,
    pub attach_oracle: bool,
    /// Defaults to `16 n d` when `None`.
    pub oracle_starts: Option<usize>,
    pub oracle_iters: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            field: Field::Complex,
            route: Route::Auto,
            fixed: FixedPointOptions::default(),
            attach_oracle: true,
            oracle_starts: None,
            oracle_iters: 2000,
        }
    }
}

impl NormOptions {
    pub fn with_field(field: Field) -> Self {
        NormOptions { field, ..Self::default() }
    }

    pub fn seed(&self) -> u64 {
        self.fixed.solve.seed
    }
}

/// Spectral norm of `s` over the requested field.
pub fn spectral_norm(s: &SymTensor, opts: &NormOptions) -> Result<NormReport> {
    let mut rep = compute(s, opts)?;
    if opts.attach_oracle && rep.value > 0.0 {
        let starts = opts.oracle_starts.unwrap_or_else(|| oracle::default_starts(s.n(), s.d()));
        let or = oracle::ascend_field(s, rep.field, starts, opts.oracle_iters, opts.seed())?;
        rep.oracle_lower_bound = Some(or.lower_bound);
        if let Verdict::Gap { excess } = oracle::certify(&rep, &or) {
            rep.diagnostics.notes.push(format!("oracle exceeds the reported value by {excess:.3e}"));
        }
    }
    Ok(rep)
}

/// Verdict of an attached oracle bound, if any.
pub fn verdict(rep: &NormReport) -> Option<Verdict> {
    rep.oracle_lower_bound.map(|lb| oracle::certify_values(rep.value, rep.hs_norm, lb))
}

fn compute(s: &SymTensor, opts: &NormOptions) -> Result<NormReport> {
    let field = opts.field;
    if field == Field::Real && !s.is_real() {
        return Err(Error::NotReal);
    }
    if opts.route == Route::Univariate && (s.n() != 2 || s.d() < 3) {
        return Err(Error::DimensionMismatch { expected: 2, got: s.n() });
    }
    if s.is_zero() {
        return Ok(closed_form(s, field, 0.0, vec![Complex64::new(0.0, 0.0); s.n()], "zero tensor"));
    }
    if s.n() == 1 {
        let v = s.fj()[0].norm();
        return Ok(closed_form(s, field, v, vec![Complex64::new(1.0, 0.0)], "one variable"));
    }
    if s.d() == 2 {
        return Ok(quadratic(s, field));
    }
    if s.n() == 2 && opts.route != Route::Homotopy {
        let qc = QubitCoeffs::from_tensor(s)?;
        return match field {
            Field::Complex => qc.complex_norm(),
            Field::Real => qc.real_norm(),
        };
    }
    match field {
        Field::Real => fixedpoint::real_spectral_norm(s, &opts.fixed),
        Field::Complex => complex_by_fixed_points(s, &opts.fixed),
    }
}

fn complex_by_fixed_points(s: &SymTensor, opts: &FixedPointOptions) -> Result<NormReport> {
    if s.is_nonnegative() {
        let mut rep = fixedpoint::real_spectral_norm(s, opts)?;
        rep.field = Field::Complex;
        rep.diagnostics.notes.push("nonnegative entries: complex norm from real fixed points".into());
        return Ok(rep);
    }
    let (g, two) = s.two_monomial_normalize();
    if two {
        if let Some(phases) = diagonal_phases(s) {
            let mut rep = fixedpoint::real_spectral_norm(&g, opts)?;
            rep.field = Field::Complex;
            rep.witness = rep.witness.iter().zip(&phases).map(|(w, p)| w * p).collect();
            rep.hs_norm = s.hs_norm();
            rep.diagnostics.notes.push("two monomials: complex norm from the modulus tensor".into());
            return Ok(rep);
        }
    }
    fixedpoint::complex_spectral_norm(s, opts)
}

/// Unit phases `D` with `f(D x) = |a| x^j + |b| x^k` for a two-monomial `f`.
fn diagonal_phases(s: &SymTensor) -> Option<Vec<Complex64>> {
    let terms: Vec<(&MultiIndex, Complex64)> = s.indices().iter().zip(s.fj()).filter(|(_, c)| c.norm() > 0.0).map(|(j, c)| (j, *c)).collect();
    let [(j, a), (k, b)] = terms.as_slice() else { return None };
    let n = s.n();
    for p in 0..n {
        for q in (p + 1)..n {
            let (jp, jq, kp, kq) = (j.j[p] as f64, j.j[q] as f64, k.j[p] as f64, k.j[q] as f64);
            let det = jp * kq - jq * kp;
            if det == 0.0 {
                continue;
            }
            let (ra, rb) = (-a.arg(), -b.arg());
            let tp = (ra * kq - rb * jq) / det;
            let tq = (jp * rb - kp * ra) / det;
            let mut theta = vec![0.0; n];
            theta[p] = tp;
            theta[q] = tq;
            return Some(theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect());
        }
    }
    None
}

fn closed_form(s: &SymTensor, field: Field, value: f64, witness: Vec<Complex64>, note: &str) -> NormReport {
    NormReport {
        value,
        field,
        method: Method::ClosedForm,
        witness,
        residual: 0.0,
        hs_norm: s.hs_norm(),
        oracle_lower_bound: None,
        diagnostics: Diagnostics { notes: vec![note.to_string()], ..Diagnostics::default() },
    }
}

fn quadratic(s: &SymTensor, field: Field) -> NormReport {
    let n = s.n();
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (j, c) in s.indices().iter().zip(s.fj()) {
        let idx: Vec<usize> = j.j.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        m[(idx[0], idx[1])] = *c;
        m[(idx[1], idx[0])] = *c;
    }
    let (value, w) = match field {
        Field::Complex => {
            let svd = m.clone().svd(false, true);
            let (k, &sigma) = svd.singular_values.iter().enumerate().fold((0, &0.0), |b, (i, v)| if v > b.1 { (i, v) } else { b });
            let vt = svd.v_t.expect("requested");
            let v: Vec<Complex64> = vt.row(k).iter().map(|z| z.conj()).collect();
            (sigma, v)
        }
        Field::Real => {
            let re = m.map(|z| z.re);
            let eig = re.symmetric_eigen();
            let (k, _) = eig.eigenvalues.iter().enumerate().fold((0, 0.0f64), |b, (i, v)| if v.abs() > b.1 { (i, v.abs()) } else { b });
            let v = eig.eigenvectors.column(k).iter().map(|&x| Complex64::new(x, 0.0)).collect();
            (eig.eigenvalues[k].abs(), v)
        }
    };
    let (polished_value, w) = oracle::polish(s, field, &w, 200);
    if polished_value < value * (1.0 - 1e-9) {
        // Degenerate top singular value: the singular vector need not be a Takagi vector.
        let or = oracle::ascend_field(s, field, 4 * n, 2000, 0).ok();
        if let Some(or) = or.filter(|o| o.lower_bound > polished_value) {
            return closed_form(s, field, value, or.witness, "quadratic form");
        }
    }
    closed_form(s, field, value, w, "quadratic form")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_forms() {
        // x1^2 - x2^2: complex and real norm 1.
        let s = SymTensor::from_monomial_coefficients(2, 2, [(MultiIndex::new(vec![2, 0]), c(1.0, 0.0)), (MultiIndex::new(vec![0, 2]), c(-1.0, 0.0))]).unwrap();
        let r = spectral_norm(&s, &NormOptions::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        // 2 x1 x2: singular values 1, eigenvalues +-1.
        let s = SymTensor::from_monomial_coefficients(2, 2, [(MultiIndex::new(vec![1, 1]), c(2.0, 0.0))]).unwrap();
        for field in [Field::Complex, Field::Real] {
            let r = spectral_norm(&s, &NormOptions::with_field(field)).unwrap();
            assert!((r.value - 1.0).abs() < 1e-12, "{field:?}");
            assert!((s.evaluate(&r.witness).unwrap().norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn trivial_shapes() {
        let s = SymTensor::from_monomial_coefficients(1, 4, [(MultiIndex::new(vec![4]), c(0.0, -2.0))]).unwrap();
        assert_eq!(spectral_norm(&s, &NormOptions::default()).unwrap().value, 2.0);
        let z = SymTensor::zero(3, 3).unwrap();
        assert_eq!(spectral_norm(&z, &NormOptions::default()).unwrap().value, 0.0);
    }

    #[test]
    fn univariate_route_needs_two_variables() {
        let s = SymTensor::sum_of_powers(3, 3).unwrap();
        let opts = NormOptions { route: Route::Univariate, ..NormOptions::default() };
        assert!(spectral_norm(&s, &opts).is_err());
    }

    #[test]
    fn two_monomial_witness_maps_back() {
        let s = SymTensor::from_monomial_coefficients(
            3,
            3,
            [(MultiIndex::new(vec![2, 1, 0]), c(0.3, 1.1)), (MultiIndex::new(vec![0, 1, 2]), c(-0.7, -0.2))],
        )
        .unwrap();
        let r = spectral_norm(&s, &NormOptions::default()).unwrap();
        let fw = s.evaluate(&r.witness).unwrap().norm();
        assert!((fw - r.value).abs() < 1e-9, "{fw} {}", r.value);
        assert!(matches!(verdict(&r), Some(Verdict::Pass)));
    }

    #[test]
    fn real_request_on_complex_tensor() {
        let s = SymTensor::from_monomial_coefficients(2, 3, [(MultiIndex::new(vec![3, 0]), c(0.0, 1.0))]).unwrap();
        assert!(matches!(spectral_norm(&s, &NormOptions::with_field(Field::Real)), Err(Error::NotReal)));
    }
}
