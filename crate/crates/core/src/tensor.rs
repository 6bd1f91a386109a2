//! Symmetric tensors stored as homogeneous polynomials.
//!
//! A tensor `S` of degree `d` on `n` variables is kept as the vector of
//! entries `f_j` over the multi-index set `J(d,n)`, so that
//! `f(x) = sum_j c(j) f_j x^j` with `c(j) = d!/(j_1!...j_n!)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type VectorC = Vec<Complex64>;

const REAL_FLAG_RTOL: f64 = 1e-14;

/// Euclidean norm of a complex vector.
pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    pub j: Vec<u32>,
}

impl MultiIndex {
    pub fn new(j: Vec<u32>) -> Self {
        MultiIndex { j }
    }

    /// Builds an index from signed entries, rejecting negatives.
    pub fn from_signed(j: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(j.len());
        for &v in j {
            if v < 0 || v > u32::MAX as i64 {
                return Err(Error::InvalidIndex(format!("{j:?}")));
            }
            out.push(v as u32);
        }
        Ok(MultiIndex { j: out })
    }

    pub fn degree(&self) -> usize {
        self.j.iter().map(|&v| v as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// ascending lexicographic order.
pub fn multi_indices(d: usize, n: usize) -> Vec<MultiIndex> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        let n = cur.len();
        if pos == n - 1 {
            cur[pos] = left;
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    rec(0, d as u32, &mut cur, &mut out);
    out
}

/// `binomial(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Multinomial coefficient `c(j) = |j|!/(j_1!...j_n!)` as a float.
pub fn multinomial(j: &[u32]) -> f64 {
    let mut total: u64 = 0;
    let mut acc = 1.0f64;
    for &v in j {
        let v = v as u64;
        acc *= binomial(total + v, v) as f64;
        total += v;
    }
    acc
}

#[derive(Debug)]
struct Basis {
    indices: Vec<MultiIndex>,
    weights: Vec<f64>,
}

impl Basis {
    fn new(n: usize, d: usize) -> Self {
        let indices = multi_indices(d, n);
        let weights = indices.iter().map(|m| multinomial(&m.j)).collect();
        Basis { indices, weights }
    }

    fn position(&self, j: &MultiIndex) -> Option<usize> {
        self.indices.binary_search(j).ok()
    }
}

/// Symmetric tensor in the `f_j` convention.
#[derive(Clone, Debug)]
pub struct SymTensor {
    n: usize,
    d: usize,
    basis: Arc<Basis>,
    fj: Vec<Complex64>,
    real: bool,
}

impl SymTensor {
    fn with_basis(n: usize, d: usize, basis: Arc<Basis>, fj: Vec<Complex64>) -> Self {
        let max = fj.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let max_im = fj.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        let real = max_im <= REAL_FLAG_RTOL * max;
        SymTensor { n, d, basis, fj, real }
    }

    fn check_shape(n: usize, d: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        Ok(())
    }

    pub fn zero(n: usize, d: usize) -> Result<Self> {
        Self::check_shape(n, d)?;
        let basis = Arc::new(Basis::new(n, d));
        let len = basis.indices.len();
        Ok(Self::with_basis(n, d, basis, vec![Complex64::new(0.0, 0.0); len]))
    }

    /// Builds a tensor from monomial coefficients `a_j`, storing `f_j = a_j / c(j)`.
    /// Repeated keys accumulate.
    pub fn from_monomial_coefficients<I>(n: usize, d: usize, a: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        Self::from_entries(n, d, a, true)
    }

    /// Builds a tensor directly from entries `f_j`.
    pub fn from_fj<I>(n: usize, d: usize, f: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        Self::from_entries(n, d, f, false)
    }

    fn from_entries<I>(n: usize, d: usize, items: I, monomial: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut t = Self::zero(n, d)?;
        for (j, v) in items {
            if j.len() != n {
                return Err(Error::InvalidIndex(format!(
                    "{:?} has length {}, expected {n}",
                    j.j,
                    j.len()
                )));
            }
            if j.degree() != d {
                return Err(Error::DegreeMismatch { expected: d, got: j.degree() });
            }
            let pos = t.basis.position(&j).expect("index of correct degree is in the basis");
            let w = if monomial { t.basis.weights[pos] } else { 1.0 };
            t.fj[pos] += v / w;
        }
        Ok(Self::with_basis(n, d, t.basis, t.fj))
    }

    /// Builds a tensor from the dense `f_j` vector in basis order.
    pub fn from_fj_vec(n: usize, d: usize, fj: Vec<Complex64>) -> Result<Self> {
        Self::check_shape(n, d)?;
        let basis = Arc::new(Basis::new(n, d));
        if fj.len() != basis.indices.len() {
            return Err(Error::DimensionMismatch { expected: basis.indices.len(), got: fj.len() });
        }
        Ok(Self::with_basis(n, d, basis, fj))
    }

    /// Binary form with `s_k = f_{(d-k,k)}`.
    pub fn from_qubit_coeffs(s: &[Complex64]) -> Result<Self> {
        if s.len() < 3 {
            return Err(Error::DegreeTooSmall(s.len().saturating_sub(1)));
        }
        let d = s.len() - 1;
        let fj = (0..=d).map(|pos| s[d - pos]).collect();
        Self::from_fj_vec(2, d, fj)
    }

    /// The normalized Dicke tensor `sqrt(c(j)) x^j`, with unit Hilbert-Schmidt norm.
    pub fn dicke(j: &MultiIndex) -> Result<Self> {
        let d = j.degree();
        let c = multinomial(&j.j);
        Self::from_monomial_coefficients(j.len(), d, [(j.clone(), Complex64::new(c.sqrt(), 0.0))])
    }

    /// `sum_i x_i^d`.
    pub fn sum_of_powers(n: usize, d: usize) -> Result<Self> {
        let items = (0..n).map(|i| {
            let mut j = vec![0u32; n];
            j[i] = d as u32;
            (MultiIndex::new(j), Complex64::new(1.0, 0.0))
        });
        Self::from_monomial_coefficients(n, d, items)
    }

    /// The quartic `sum_{i,j} A_ij x_i^2 x_j^2` of a simple graph.
    pub fn graph_quartic(adj: &[Vec<u8>]) -> Result<Self> {
        let n = adj.len();
        let mut edges = 0usize;
        for (i, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph(format!("row {i} has length {}", row.len())));
            }
            for (k, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::InvalidGraph(format!("entry ({i},{k}) is not 0/1")));
                }
                if v != adj[k][i] {
                    return Err(Error::InvalidGraph("matrix is not symmetric".into()));
                }
                if i == k && v != 0 {
                    return Err(Error::InvalidGraph(format!("nonzero diagonal at {i}")));
                }
                edges += v as usize;
            }
        }
        if edges == 0 {
            return Err(Error::InvalidGraph("graph has no edges".into()));
        }
        let mut items = Vec::new();
        for i in 0..n {
            for k in (i + 1)..n {
                if adj[i][k] == 1 {
                    let mut j = vec![0u32; n];
                    j[i] = 2;
                    j[k] = 2;
                    items.push((MultiIndex::new(j), Complex64::new(1.0 / 3.0, 0.0)));
                }
            }
        }
        Self::from_fj(n, 4, items)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.basis.indices
    }

    /// Multinomial weights `c(j)` in basis order.
    pub fn weights(&self) -> &[f64] {
        &self.basis.weights
    }

    pub fn fj(&self) -> &[Complex64] {
        &self.fj
    }

    /// Entry `f_j` for a given index, if the index belongs to `J(d,n)`.
    pub fn entry(&self, j: &MultiIndex) -> Option<Complex64> {
        self.basis.position(j).map(|p| self.fj[p])
    }

    /// Monomial coefficients `a_j = c(j) f_j` in basis order.
    pub fn monomial_coeffs(&self) -> Vec<Complex64> {
        self.fj.iter().zip(&self.basis.weights).map(|(f, w)| f * w).collect()
    }

    /// `s_k = f_{(d-k,k)}` for a binary form.
    pub fn qubit_coeffs(&self) -> Result<Vec<Complex64>> {
        if self.n != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.n });
        }
        Ok((0..=self.d).map(|k| self.fj[self.d - k]).collect())
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Real with every entry nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.real && self.fj.iter().all(|z| z.re >= 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.fj.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.fj.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn nonzero_count(&self) -> usize {
        self.fj.iter().filter(|z| z.norm() > 0.0).count()
    }

    fn check_len(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        x.iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(self.d + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=self.d {
                    row.push(acc);
                    acc *= xi;
                }
                row
            })
            .collect()
    }

    /// `f(x)`.
    pub fn evaluate(&self, x: &[Complex64]) -> Result<Complex64> {
        self.check_len(x)?;
        let pw = self.powers(x);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((j, f), w) in self.basis.indices.iter().zip(&self.fj).zip(&self.basis.weights) {
            let mut m = Complex64::new(*w, 0.0) * f;
            for (i, &e) in j.j.iter().enumerate() {
                m *= pw[i][e as usize];
            }
            acc += m;
        }
        Ok(acc)
    }

    /// `F(x) = (1/d) grad f(x)`.
    pub fn grad_map_f(&self, x: &[Complex64]) -> Result<VectorC> {
        self.check_len(x)?;
        let pw = self.powers(x);
        let inv_d = 1.0 / self.d as f64;
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for ((j, f), w) in self.basis.indices.iter().zip(&self.fj).zip(&self.basis.weights) {
            if *f == Complex64::new(0.0, 0.0) {
                continue;
            }
            let a = f * (w * inv_d);
            for (i, out_i) in out.iter_mut().enumerate() {
                let ei = j.j[i];
                if ei == 0 {
                    continue;
                }
                let mut m = a * ei as f64;
                for (k, &e) in j.j.iter().enumerate() {
                    let e = if k == i { e - 1 } else { e };
                    m *= pw[k][e as usize];
                }
                *out_i += m;
            }
        }
        Ok(out)
    }

    /// `H(x) = conj(F(conj(F(x))))`.
    pub fn map_h(&self, x: &[Complex64]) -> Result<VectorC> {
        let y: VectorC = self.grad_map_f(x)?.iter().map(|z| z.conj()).collect();
        Ok(self.grad_map_f(&y)?.iter().map(|z| z.conj()).collect())
    }

    /// `<S, T> = sum_j c(j) f_j conj(g_j)`.
    pub fn hs_inner(&self, other: &SymTensor) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self
            .fj
            .iter()
            .zip(&other.fj)
            .zip(&self.basis.weights)
            .map(|((a, b), w)| a * b.conj() * w)
            .sum())
    }

    pub fn hs_norm(&self) -> f64 {
        self.fj
            .iter()
            .zip(&self.basis.weights)
            .map(|(a, w)| a.norm_sqr() * w)
            .sum::<f64>()
            .sqrt()
    }

    fn check_same_shape(&self, other: &SymTensor) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        if self.d != other.d {
            return Err(Error::DegreeMismatch { expected: self.d, got: other.d });
        }
        Ok(())
    }

    pub fn conj(&self) -> SymTensor {
        let fj = self.fj.iter().map(|z| z.conj()).collect();
        Self::with_basis(self.n, self.d, self.basis.clone(), fj)
    }

    pub fn scale(&self, c: Complex64) -> SymTensor {
        let fj = self.fj.iter().map(|z| z * c).collect();
        Self::with_basis(self.n, self.d, self.basis.clone(), fj)
    }

    /// `a*self + b*other`.
    pub fn combine(&self, a: Complex64, other: &SymTensor, b: Complex64) -> Result<SymTensor> {
        self.check_same_shape(other)?;
        let fj = self.fj.iter().zip(&other.fj).map(|(x, y)| a * x + b * y).collect();
        Ok(Self::with_basis(self.n, self.d, self.basis.clone(), fj))
    }

    /// Replaces the two nonzero entries of a two-monomial tensor by their moduli.
    pub fn two_monomial_normalize(&self) -> (SymTensor, bool) {
        if self.nonzero_count() != 2 {
            return (self.clone(), false);
        }
        let fj = self.fj.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect();
        (Self::with_basis(self.n, self.d, self.basis.clone(), fj), true)
    }

    /// The tensor of `x -> f(U x)` for an `n x n` matrix `U` given by rows.
    pub fn compose_linear(&self, u: &[Vec<Complex64>]) -> Result<SymTensor> {
        if u.len() != self.n || u.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch { expected: self.n, got: u.len() });
        }
        type Poly = HashMap<Vec<u32>, Complex64>;
        let n = self.n;
        let mul = |p: &Poly, q: &Poly| -> Poly {
            let mut out = Poly::new();
            for (ea, ca) in p {
                for (eb, cb) in q {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    *out.entry(e).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
                }
            }
            out
        };
        let linear: Vec<Poly> = u
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        let mut e = vec![0u32; n];
                        e[k] = 1;
                        (e, c)
                    })
                    .collect()
            })
            .collect();
        let mut total = Poly::new();
        for (j, a) in self.basis.indices.iter().zip(self.monomial_coeffs()) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut term: Poly = Poly::from([(vec![0u32; n], a)]);
            for (i, &e) in j.j.iter().enumerate() {
                for _ in 0..e {
                    term = mul(&term, &linear[i]);
                }
            }
            for (e, c) in term {
                *total.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        Self::from_monomial_coefficients(n, self.d, total.into_iter().map(|(e, c)| (MultiIndex::new(e), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn enumeration_size_and_order() {
        let idx = multi_indices(3, 3);
        assert_eq!(idx.len(), 10);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(idx[0].j, vec![0, 0, 3]);
        assert_eq!(idx[9].j, vec![3, 0, 0]);
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[1, 1, 1]), 6.0);
        assert_eq!(multinomial(&[2, 1]), 3.0);
        assert_eq!(multinomial(&[2, 2]), 6.0);
        assert_eq!(binomial(10, 3), 120);
    }

    #[test]
    fn monomial_conversion_example_two() {
        let t = SymTensor::from_monomial_coefficients(
            2,
            3,
            [
                (MultiIndex::new(vec![2, 1]), c(1.5, 0.0)),
                (MultiIndex::new(vec![0, 3]), c(-0.5, 0.0)),
            ],
        )
        .unwrap();
        assert!((t.entry(&MultiIndex::new(vec![2, 1])).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!((t.entry(&MultiIndex::new(vec![0, 3])).unwrap() - c(-0.5, 0.0)).norm() < 1e-15);
        let v = t.evaluate(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((v - c(-0.5, 0.0)).norm() < 1e-15);
        assert!(t.is_real());
    }

    #[test]
    fn cubic_with_xyz_term() {
        let b = c(0.7, -0.2);
        let t = SymTensor::from_monomial_coefficients(
            3,
            3,
            [
                (MultiIndex::new(vec![3, 0, 0]), c(1.0, 0.0)),
                (MultiIndex::new(vec![0, 3, 0]), c(1.0, 0.0)),
                (MultiIndex::new(vec![0, 0, 3]), c(1.0, 0.0)),
                (MultiIndex::new(vec![1, 1, 1]), b),
            ],
        )
        .unwrap();
        assert!((t.entry(&MultiIndex::new(vec![1, 1, 1])).unwrap() - b / 6.0).norm() < 1e-15);
        assert!(!t.is_real());
    }

    #[test]
    fn bad_indices_rejected() {
        let wrong_len = SymTensor::from_monomial_coefficients(2, 3, [(MultiIndex::new(vec![3]), c(1.0, 0.0))]);
        assert!(matches!(wrong_len, Err(Error::InvalidIndex(_))));
        let wrong_deg = SymTensor::from_monomial_coefficients(2, 3, [(MultiIndex::new(vec![2, 2]), c(1.0, 0.0))]);
        assert!(matches!(wrong_deg, Err(Error::DegreeMismatch { .. })));
        assert!(matches!(MultiIndex::from_signed(&[1, -1]), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn zero_tensor() {
        let t = SymTensor::from_monomial_coefficients(2, 3, []).unwrap();
        assert_eq!(t.hs_norm(), 0.0);
        assert!(t.is_zero());
        assert_eq!(t.evaluate(&[c(0.3, 0.1), c(-1.0, 2.0)]).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn sum_of_powers_values() {
        let t = SymTensor::sum_of_powers(2, 4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = t.evaluate(&[c(h, 0.0), c(h, 0.0)]).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        let x = [c(0.3, 0.4), c(-1.1, 0.2)];
        let f = t.grad_map_f(&x).unwrap();
        for i in 0..2 {
            assert!((f[i] - x[i].powu(3)).norm() < 1e-14);
        }
        let h = t.map_h(&x).unwrap();
        for i in 0..2 {
            assert!((h[i] - x[i].powu(9)).norm() < 1e-12);
        }
    }

    #[test]
    fn example_one_gradient_at_e1() {
        let t = SymTensor::from_monomial_coefficients(
            2,
            3,
            [
                (MultiIndex::new(vec![3, 0]), c(0.3104, 0.0)),
                (MultiIndex::new(vec![2, 1]), c(-1.4598, 0.0)),
                (MultiIndex::new(vec![1, 2]), c(-0.6558, 0.0)),
                (MultiIndex::new(vec![0, 3]), c(0.2235, 0.0)),
            ],
        )
        .unwrap();
        let f = t.grad_map_f(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((f[0] - c(0.3104, 0.0)).norm() < 1e-14);
        assert!((f[1] - c(-1.4598 / 3.0, 0.0)).norm() < 1e-14);
        assert!(t.grad_map_f(&[c(0.0, 0.0); 2]).unwrap().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn hs_norms() {
        let t = SymTensor::from_monomial_coefficients(2, 3, [(MultiIndex::new(vec![2, 1]), c(3f64.sqrt(), 0.0))]).unwrap();
        assert!((t.hs_norm() - 1.0).abs() < 1e-15);
        for j in multi_indices(4, 3) {
            assert!((SymTensor::dicke(&j).unwrap().hs_norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn two_monomial_cases() {
        let t = SymTensor::from_monomial_coefficients(
            2,
            3,
            [(MultiIndex::new(vec![3, 0]), c(-2.0, 0.0)), (MultiIndex::new(vec![0, 3]), c(0.0, 1.0))],
        )
        .unwrap();
        let (g, flag) = t.two_monomial_normalize();
        assert!(flag && g.is_real());
        assert_eq!(g.entry(&MultiIndex::new(vec![3, 0])).unwrap(), c(2.0, 0.0));
        assert_eq!(g.entry(&MultiIndex::new(vec![0, 3])).unwrap(), c(1.0, 0.0));

        let three = SymTensor::from_monomial_coefficients(
            2,
            3,
            [
                (MultiIndex::new(vec![3, 0]), c(1.0, 0.0)),
                (MultiIndex::new(vec![2, 1]), c(1.0, 0.0)),
                (MultiIndex::new(vec![0, 3]), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        assert!(!three.two_monomial_normalize().1);

        let e4 = SymTensor::from_monomial_coefficients(
            2,
            4,
            [
                (MultiIndex::new(vec![4, 0]), c(1.0 / 3f64.sqrt(), 0.0)),
                (MultiIndex::new(vec![1, 3]), c(8f64.sqrt() / 3f64.sqrt(), 0.0)),
            ],
        )
        .unwrap();
        let (g, flag) = e4.two_monomial_normalize();
        assert!(flag);
        assert_eq!(g.fj(), e4.fj());
    }

    #[test]
    fn graph_quartics() {
        let k3 = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        let t = SymTensor::graph_quartic(&k3).unwrap();
        assert!((t.hs_norm() - 2f64.sqrt()).abs() < 1e-14);
        let edge = vec![vec![0, 1], vec![1, 0]];
        let t = SymTensor::graph_quartic(&edge).unwrap();
        assert!((t.hs_norm() - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        let x = [c(0.5, 0.0), c(2.0, 0.0)];
        assert!((t.evaluate(&x).unwrap() - c(2.0 * 0.25 * 4.0, 0.0)).norm() < 1e-14);
        assert!(matches!(SymTensor::graph_quartic(&[vec![0, 0], vec![0, 0]]), Err(Error::InvalidGraph(_))));
        assert!(matches!(SymTensor::graph_quartic(&[vec![0, 1], vec![0, 0]]), Err(Error::InvalidGraph(_))));
        assert!(matches!(SymTensor::graph_quartic(&[vec![1, 1], vec![1, 0]]), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn qubit_round_trip() {
        let s = vec![c(0.1, 0.2), c(-0.3, 0.0), c(0.5, -0.1), c(0.7, 0.0)];
        let t = SymTensor::from_qubit_coeffs(&s).unwrap();
        assert_eq!(t.qubit_coeffs().unwrap(), s);
        assert_eq!(t.entry(&MultiIndex::new(vec![3, 0])).unwrap(), s[0]);
        assert_eq!(t.entry(&MultiIndex::new(vec![0, 3])).unwrap(), s[3]);
    }

    #[test]
    fn compose_with_permutation() {
        let t = SymTensor::from_monomial_coefficients(
            2,
            3,
            [(MultiIndex::new(vec![2, 1]), c(1.0, 0.0)), (MultiIndex::new(vec![0, 3]), c(2.0, 0.0))],
        )
        .unwrap();
        let swap = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
        let g = t.compose_linear(&swap).unwrap();
        let x = [c(0.3, -0.2), c(1.2, 0.5)];
        let y = [x[1], x[0]];
        assert!((g.evaluate(&x).unwrap() - t.evaluate(&y).unwrap()).norm() < 1e-14);
    }
}
