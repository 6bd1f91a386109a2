//! Entanglement measures and Dicke-basis closed forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{multi_indices, MultiIndex};

const STATE_TOL: f64 = 1e-9;
/// Largest `|J(d,n)|` scanned when confirming minimality.
const SCAN_LIMIT: u128 = 200_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub sigma_norm: f64,
    pub eta: f64,
    pub geo_distance: Option<f64>,
    pub bounds: Option<(f64, f64)>,
    pub warnings: Vec<String>,
}

/// `-log2(sigma^2)`.
pub fn eta(sigma_norm: f64) -> f64 {
    -2.0 * sigma_norm.log2()
}

/// Distance of a unit tensor to the product states.
pub fn geo_distance(sigma_norm: f64, hs_norm: f64) -> Result<f64> {
    if (hs_norm - 1.0).abs() > STATE_TOL {
        return Err(Error::StateNormalization(hs_norm));
    }
    Ok((2.0 * (1.0 - sigma_norm)).max(0.0).sqrt())
}

pub fn measures(sigma_norm: f64, hs_norm: f64) -> Result<EntanglementReport> {
    if !(sigma_norm > 0.0 && sigma_norm <= hs_norm * (1.0 + 1e-12)) {
        return Err(Error::Internal(format!("spectral norm {sigma_norm} outside (0, {hs_norm}]")));
    }
    let mut warnings = Vec::new();
    let geo = match geo_distance(sigma_norm, hs_norm) {
        Ok(g) => Some(g),
        Err(e) => {
            warnings.push(format!("geometric distance skipped: {e}"));
            None
        }
    };
    Ok(EntanglementReport { sigma_norm, eta: eta(sigma_norm), geo_distance: geo, bounds: None, warnings })
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `j ln j` with `0^0 = 1`.
fn j_ln_j(j: u64) -> f64 {
    if j == 0 {
        0.0
    } else {
        j as f64 * (j as f64).ln()
    }
}

/// `ln ||S(j)||_sigma^2`.
fn ln_dicke_sq(j: &[u32]) -> f64 {
    let d: u64 = j.iter().map(|&v| v as u64).sum();
    ln_factorial(d) - j_ln_j(d) + j.iter().map(|&v| j_ln_j(v as u64) - ln_factorial(v as u64)).sum::<f64>()
}

/// Spectral norm of the Dicke basis element `S(j)`.
pub fn dicke_norm(j: &MultiIndex) -> Result<f64> {
    if j.is_empty() || j.degree() == 0 {
        return Err(Error::InvalidIndex(format!("{:?} has no entries or degree 0", j.j)));
    }
    Ok((0.5 * ln_dicke_sq(&j.j)).exp())
}

/// `eta(S(j))` in bits, computed without forming `d^d`.
pub fn dicke_eta(j: &MultiIndex) -> Result<f64> {
    if j.is_empty() || j.degree() == 0 {
        return Err(Error::InvalidIndex(format!("{:?} has no entries or degree 0", j.j)));
    }
    Ok(-ln_dicke_sq(&j.j) / std::f64::consts::LN_2)
}

/// The balanced index `S(d,n)`.
pub fn balanced_index(d: usize, n: usize) -> MultiIndex {
    let lo = (d / n) as u32;
    let hi = d.div_ceil(n) as u32;
    let l = n * d.div_ceil(n) - d;
    MultiIndex::new((0..n).map(|k| if k < l { lo } else { hi }).collect())
}

fn count_indices(d: usize, n: usize) -> u128 {
    crate::tensor::binomial((n + d - 1) as u64, (n - 1) as u64)
}

/// The Dicke element of smallest spectral norm in `J(d,n)` with its norm.
pub fn most_entangled_dicke(d: usize, n: usize) -> Result<(MultiIndex, f64)> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidIndex(format!("need d, n >= 2, got d={d}, n={n}")));
    }
    let j = balanced_index(d, n);
    let value = dicke_norm(&j)?;
    if count_indices(d, n) <= SCAN_LIMIT {
        let best = multi_indices(d, n).iter().map(|k| ln_dicke_sq(&k.j)).fold(f64::INFINITY, f64::min);
        if ln_dicke_sq(&j.j) > best + 1e-12 {
            return Err(Error::Internal(format!("balanced index is not minimal for d={d}, n={n}")));
        }
    }
    Ok((j, value))
}

/// Lower and upper bounds on the largest symmetric entanglement, in bits.
pub fn eta_sym_bounds(d: usize, n: usize) -> Result<(f64, f64)> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidIndex(format!("need d, n >= 2, got d={d}, n={n}")));
    }
    let lower = dicke_eta(&balanced_index(d, n))?;
    let ln_binom = ln_factorial((n + d - 1) as u64) - ln_factorial((n - 1) as u64) - ln_factorial(d as u64);
    Ok((lower, ln_binom / std::f64::consts::LN_2))
}

/// Large-`d` expansion of `eta(S(d,n))`, including the `2 pi` term from Stirling's formula.
pub fn eta_balanced_asymptotic(d: usize, n: usize) -> f64 {
    let (d, n) = (d as f64, n as f64);
    0.5 * ((n - 1.0) * d.log2() - n * n.log2()) + 0.5 * (n - 1.0) * (2.0 * std::f64::consts::PI).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let v = dicke_norm(&MultiIndex::new(vec![2, 1])).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
        let v = dicke_norm(&MultiIndex::new(vec![2, 2])).unwrap();
        assert!((v - 6f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((dicke_norm(&MultiIndex::new(vec![5, 0, 0])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn balanced_examples() {
        let (j, v) = most_entangled_dicke(3, 3).unwrap();
        assert_eq!(j.j, vec![1, 1, 1]);
        assert!((v - 2f64.sqrt() / 3.0).abs() < 1e-15);
        let (j, v) = most_entangled_dicke(5, 2).unwrap();
        assert_eq!(j.j, vec![2, 3]);
        assert!((v - 6.0 * 6f64.sqrt() / 25.0).abs() < 1e-15);
        let (_, v) = most_entangled_dicke(4, 4).unwrap();
        assert!((v - (3.0f64 / 32.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn measures_of_states() {
        let r = measures(2.0 / 3.0, 1.0).unwrap();
        assert!((r.eta - (9.0f64 / 4.0).log2()).abs() < 1e-14);
        let r = measures(1.0, 1.0).unwrap();
        assert_eq!(r.eta, 0.0);
        assert_eq!(r.geo_distance, Some(0.0));
        let s = 2f64.sqrt() / 3.0;
        let r = measures(s, 1.0).unwrap();
        assert!((r.geo_distance.unwrap() - (2.0 * (1.0 - s)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn non_state_keeps_eta() {
        let r = measures(0.5, 2.0).unwrap();
        assert_eq!(r.geo_distance, None);
        assert_eq!(r.warnings.len(), 1);
        assert!(matches!(geo_distance(0.5, 2.0), Err(Error::StateNormalization(_))));
    }

    #[test]
    fn bounds() {
        let (lo, hi) = eta_sym_bounds(3, 2).unwrap();
        assert!((lo - (9.0f64 / 4.0).log2()).abs() < 1e-14);
        assert!((hi - 2.0).abs() < 1e-14);
        for d in 2..=20 {
            let (_, hi) = eta_sym_bounds(d, 2).unwrap();
            assert!((hi - ((d + 1) as f64).log2()).abs() < 1e-12);
            for n in 2..=20 {
                let (lo, hi) = eta_sym_bounds(d, n).unwrap();
                assert!(lo <= hi + 1e-12, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn large_degree_is_finite() {
        let v = dicke_norm(&balanced_index(1000, 2)).unwrap();
        assert!(v > 0.0 && v < 1.0);
        let eta = dicke_eta(&balanced_index(1000, 2)).unwrap();
        assert!((eta - eta_balanced_asymptotic(1000, 2)).abs() < 0.01);
    }

    #[test]
    fn invalid_index() {
        assert!(matches!(dicke_norm(&MultiIndex::new(vec![])), Err(Error::InvalidIndex(_))));
        assert!(most_entangled_dicke(1, 3).is_err());
    }
}
