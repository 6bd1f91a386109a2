use num_complex::Complex64;
use proptest::prelude::*;
use symnorm::entanglement::{balanced_index, dicke_eta, dicke_norm, eta_balanced_asymptotic, most_entangled_dicke};
use symnorm::norm::{spectral_norm, NormOptions};
use symnorm::tensor::{multi_indices, MultiIndex, SymTensor};

/// `prod (j_k/d)^{j_k}` times `c(j)`, evaluated by brute force in floating point.
fn naive_norm_sq(j: &[u32]) -> f64 {
    let d: u32 = j.iter().sum();
    let mut c = 1.0;
    for k in 1..=d {
        c *= k as f64;
    }
    let mut v = c;
    for &jk in j {
        for k in 1..=jk {
            v /= k as f64;
        }
        v *= (jk as f64 / d as f64).powi(jk as i32);
    }
    v
}

#[test]
fn balanced_index_is_minimal() {
    for n in 2..=4 {
        for d in 2..=10 {
            let b = balanced_index(d, n);
            let vb = dicke_norm(&b).unwrap();
            let min = multi_indices(d, n).iter().map(|j| dicke_norm(j).unwrap()).fold(f64::INFINITY, f64::min);
            assert!((vb - min).abs() < 1e-14, "d={d} n={n}");
            let (j, v) = most_entangled_dicke(d, n).unwrap();
            assert_eq!(j, b);
            assert_eq!(v, vb);
        }
    }
}

#[test]
fn log_space_matches_direct_product() {
    for n in 2..=4 {
        for d in 1..=12 {
            for j in multi_indices(d, n) {
                let direct = naive_norm_sq(&j.j).sqrt();
                assert!((dicke_norm(&j).unwrap() - direct).abs() < 1e-13, "{:?}", j.j);
            }
        }
    }
}

fn pipeline_norm(j: &MultiIndex) -> f64 {
    let s = SymTensor::dicke(j).unwrap();
    assert!((s.hs_norm() - 1.0).abs() < 1e-12);
    spectral_norm(&s, &NormOptions::default()).unwrap().value
}

#[test]
fn agrees_with_two_variable_pipeline() {
    for d in 2..=8 {
        for j in multi_indices(d, 2) {
            let v = pipeline_norm(&j);
            let c = dicke_norm(&j).unwrap();
            assert!((v - c).abs() < 1e-6, "{:?}: {v} vs {c}", j.j);
        }
    }
}

#[test]
fn agrees_with_fixed_point_pipeline() {
    for n in 3..=4 {
        for d in 2..=5 {
            let j = balanced_index(d, n);
            let v = pipeline_norm(&j);
            let c = dicke_norm(&j).unwrap();
            assert!((v - c).abs() < 1e-6, "{:?}: {v} vs {c}", j.j);
        }
    }
}

#[test]
fn asymptotic_expansion() {
    for n in 2..=4 {
        let d = 1000;
        let e = dicke_eta(&balanced_index(d, n)).unwrap();
        assert!((e - eta_balanced_asymptotic(d, n)).abs() < 0.01, "n={n}");
    }
}

proptest! {
    #[test]
    fn eta_is_log_of_norm(j in proptest::collection::vec(0u32..40, 2..6)) {
        prop_assume!(j.iter().sum::<u32>() > 0);
        let j = MultiIndex::new(j);
        let v = dicke_norm(&j).unwrap();
        let e = dicke_eta(&j).unwrap();
        prop_assert!((e + 2.0 * v.log2()).abs() < 1e-10);
        prop_assert!(v > 0.0 && v <= 1.0 + 1e-15);
    }

    #[test]
    fn monomial_scaling(a in 0.1f64..10.0, phase in 0.0f64..std::f64::consts::TAU, d in 2usize..7) {
        // Scaling a Dicke state scales its norm.
        let k = d / 2;
        let j = MultiIndex::new(vec![k as u32, (d - k) as u32]);
        let s = SymTensor::dicke(&j).unwrap().scale(Complex64::from_polar(a, phase));
        let v = spectral_norm(&s, &NormOptions::default()).unwrap().value;
        prop_assert!((v - a * dicke_norm(&j).unwrap()).abs() < 1e-8 * a);
    }
}
