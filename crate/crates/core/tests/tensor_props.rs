mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use symnorm::tensor::{norm, SymTensor};

fn scaled(x: &[Complex64], t: Complex64) -> Vec<Complex64> {
    x.iter().map(|z| z * t).collect()
}

fn rel_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = 1.0 + norm(a).max(norm(b));
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * scale)
}

/// `<S, T>` summed over all `n^d` ordered index tuples.
fn full_contraction(s: &SymTensor, t: &SymTensor) -> Complex64 {
    let (n, d) = (s.n(), s.d());
    let mut total = Complex64::new(0.0, 0.0);
    let mut tuple = vec![0usize; d];
    loop {
        let mut j = vec![0u32; n];
        for &i in &tuple {
            j[i] += 1;
        }
        let j = symnorm::tensor::MultiIndex::new(j);
        total += s.entry(&j).unwrap() * t.entry(&j).unwrap().conj();
        let mut k = 0;
        loop {
            if k == d {
                return total;
            }
            tuple[k] += 1;
            if tuple[k] < n {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn euler_identity(seed in any::<u64>(), n in 1usize..=4, d in 2usize..=6) {
        let mut r = rng(seed);
        let s = random_tensor(&mut r, n, d, false);
        let x = random_vector(&mut r, n);
        let f = s.evaluate(&x).unwrap();
        let fx = s.grad_map_f(&x).unwrap();
        let euler: Complex64 = x.iter().zip(&fx).map(|(a, b)| a * b).sum();
        prop_assert!((euler - f).norm() <= 1e-12 * (1.0 + f.norm()) * (1.0 + norm(&x)).powi(d as i32));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn homogeneity(seed in any::<u64>(), n in 1usize..=4, d in 2usize..=5) {
        let mut r = rng(seed);
        let s = random_tensor(&mut r, n, d, false);
        let x = unit_vector(&mut r, n);
        let t = cgauss(&mut r);
        let tx = scaled(&x, t);
        let f = s.evaluate(&x).unwrap() * t.powu(d as u32);
        prop_assert!((s.evaluate(&tx).unwrap() - f).norm() <= 1e-12 * (1.0 + f.norm()));
        let fx = scaled(&s.grad_map_f(&x).unwrap(), t.powu(d as u32 - 1));
        prop_assert!(rel_close(&s.grad_map_f(&tx).unwrap(), &fx, 1e-12));
        let factor = t.powu(((d - 1) * (d - 1)) as u32);
        let hx = scaled(&s.map_h(&x).unwrap(), factor);
        prop_assert!(rel_close(&s.map_h(&tx).unwrap(), &hx, 1e-12));
    }

    #[test]
    fn gradient_matches_finite_differences(seed in any::<u64>(), n in 1usize..=4, d in 2usize..=5) {
        let mut r = rng(seed);
        let s = random_tensor(&mut r, n, d, false);
        let x = unit_vector(&mut r, n);
        let fx = s.grad_map_f(&x).unwrap();
        let h = 1e-6;
        for i in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (s.evaluate(&xp).unwrap() - s.evaluate(&xm).unwrap()) / (2.0 * h * d as f64);
            prop_assert!((fd - fx[i]).norm() <= 1e-6, "i={} fd={} F={}", i, fd, fx[i]);
        }
    }

    #[test]
    fn isometry_against_full_entries(seed in any::<u64>(), n in 1usize..=3, d in 2usize..=3) {
        let mut r = rng(seed);
        let s = random_tensor(&mut r, n, d, false);
        let t = random_tensor(&mut r, n, d, false);
        let full = full_contraction(&s, &t);
        prop_assert!((s.hs_inner(&t).unwrap() - full).norm() <= 1e-12);
        prop_assert!((s.hs_norm() - full_contraction(&s, &s).re.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn gradient_bound(seed in any::<u64>(), n in 1usize..=4, d in 2usize..=6) {
        let mut r = rng(seed);
        let s = random_tensor(&mut r, n, d, false);
        let z = random_vector(&mut r, n);
        let lhs = norm(&s.grad_map_f(&z).unwrap());
        let rhs = s.hs_norm() * norm(&z).powi(d as i32 - 1);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }
}

#[test]
fn bound_is_sharp_for_rank_one() {
    let u = [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
    let z = SymTensor::zero(2, 4).unwrap();
    let fj = z.indices().iter().map(|j| u[0].powu(j.j[0]) * u[1].powu(j.j[1])).collect();
    let s = SymTensor::from_fj_vec(2, 4, fj).unwrap();
    let x: Vec<Complex64> = u.iter().map(|c| c.conj()).collect();
    let lhs = norm(&s.grad_map_f(&x).unwrap());
    assert!((lhs - s.hs_norm()).abs() < 1e-14);
}
