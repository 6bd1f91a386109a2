mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use symnorm::unipoly::{roots, ComplexPolynomial, RootSet};

fn expand(set: &RootSet, lead: Complex64) -> Vec<Complex64> {
    let mut c = vec![lead];
    for r in &set.roots {
        for _ in 0..r.multiplicity {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r.value;
            }
            c = next;
        }
    }
    c
}

fn max_abs(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reconstruction_and_count(seed in any::<u64>(), deg in 1usize..=30) {
        let mut r = rng(seed);
        let coeffs: Vec<Complex64> = (0..=deg).map(|_| cgauss(&mut r)).collect();
        let p = ComplexPolynomial::new(coeffs.clone());
        let set = roots(&p, 1e-10).unwrap();
        prop_assert_eq!(set.total_multiplicity(), deg);
        let back = expand(&set, p.leading());
        let scale = max_abs(&coeffs);
        for (a, b) in back.iter().zip(&coeffs) {
            prop_assert!((a - b).norm() <= 1e-6 * scale, "{} vs {}", a, b);
        }
    }

    #[test]
    fn conjugate_symmetry(seed in any::<u64>(), deg in 1usize..=30) {
        let mut r = rng(seed);
        let coeffs: Vec<f64> = (0..=deg).map(|_| gauss(&mut r)).collect();
        let set = roots(&ComplexPolynomial::from_real(&coeffs), 1e-10).unwrap();
        for root in &set.roots {
            let target = root.value.conj();
            let twin = set.roots.iter().find(|o| (o.value - target).norm() <= 1e-7 * (1.0 + target.norm()));
            prop_assert!(twin.is_some(), "no conjugate for {}", root.value);
            prop_assert_eq!(twin.unwrap().multiplicity, root.multiplicity);
        }
    }

    #[test]
    fn known_roots_with_multiplicity(seed in any::<u64>(), simple in 1usize..=6, double in 0usize..=2) {
        let mut r = rng(seed);
        let mut values: Vec<Complex64> = (0..simple + double).map(|_| cgauss(&mut r)).collect();
        // Keep roots apart so the multiplicities are well defined.
        values.retain(|_| true);
        for i in 0..values.len() {
            for k in 0..i {
                prop_assume!((values[i] - values[k]).norm() > 0.2);
            }
        }
        let mut p = ComplexPolynomial::one();
        for (i, v) in values.iter().enumerate() {
            let lin = ComplexPolynomial::new(vec![-v, Complex64::new(1.0, 0.0)]);
            p = p.mul(&lin).unwrap();
            if i >= simple {
                p = p.mul(&lin).unwrap();
            }
        }
        let set = roots(&p, 1e-10).unwrap();
        prop_assert_eq!(set.total_multiplicity(), simple + 2 * double);
        for (i, v) in values.iter().enumerate() {
            let found = set.roots.iter().find(|x| (x.value - v).norm() < 1e-5).expect("root recovered");
            prop_assert_eq!(found.multiplicity, if i >= simple { 2 } else { 1 });
        }
    }
}
