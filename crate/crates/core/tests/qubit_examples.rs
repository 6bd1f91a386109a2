//! Binary-form examples with published spectral norms and root counts.

#![allow(clippy::approx_constant)]

use num_complex::Complex64;
use symnorm::qubit::{ExceptionalClass, QubitCoeffs};
use symnorm::tensor::binomial;

/// `s` from monomial coefficients of `x_1^{d-k} x_2^k`, `k = 0..=d`.
fn s_from_monomials(a: &[f64]) -> Vec<Complex64> {
    let d = a.len() - 1;
    a.iter()
        .enumerate()
        .map(|(k, &v)| Complex64::new(v / binomial(d as u64, k as u64) as f64, 0.0))
        .collect()
}

fn mono(d: usize, terms: &[(usize, f64)]) -> Vec<f64> {
    let mut a = vec![0.0; d + 1];
    for &(k, v) in terms {
        a[k] += v;
    }
    a
}

struct Case {
    name: &'static str,
    a: Vec<f64>,
    complex: f64,
    real: Option<f64>,
    degree: usize,
    real_roots: usize,
}

fn cases() -> Vec<Case> {
    let s5 = 5f64.sqrt();
    let big_a = 1.53154f64;
    let r = (1.0 + big_a * big_a).sqrt();
    vec![
        Case { name: "ex1", a: vec![0.3104, -1.4598, -0.6558, 0.2235], complex: 0.7027, real: Some(0.6205), degree: 5, real_roots: 3 },
        Case { name: "ex2", a: vec![0.0, 1.5, 0.0, -0.5], complex: 0.7071, real: Some(0.5), degree: 4, real_roots: 2 },
        Case {
            name: "ex3",
            a: vec![1.0 / s5, -3.0 / (2.0 * s5), -3.0 / s5, 1.0 / (2.0 * s5)],
            complex: 0.7071,
            real: Some(0.5),
            degree: 5,
            real_roots: 3,
        },
        Case {
            name: "ex4",
            a: mono(4, &[(0, 1.0 / 3f64.sqrt()), (3, 8f64.sqrt() / 3f64.sqrt())]),
            complex: 0.5774,
            real: None,
            degree: 10,
            real_roots: 4,
        },
        Case { name: "ex5", a: mono(5, &[(0, 1.0 / r), (4, s5 * big_a / r)]), complex: 0.5467, real: None, degree: 17, real_roots: 5 },
        Case { name: "ex6", a: mono(6, &[(1, 3f64.sqrt()), (5, 3f64.sqrt())]), complex: 0.4714, real: None, degree: 25, real_roots: 7 },
        Case {
            name: "ex7",
            a: mono(7, &[(1, 3.5f64.sqrt()), (6, 3.5f64.sqrt())]),
            complex: 0.4508,
            real: None,
            degree: 36,
            real_roots: 6,
        },
        Case {
            name: "ex8",
            a: mono(8, &[(1, 4.0 * 0.336 * 2f64.sqrt()), (6, 4.0 * 0.3705 * 7f64.sqrt())]),
            complex: 0.4288,
            real: None,
            degree: 42,
            real_roots: 7,
        },
    ]
}

#[test]
fn published_norms_and_root_counts() {
    for case in cases() {
        let qc = QubitCoeffs::build(&s_from_monomials(&case.a)).unwrap();
        assert_eq!(qc.classify().unwrap(), ExceptionalClass::Generic, "{}", case.name);
        let rep = qc.complex_norm().unwrap();
        let diag = &rep.diagnostics;
        println!(
            "{}: complex {:.6} degree {:?} roots {:?} distinct {:?} real {:?} maxmult {:?}",
            case.name, rep.value, diag.poly_degree, diag.root_count, diag.distinct_roots, diag.real_root_count, diag.max_multiplicity
        );
        assert!((rep.value - case.complex).abs() < 5e-4, "{}: {}", case.name, rep.value);
        assert_eq!(diag.poly_degree, Some(case.degree), "{}", case.name);
        assert_eq!(diag.real_root_count, Some(case.real_roots), "{}", case.name);
        if let Some(real) = case.real {
            let rr = qc.real_norm().unwrap();
            println!("{}: real {:.6}", case.name, rr.value);
            assert!((rr.value - real).abs() < 5e-4, "{}: {}", case.name, rr.value);
        }
    }
}

#[test]
fn example_eight_double_root_at_zero() {
    let a = mono(8, &[(1, 4.0 * 0.336 * 2f64.sqrt()), (6, 4.0 * 0.3705 * 7f64.sqrt())]);
    let qc = QubitCoeffs::build(&s_from_monomials(&a)).unwrap();
    let g = qc.zv_minus_u_trimmed().unwrap();
    let set = symnorm::unipoly::roots(&g, 1e-10).unwrap();
    assert_eq!(set.roots.len(), 41);
    let zero = set.roots.iter().find(|r| r.value.norm() < 1e-9).unwrap();
    assert_eq!(zero.multiplicity, 2);
    assert!(set.roots.iter().filter(|r| r.value.norm() >= 1e-9).all(|r| r.multiplicity == 1));
}
