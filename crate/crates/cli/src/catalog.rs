//! Named example tensors and the tables built from them.

use num_complex::Complex64;
use symnorm::error::Result;
use symnorm::fixedpoint::{fix_f_points, fix_h_points};
use symnorm::norm::{spectral_norm, NormOptions};
use symnorm::report::Field;
use symnorm::tensor::{MultiIndex, SymTensor};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Binary form `sum_k a_k x_1^{d-k} x_2^k` from `(k, a_k)` pairs.
pub fn binary_form(d: usize, terms: &[(usize, f64)]) -> SymTensor {
    let items = terms.iter().map(|&(k, a)| (MultiIndex::new(vec![(d - k) as u32, k as u32]), c(a, 0.0)));
    SymTensor::from_monomial_coefficients(2, d, items).expect("valid binary form")
}

/// The eight binary forms `ex1`..`ex8`.
pub fn example(name: &str) -> Option<SymTensor> {
    let s3 = 3f64.sqrt();
    let s5 = 5f64.sqrt();
    let big_a = 1.53154f64;
    let r = (1.0 + big_a * big_a).sqrt();
    let t = match name {
        "ex1" => binary_form(3, &[(0, 0.3104), (1, -1.4598), (2, -0.6558), (3, 0.2235)]),
        "ex2" => binary_form(3, &[(1, 1.5), (3, -0.5)]),
        "ex3" => binary_form(3, &[(0, 1.0 / s5), (1, -1.5 / s5), (2, -3.0 / s5), (3, 0.5 / s5)]),
        "ex4" => binary_form(4, &[(0, 1.0 / s3), (3, 8f64.sqrt() / s3)]),
        "ex5" => binary_form(5, &[(0, 1.0 / r), (4, s5 * big_a / r)]),
        "ex6" => binary_form(6, &[(1, s3), (5, s3)]),
        "ex7" => binary_form(7, &[(1, 3.5f64.sqrt()), (6, 3.5f64.sqrt())]),
        "ex8" => binary_form(8, &[(1, 4.0 * 0.336 * 2f64.sqrt()), (6, 4.0 * 0.3705 * 7f64.sqrt())]),
        _ => return None,
    };
    Some(t)
}

pub const EXAMPLES: [&str; 8] = ["ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7", "ex8"];

/// `f_e = sqrt(1 - |e|^2) f + e h`.
pub fn blend(f: &SymTensor, h: &SymTensor, e: Complex64) -> SymTensor {
    f.combine(c((1.0 - e.norm_sqr()).sqrt(), 0.0), h, e).expect("same shape")
}

/// The Dicke element blended into each binary example.
pub fn blend_partner(name: &str) -> Option<SymTensor> {
    let j = match name {
        "ex4" => [2, 2],
        "ex5" => [3, 2],
        "ex6" => [3, 3],
        "ex7" => [4, 3],
        "ex8" => [4, 4],
        _ => return None,
    };
    Some(SymTensor::dicke(&MultiIndex::new(j.to_vec())).expect("valid index"))
}

pub const T_GRID: [(f64, &str); 4] = [(0.2, "1/5"), (0.25, "1/4"), (1.0 / 3.0, "1/3"), (0.5, "1/2")];

pub fn omega_grid() -> [(Complex64, &'static str); 5] {
    let h = 3f64.sqrt() / 2.0;
    [(c(1.0, 0.0), "1"), (c(-1.0, 0.0), "-1"), (c(0.0, 1.0), "i"), (c(0.5, h), "1/2+sqrt(3)/2 i"), (c(-0.5, h), "-1/2+sqrt(3)/2 i")]
}

/// `a (x1^3 + x2^3 + x3^3) + b x1 x2 x3`.
pub fn qutrit(a: Complex64, b: Complex64) -> SymTensor {
    let m = |v: [u32; 3], z: Complex64| (MultiIndex::new(v.to_vec()), z);
    SymTensor::from_monomial_coefficients(3, 3, [m([3, 0, 0], a), m([0, 3, 0], a), m([0, 0, 3], a), m([1, 1, 1], b)]).expect("valid")
}

pub fn qutrit_rows() -> Vec<(Complex64, Complex64, &'static str, &'static str)> {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    vec![
        (c(1.0 / 3.0, 0.0), c(2.0, 0.0), "1/3", "2"),
        (c(0.5, 0.0), c(1.5f64.sqrt(), 0.0), "1/2", "sqrt(3/2)"),
        (c(1.0 / 3.0, 0.0), c(-2.0, 0.0), "1/3", "-2"),
        (c(0.5, 0.0), c(-(1.5f64.sqrt()), 0.0), "1/2", "-sqrt(3/2)"),
        (c(0.0, 0.0), c(s6, 0.0), "0", "sqrt(6)"),
        (c(1.0 / s3, 0.0), c(0.0, 0.0), "1/sqrt(3)", "0"),
        (c(1.0 / 6.0, s3 / 6.0), c(s2, -s2), "1/6+sqrt(3)/6 i", "sqrt(2)-sqrt(2) i"),
        (c(0.25, s3 / 4.0), c(s6 / 4.0, 3.0 * s2 / 4.0), "1/4+sqrt(3)/4 i", "sqrt(6)/4+3sqrt(2)/4 i"),
    ]
}

/// `a x1^2 x4 + 2 b x1 x2 x3`, scaled to unit Hilbert-Schmidt norm.
pub fn w_tensor_w(a: Complex64, b: Complex64) -> SymTensor {
    let m = |v: [u32; 4], z: Complex64| (MultiIndex::new(v.to_vec()), z);
    let s = SymTensor::from_monomial_coefficients(4, 3, [m([2, 0, 0, 1], a), m([1, 1, 1, 0], b * 2.0)]).expect("valid");
    s.scale(c(1.0 / s.hs_norm(), 0.0))
}

pub fn wxw_rows() -> Vec<(Complex64, Complex64, &'static str, &'static str)> {
    let (s2, s3, s5, s6) = (2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt(), 6f64.sqrt());
    vec![
        (c(1.0, 0.0), c(1.0, 0.0), "1", "1"),
        (c(s2 / 2.0, 0.0), c(s5 / 2.0, 0.0), "sqrt(2)/2", "sqrt(5)/2"),
        (c(s5 / 2.0, 0.0), c((7.0f64 / 8.0).sqrt(), 0.0), "sqrt(5)/2", "sqrt(7/8)"),
        (c(s2 / 2.0, s2 / 2.0), c(0.5, s3 / 2.0), "sqrt(2)/2+sqrt(2)/2 i", "1/2+sqrt(3)/2 i"),
        (
            c(s2 / 2.0, 0.0) * c(0.5, -s3 / 2.0),
            c(s5 / 2.0, 0.0) * c(s3 / 4.0, 13f64.sqrt() / 4.0),
            "sqrt(2)/2 (1/2-sqrt(3)/2 i)",
            "sqrt(5)/2 (sqrt(3)/4+sqrt(13)/4 i)",
        ),
        (
            c(s6 / 2.0, 0.0) * c(s2 / 2.0, s2 / 2.0),
            c(s3 / 2.0, 0.0) * c(s3 / 2.0, 0.5),
            "sqrt(6)/2 (sqrt(2)/2+sqrt(2)/2 i)",
            "sqrt(3)/2 (sqrt(3)/2+1/2 i)",
        ),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Count(usize),
    Value(f64),
    Missing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// Canonical table name for a name or alias.
pub fn table_name(name: &str) -> Option<&'static str> {
    Some(match name {
        "e4" | "table1" => "e4",
        "e5" | "table2" => "e5",
        "e6" | "table3" => "e6",
        "e7" => "e7",
        "e8" => "e8",
        "qutrit" | "table4" => "qutrit",
        "wxw" | "table5" => "wxw",
        _ => return None,
    })
}

pub const TABLES: [&str; 7] = ["e4", "e5", "e6", "e7", "e8", "qutrit", "wxw"];

pub fn build_table(name: &str, opts: &NormOptions) -> Result<Option<Table>> {
    let Some(name) = table_name(name) else { return Ok(None) };
    let table = match name {
        "qutrit" => qutrit_table(opts)?,
        "wxw" => wxw_table(opts)?,
        _ => blend_table(&format!("ex{}", &name[1..]), opts)?,
    };
    Ok(Some(table))
}

fn blend_table(example_name: &str, opts: &NormOptions) -> Result<Table> {
    let f = example(example_name).expect("known example");
    let h = blend_partner(example_name).expect("known example");
    let mut header = vec!["omega".to_string()];
    header.extend(T_GRID.iter().map(|(_, l)| format!("t={l}")));
    let mut rows = Vec::new();
    for (w, wl) in omega_grid() {
        let mut row = vec![Cell::Text(wl.to_string())];
        for (t, _) in T_GRID {
            let fe = blend(&f, &h, w * t);
            row.push(Cell::Value(spectral_norm(&fe, opts)?.value));
        }
        rows.push(row);
    }
    Ok(Table { header, rows })
}

fn qutrit_table(opts: &NormOptions) -> Result<Table> {
    let header = ["a", "b", "real_fixed_points", "complex_fixed_points", "real_norm", "complex_norm"];
    let solve = &opts.fixed.solve;
    let mut rows = Vec::new();
    for (a, b, al, bl) in qutrit_rows() {
        let s = qutrit(a, b);
        let f = fix_f_points(&s, solve)?;
        let h = fix_h_points(&s, solve)?;
        let real = f.real_count();
        let real_norm = if s.is_real() { Cell::Value(spectral_norm(&s, &NormOptions { field: Field::Real, ..opts.clone() })?.value) } else { Cell::Missing };
        let complex_norm = spectral_norm(&s, &NormOptions { field: Field::Complex, ..opts.clone() })?.value;
        rows.push(vec![
            Cell::Text(al.into()),
            Cell::Text(bl.into()),
            Cell::Count(real),
            Cell::Count(h.counts.found.saturating_sub(real)),
            real_norm,
            Cell::Value(complex_norm),
        ]);
    }
    Ok(Table { header: header.iter().map(|s| s.to_string()).collect(), rows })
}

fn wxw_table(opts: &NormOptions) -> Result<Table> {
    let mut rows = Vec::new();
    for (a, b, al, bl) in wxw_rows() {
        let v = spectral_norm(&w_tensor_w(a, b), &NormOptions { field: Field::Complex, ..opts.clone() })?.value;
        rows.push(vec![Cell::Text(al.into()), Cell::Text(bl.into()), Cell::Value(v)]);
    }
    Ok(Table { header: vec!["a".into(), "b".into(), "complex_norm".into()], rows })
}

/// Rounds to four decimals with ties to even.
pub fn four_decimals(v: f64) -> String {
    format!("{:.4}", (v * 1e4).round_ties_even() / 1e4)
}

impl Table {
    /// Header row plus data rows, comma separated, LF terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Count(k) => k.to_string(),
                    Cell::Value(v) => four_decimals(*v),
                    Cell::Missing => "-".into(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_have_unit_norm() {
        for name in EXAMPLES {
            let hs = example(name).unwrap().hs_norm();
            assert!((hs - 1.0).abs() < 1e-3, "{name}: {hs}");
        }
        for name in ["ex4", "ex5", "ex6", "ex7", "ex8"] {
            let h = blend_partner(name).unwrap();
            assert_eq!(h.d(), example(name).unwrap().d());
        }
    }

    #[test]
    fn rounding_is_half_even() {
        assert_eq!(four_decimals(1.03125), "1.0312");
        assert_eq!(four_decimals(1.09375), "1.0938");
        assert_eq!(four_decimals(0.5), "0.5000");
        assert_eq!(four_decimals(0.70271), "0.7027");
    }

    #[test]
    fn aliases() {
        assert_eq!(table_name("table1"), Some("e4"));
        assert_eq!(table_name("table4"), Some("qutrit"));
        assert_eq!(table_name("nope"), None);
    }

    #[test]
    fn qutrit_rows_are_states() {
        for (a, b, _, _) in qutrit_rows() {
            assert!((qutrit(a, b).hs_norm() - 1.0).abs() < 1e-12);
        }
    }
}
