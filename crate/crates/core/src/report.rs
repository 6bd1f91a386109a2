use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Univariate,
    HomotopyF,
    HomotopyH,
    ClosedForm,
    Perturbation,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Univariate => "univariate",
            Method::HomotopyF => "homotopy-F",
            Method::HomotopyH => "homotopy-H",
            Method::ClosedForm => "closed-form",
            Method::Perturbation => "perturbation",
        }
    }
}

/// Solver bookkeeping attached to every norm computation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Diagnostics {
    pub expected_paths: Option<u64>,
    pub found_with_multiplicity: Option<usize>,
    pub distinct_points: Option<usize>,
    pub diverged_paths: Option<usize>,
    pub failed_paths: Option<usize>,
    pub real_points: Option<usize>,
    pub poly_degree: Option<usize>,
    pub root_count: Option<usize>,
    pub distinct_roots: Option<usize>,
    pub real_root_count: Option<usize>,
    pub max_multiplicity: Option<usize>,
    pub exceptional: Option<String>,
    pub singular: bool,
    pub lower_bound_only: bool,
    pub perturbation_size: Option<f64>,
    pub radius_mismatches: usize,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub field: Field,
    pub method: Method,
    /// Unit vector attaining (or approximating) the value.
    pub witness: Vec<Complex64>,
    pub residual: f64,
    pub hs_norm: f64,
    pub oracle_lower_bound: Option<f64>,
    pub diagnostics: Diagnostics,
}
