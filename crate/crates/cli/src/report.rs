//! Machine-readable command reports.

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};
use symnorm::entanglement;
use symnorm::error::Error;
use symnorm::norm;
use symnorm::oracle::Verdict;
use symnorm::report::{Diagnostics, Field, NormReport};
use symnorm::tensor::SymTensor;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub lower_bound: f64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub tensor_digest: String,
    pub n: usize,
    pub d: usize,
    pub field: Field,
    pub method: Option<&'static str>,
    pub value: Option<f64>,
    pub witness: Option<Vec<C>>,
    pub hs_norm: f64,
    pub residual: Option<f64>,
    pub eta: Option<f64>,
    pub geo_distance: Option<f64>,
    pub eta_sym_bounds: Option<(f64, f64)>,
    pub oracle: Option<OracleSummary>,
    pub diagnostics: Diagnostics,
    pub error: Option<String>,
    pub warnings: Vec<String>,
    pub wall_time_s: f64,
}

/// SHA-256 over `n`, `d` and the little-endian bits of every `f_j`.
pub fn tensor_digest(s: &SymTensor) -> String {
    let mut h = Sha256::new();
    h.update((s.n() as u64).to_le_bytes());
    h.update((s.d() as u64).to_le_bytes());
    for z in s.fj() {
        h.update(z.re.to_bits().to_le_bytes());
        h.update(z.im.to_bits().to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    fn empty(command: &str, s: &SymTensor, field: Field) -> Self {
        Report {
            command: command.to_string(),
            tensor_digest: tensor_digest(s),
            n: s.n(),
            d: s.d(),
            field,
            method: None,
            value: None,
            witness: None,
            hs_norm: s.hs_norm(),
            residual: None,
            eta: None,
            geo_distance: None,
            eta_sym_bounds: None,
            oracle: None,
            diagnostics: Diagnostics::default(),
            error: None,
            warnings: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    pub fn from_norm(command: &str, s: &SymTensor, rep: &NormReport) -> Self {
        let mut r = Report::empty(command, s, rep.field);
        r.method = Some(rep.method.tag());
        r.value = Some(rep.value);
        r.witness = Some(rep.witness.iter().map(|&z| z.into()).collect());
        r.residual = Some(rep.residual);
        r.diagnostics = rep.diagnostics.clone();
        if let (Some(lb), Some(v)) = (rep.oracle_lower_bound, norm::verdict(rep)) {
            r.oracle = Some(OracleSummary { lower_bound: lb, verdict: v });
        }
        match entanglement::measures(rep.value, rep.hs_norm) {
            Ok(m) => {
                r.eta = Some(m.eta);
                r.geo_distance = m.geo_distance;
                r.warnings.extend(m.warnings);
            }
            Err(e) => r.warnings.push(format!("entanglement measures skipped: {e}")),
        }
        r
    }

    /// Report for a failed solve, keeping whatever counts the solver returned.
    pub fn from_error(command: &str, s: &SymTensor, field: Field, err: &Error) -> Self {
        let mut r = Report::empty(command, s, field);
        r.error = Some(err.to_string());
        if let Error::TrackingUnreliable { failed, total, partial } = err {
            r.diagnostics.expected_paths = Some(*total as u64);
            r.diagnostics.failed_paths = Some(*failed);
            r.diagnostics.diverged_paths = Some(partial.diverged_paths);
            r.diagnostics.found_with_multiplicity = Some(partial.found_with_multiplicity());
            r.diagnostics.distinct_points = Some(partial.points.len());
        }
        r
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.oracle.as_ref().map(|o| o.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Aligned key/value lines with four decimals.
    pub fn to_text(&self) -> String {
        let f4 = |v: f64| format!("{v:.4}");
        let mut lines: Vec<(String, String)> = vec![
            ("field".into(), format!("{:?}", self.field).to_lowercase()),
            ("n, d".into(), format!("{}, {}", self.n, self.d)),
        ];
        if let Some(m) = self.method {
            lines.push(("method".into(), m.into()));
        }
        match self.value {
            Some(v) => lines.push(("spectral norm".into(), f4(v))),
            None => lines.push(("spectral norm".into(), "-".into())),
        }
        lines.push(("hs norm".into(), f4(self.hs_norm)));
        if let Some(o) = &self.oracle {
            let tag = match o.verdict {
                Verdict::Pass => "PASS".to_string(),
                Verdict::Gap { excess } => format!("GAP {excess:.2e}"),
            };
            lines.push(("oracle bound".into(), format!("{} ({tag})", f4(o.lower_bound))));
        }
        if let Some(e) = self.eta {
            lines.push(("eta".into(), f4(e)));
        }
        if let Some(g) = self.geo_distance {
            lines.push(("geo distance".into(), f4(g)));
        }
        if let Some((lo, hi)) = self.eta_sym_bounds {
            lines.push(("eta_sym bounds".into(), format!("[{}, {}]", f4(lo), f4(hi))));
        }
        let dg = &self.diagnostics;
        if let (Some(e), Some(f)) = (dg.expected_paths, dg.found_with_multiplicity) {
            lines.push(("paths found".into(), format!("{f} of {e}")));
        }
        if let Some(deg) = dg.poly_degree {
            lines.push(("zv-u degree".into(), deg.to_string()));
        }
        if let (Some(r), Some(rr)) = (dg.root_count, dg.real_root_count) {
            lines.push(("roots (real)".into(), format!("{r} ({rr})")));
        }
        if dg.singular {
            lines.push(("singular".into(), "yes".into()));
        }
        if let Some(e) = &self.error {
            lines.push(("error".into(), e.clone()));
        }
        let notes = dg.notes.iter().chain(&self.warnings);
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out: String = lines.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect();
        for note in notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}
