//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use symnorm::entanglement::{self, dicke_eta, dicke_norm, most_entangled_dicke};
use symnorm::error::Error;
use symnorm::norm::{spectral_norm, NormOptions, Route};
use symnorm::oracle::Verdict;
use symnorm::qubit::{MajoranaPoint, QubitCoeffs};
use symnorm::report::Field;
use symnorm::tensor::{MultiIndex, SymTensor};

use crate::catalog;
use crate::graph;
use crate::io::TensorFile;
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_GAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "symnorm", version, about = "Spectral norms of symmetric tensors")]
pub struct Cli {
    /// Worker threads for the solvers; SYMNORM_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectral norm of a tensor file.
    Norm(NormArgs),
    /// Spectral norm plus entanglement measures.
    Entangle(NormArgs),
    /// Closed-form norm of a Dicke state.
    Dicke {
        d: usize,
        n: usize,
        /// Explicit index; the balanced one is used when omitted.
        j: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Motzkin-Straus quartic of a graph given as an edge list.
    Graph {
        file: PathBuf,
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Majorana points of a binary form.
    Majorana {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Regenerates a named table as CSV.
    Table {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs the built-in examples against known values.
    Selfcheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Univariate,
    Homotopy,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    pub field: FieldArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Newton corrector tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidIndex(_)
            | Error::DegreeMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidGraph(_)
            | Error::DegreeTooSmall(_)
            | Error::NotReal
            | Error::StateNormalization(_)
    )
}

fn core_failure(e: Error) -> Failure {
    let code = if input_error(&e) { EXIT_USAGE } else { EXIT_SOLVER };
    Failure { code, message: e.to_string() }
}

/// Thread count from `SYMNORM_THREADS`, else `--threads`, else all cores.
pub fn thread_count(flag: Option<usize>) -> Option<usize> {
    std::env::var("SYMNORM_THREADS").ok().and_then(|v| v.trim().parse().ok()).filter(|&k: &usize| k > 0).or(flag.filter(|&k| k > 0))
}

/// Runs the CLI on `args` (program name first), writing results to `out` and
/// messages to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_count(cli.threads) {
        builder = builder.num_threads(k);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_SOLVER;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buf));
    if let Err(e) = out.write_all(&buf) {
        let _ = writeln!(err, "error: write failed: {e}");
        return EXIT_SOLVER;
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Norm(a) => cmd_norm("norm", &a, out),
        Command::Entangle(a) => cmd_norm("entangle", &a, out),
        Command::Dicke { d, n, j, json } => cmd_dicke(d, n, &j, json, out),
        Command::Graph { file, vertices, seed, json } => cmd_graph(&file, vertices, seed, json, out),
        Command::Majorana { file, json } => cmd_majorana(&file, json, out),
        Command::Table { name, seed } => cmd_table(&name, seed, out),
        Command::Selfcheck => cmd_selfcheck(out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_SOLVER, message: format!("write failed: {e}") })
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn load_tensor(path: &Path) -> Result<SymTensor, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = TensorFile::parse(&text).map_err(|e| e.0)?;
    file.to_tensor().map_err(|e| e.0)
}

pub fn norm_options(field: Field, route: Route, tol: f64, seed: u64) -> NormOptions {
    let mut opts = NormOptions::with_field(field);
    opts.route = route;
    opts.fixed.solve.seed = seed;
    opts.fixed.solve.corrector_tol = tol;
    opts
}

/// Report for `norm` and `entangle`; the exit code reflects the oracle verdict.
pub fn norm_report(command: &str, s: &SymTensor, opts: &NormOptions) -> (Report, i32) {
    let start = Instant::now();
    let mut report = match spectral_norm(s, opts) {
        Ok(rep) => Report::from_norm(command, s, &rep),
        Err(e) => {
            let code = if input_error(&e) { EXIT_USAGE } else { EXIT_SOLVER };
            let mut r = Report::from_error(command, s, opts.field, &e);
            r.wall_time_s = start.elapsed().as_secs_f64();
            return (r, code);
        }
    };
    if command == "entangle" && s.n() >= 2 && s.d() >= 2 {
        report.eta_sym_bounds = entanglement::eta_sym_bounds(s.d(), s.n()).ok();
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    let code = verdict_exit_code(&report);
    (report, code)
}

/// `EXIT_GAP` when the attached oracle disagrees with the reported value.
pub fn verdict_exit_code(report: &Report) -> i32 {
    match report.verdict() {
        Some(Verdict::Gap { .. }) => EXIT_GAP,
        _ => EXIT_OK,
    }
}

fn cmd_norm(command: &str, a: &NormArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let s = load_tensor(&a.file).map_err(usage)?;
    let field = match a.field {
        FieldArg::Complex => Field::Complex,
        FieldArg::Real => Field::Real,
    };
    if field == Field::Real && !s.is_real() {
        return Err(usage("--field real requires a tensor with real entries"));
    }
    let route = match a.method {
        MethodArg::Auto => Route::Auto,
        MethodArg::Univariate => Route::Univariate,
        MethodArg::Homotopy => Route::Homotopy,
    };
    if route == Route::Univariate && (s.n() != 2 || s.d() < 3) {
        return Err(usage(format!("--method univariate needs n = 2 and d >= 3, got n = {}, d = {}", s.n(), s.d())));
    }
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(usage("--tol must lie in (0, 1)"));
    }
    let (report, code) = norm_report(command, &s, &norm_options(field, route, a.tol, a.seed));
    if code == EXIT_USAGE {
        return Err(usage(report.error.unwrap_or_default()));
    }
    emit(out, &if a.json { report.to_json() + "\n" } else { report.to_text() })?;
    if code == EXIT_SOLVER {
        return Err(Failure { code, message: report.error.unwrap_or_default() });
    }
    Ok(code)
}

fn cmd_dicke(d: usize, n: usize, j: &[i64], json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let (index, value) = if j.is_empty() {
        most_entangled_dicke(d, n).map_err(core_failure)?
    } else {
        let idx = MultiIndex::from_signed(j).map_err(core_failure)?;
        if idx.len() != n || idx.degree() != d {
            return Err(usage(format!("index {j:?} must have {n} entries summing to {d}")));
        }
        let v = dicke_norm(&idx).map_err(core_failure)?;
        (idx, v)
    };
    let eta = dicke_eta(&index).map_err(core_failure)?;
    let bounds = if d >= 2 && n >= 2 { entanglement::eta_sym_bounds(d, n).ok() } else { None };
    if json {
        let v = json!({"command": "dicke", "d": d, "n": n, "index": index.j, "value": value, "eta": eta, "eta_sym_bounds": bounds});
        emit(out, &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?;
    } else {
        let mut text = format!("index          {:?}\nspectral norm  {value:.4}\neta            {eta:.4}\n", index.j);
        if let Some((lo, hi)) = bounds {
            text.push_str(&format!("eta_sym bounds [{lo:.4}, {hi:.4}]\n"));
        }
        emit(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn cmd_graph(path: &Path, vertices: Option<usize>, seed: u64, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let adj = graph::parse_edge_list(&read_file(path)?, vertices).map_err(|e| usage(e.0))?;
    let s = SymTensor::graph_quartic(&adj).map_err(core_failure)?;
    let (report, code) = norm_report("graph", &s, &norm_options(Field::Complex, Route::Auto, 1e-10, seed));
    let Some(value) = report.value else {
        return Err(Failure { code, message: report.error.unwrap_or_default() });
    };
    let kappa = graph::implied_clique_number(value);
    if json {
        let mut v = serde_json::to_value(&report).expect("json");
        v["vertices"] = json!(adj.len());
        v["clique_number"] = json!(kappa);
        emit(out, &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?;
    } else {
        emit(out, &format!("{}clique number  {kappa}\n", report.to_text()))?;
    }
    Ok(code)
}

fn cmd_majorana(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let s = load_tensor(path).map_err(usage)?;
    if s.n() != 2 {
        return Err(usage(format!("majorana needs a binary form, got n = {}", s.n())));
    }
    if s.is_zero() {
        return Err(usage("the zero form has no Majorana points"));
    }
    let qc = QubitCoeffs::from_tensor(&s).map_err(core_failure)?;
    let roots = qc.majorana_roots().map_err(core_failure)?;
    let points: Vec<serde_json::Value> = roots
        .iter()
        .map(|(p, m)| match p {
            MajoranaPoint::Finite(z) => {
                // Stereographic projection from the north pole.
                let r2 = z.norm_sqr();
                let bloch = [2.0 * z.re / (1.0 + r2), 2.0 * z.im / (1.0 + r2), (r2 - 1.0) / (1.0 + r2)];
                json!({"z": {"re": z.re, "im": z.im}, "bloch": bloch, "multiplicity": m})
            }
            MajoranaPoint::Infinity => json!({"z": "infinity", "bloch": [0.0, 0.0, 1.0], "multiplicity": m}),
        })
        .collect();
    if json {
        let v = json!({"command": "majorana", "d": s.d(), "points": points});
        emit(out, &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?;
    } else {
        let mut text = String::new();
        for (p, m) in &roots {
            match p {
                MajoranaPoint::Finite(z) => text.push_str(&format!("{:>9.4} {:+.4}i  x{m}\n", z.re, z.im)),
                MajoranaPoint::Infinity => text.push_str(&format!("{:>9}          x{m}\n", "inf")),
            }
        }
        emit(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn cmd_table(name: &str, seed: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let opts = norm_options(Field::Complex, Route::Auto, 1e-10, seed);
    let table = catalog::build_table(name, &opts).map_err(core_failure)?;
    let Some(table) = table else {
        return Err(usage(format!("unknown table {name:?}; known: {}", catalog::TABLES.join(", "))));
    };
    emit(out, &table.to_csv())?;
    Ok(EXIT_OK)
}

/// `(name, computed, expected, tolerance)`.
pub fn selfcheck_rows() -> Vec<(String, Result<f64, String>, f64, f64)> {
    let mut rows = Vec::new();
    let complex = NormOptions::default();
    let real = NormOptions::with_field(Field::Real);
    let norm_of = |s: &SymTensor, o: &NormOptions| spectral_norm(s, o).map(|r| r.value).map_err(|e| e.to_string());
    let ex = |n: &str| catalog::example(n).expect("known example");
    rows.push(("ex1 complex".into(), norm_of(&ex("ex1"), &complex), 0.7027, 5e-4));
    rows.push(("ex1 real".into(), norm_of(&ex("ex1"), &real), 0.6205, 5e-4));
    rows.push(("ex2 complex".into(), norm_of(&ex("ex2"), &complex), 0.5f64.sqrt(), 1e-6));
    rows.push(("ex2 real".into(), norm_of(&ex("ex2"), &real), 0.5, 1e-6));
    let j = MultiIndex::new(vec![1, 1, 1]);
    rows.push(("dicke (1,1,1)".into(), norm_of(&SymTensor::dicke(&j).expect("valid"), &complex), 2f64.sqrt() / 3.0, 1e-6));
    let tri = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    rows.push(("triangle quartic".into(), norm_of(&SymTensor::graph_quartic(&tri).expect("valid"), &complex), 2.0 / 3.0, 1e-6));
    rows
}

fn cmd_selfcheck(out: &mut dyn Write) -> Result<i32, Failure> {
    let mut failed = 0;
    for (name, got, expected, tol) in selfcheck_rows() {
        let line = match got {
            Ok(v) if (v - expected).abs() <= tol => format!("PASS  {name:<18} {v:.6} (expected {expected:.6})\n"),
            Ok(v) => {
                failed += 1;
                format!("FAIL  {name:<18} {v:.6} (expected {expected:.6})\n")
            }
            Err(e) => {
                failed += 1;
                format!("FAIL  {name:<18} {e}\n")
            }
        };
        emit(out, &line)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_SOLVER })
}
