//! Command-line front end.
//!
//! Every command writes one JSON document to stdout (`spectrum` can emit CSV
//! instead). Exit codes: 0 success, 2 usage error, 3 bad input, 4 failed
//! verification or certification, 5 eigensolver non-convergence. With
//! `--json`, errors are written to stderr as
//! `{"error": {"kind", "message", "exit_code"}}`.
//!
//! [`run`] never touches the process streams; the binary prints the returned
//! [`CliOutput`].

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::classify_real_eigenvalue;
use crate::engine::{blowup_spectrum, cross_validate_with, verify_spectrum, Counts, EngineOptions};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, parse_graph6, spectral_radius, Graph};
use crate::hypergraph::build_blowup;
use crate::numeric::char_poly;
use crate::spectrum::{SpectrumSet, Witness};
use crate::weights::{adjacency_from_eta, EtaAssignment};
use crate::DEFAULT_MERGE_TOL;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_NONCONVERGENCE: i32 = 5;

pub const SCHEMA_VERSION: &str = "1";
pub const CSV_HEADER: &str = "re,im,residual,witness_subset,witness_eta";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "blowup-spectra", version, about = "Eigenvalues of s-blowups of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All eigenvalues of G^[s], each with a witness.
    Spectrum(SpectrumArgs),
    /// Re-check a spectrum document produced by `spectrum`.
    Verify(VerifyArgs),
    /// Decide whether a real eigenvalue has a real eigenvector.
    Classify(ClassifyArgs),
    /// Characteristic polynomial of diag(eta)·A(G).
    Charpoly(CharpolyArgs),
    /// Export the blowup hypergraph.
    Blowup(BlowupArgs),
    /// Spectral radius of the base graph.
    Radius(RadiusArgs),
    /// Compare the pipeline with and without each reduction.
    Crossval(CrossvalArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Edge-list file: a `n <count>` line, then one `u v` pair per line.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Graph in graph6 format.
    #[arg(long, value_name = "STR")]
    graph6: Option<String>,
    /// Inline edge list such as "0 1; 1 2". The vertex count is one more
    /// than the largest label unless the text starts with `n <count>`.
    #[arg(long, value_name = "STR", allow_hyphen_values = true)]
    edges: Option<String>,
}

#[derive(Args, Debug)]
struct Common {
    /// Write errors to stderr as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock time in the output (makes it run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    /// Blowup parameter (s >= 2); the blowup is 2s-uniform.
    #[arg(long)]
    s: u32,
    #[command(flatten)]
    graph: GraphInput,
    /// Merge tolerance for eigenvalues that agree numerically.
    #[arg(long, default_value_t = DEFAULT_MERGE_TOL)]
    tol: f64,
    /// Enumerate every weight assignment instead of eta classes.
    #[arg(long)]
    no_eta_reduction: bool,
    /// Do not quotient eta classes by global rotation.
    #[arg(long)]
    no_rotation_quotient: bool,
    /// Use every induced subgraph, not only connected ones.
    #[arg(long)]
    no_connected_reduction: bool,
    /// Skip lifting and certifying witnesses.
    #[arg(long)]
    no_certify: bool,
    /// Worker threads. Output does not depend on this.
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Emit CSV rows instead of JSON.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Blowup parameter (s >= 2); the blowup is 2s-uniform.
    #[arg(long)]
    s: u32,
    /// A JSON document written by `spectrum`.
    #[arg(long, value_name = "FILE")]
    spectrum: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Blowup parameter (s >= 2); the blowup is 2s-uniform.
    #[arg(long)]
    s: u32,
    #[command(flatten)]
    graph: GraphInput,
    /// The real eigenvalue to classify.
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CharpolyArgs {
    /// Blowup parameter (s >= 2); the blowup is 2s-uniform.
    #[arg(long)]
    s: u32,
    #[command(flatten)]
    graph: GraphInput,
    /// Exponents f_i of eta_i = exp(2πi f_i / s), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    eta: Vec<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BlowupArgs {
    /// Blowup parameter (s >= 2); the blowup is 2s-uniform.
    #[arg(long)]
    s: u32,
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RadiusArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CrossvalArgs {
    /// Blowup parameter (s >= 2); the blowup is 2s-uniform.
    #[arg(long)]
    s: u32,
    #[command(flatten)]
    graph: GraphInput,
    /// Merge tolerance for eigenvalues that agree numerically.
    #[arg(long, default_value_t = DEFAULT_MERGE_TOL)]
    tol: f64,
    /// Worker threads. Output does not depend on this.
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    #[command(flatten)]
    common: Common,
}

/// A complex number as `{"re": .., "im": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        // adding 0.0 turns -0.0 into 0.0
        JsonComplex {
            re: z.re + 0.0,
            im: z.im + 0.0,
        }
    }
}

impl From<JsonComplex> for Complex64 {
    fn from(z: JsonComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

fn complex_list(values: &[Complex64]) -> Vec<JsonComplex> {
    values.iter().map(|&z| z.into()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub format: String,
    pub source: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reductions {
    pub eta: bool,
    pub rotation_quotient: bool,
    pub connected: bool,
}

impl Reductions {
    fn of(opts: &EngineOptions) -> Self {
        Reductions {
            eta: opts.use_eta_reduction,
            rotation_quotient: opts.use_rotation_quotient,
            connected: opts.use_connected_reduction,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Meta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reductions: Option<Reductions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputDocument<R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub result: R,
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: JsonComplex,
    pub residual: Option<f64>,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub count: usize,
    pub eigenvalues: Vec<SpectrumEntry>,
}

/// The parts of a `spectrum` document that `verify` reads back.
#[derive(Debug, Deserialize)]
struct SpectrumDocumentIn {
    command: String,
    input: InputInfo,
    s: u32,
    result: SpectrumResult,
    meta: MetaIn,
}

#[derive(Debug, Deserialize)]
struct MetaIn {
    tolerance: f64,
}

#[derive(Serialize)]
struct VerifyEntry {
    value: JsonComplex,
    residual: Option<f64>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct VerifyResult {
    all_passed: bool,
    entries: Vec<VerifyEntry>,
}

#[derive(Serialize)]
struct CharpolyResult {
    eta: Vec<u32>,
    /// Ascending powers of λ; the last coefficient is 1.
    coefficients: Vec<JsonComplex>,
    degree: usize,
}

#[derive(Serialize)]
struct RadiusResult {
    rho: f64,
}

#[derive(Serialize)]
struct CrossvalRun {
    name: &'static str,
    reductions: Reductions,
    count: usize,
    values: Vec<JsonComplex>,
    missing: Vec<JsonComplex>,
    extra: Vec<JsonComplex>,
    max_matched_distance: f64,
    equal: bool,
}

#[derive(Serialize)]
struct CrossvalResult {
    all_equal: bool,
    runs: Vec<CrossvalRun>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    error: ErrorBody<'a>,
}

/// Exit code and error kind for a library error.
pub fn classify_error(e: &Error) -> (i32, &'static str) {
    match e {
        Error::Parse { .. } => (EXIT_INPUT, "parse"),
        Error::Format(_) => (EXIT_INPUT, "format"),
        Error::Validation(_) => (EXIT_INPUT, "validation"),
        Error::Io(_) => (EXIT_INPUT, "io"),
        Error::Json(_) => (EXIT_INPUT, "json"),
        Error::NotAnEigenvalue(_) => (EXIT_INPUT, "not_an_eigenvalue"),
        Error::InputEigenpair(_) => (EXIT_INPUT, "input_eigenpair"),
        Error::Certification { .. } => (EXIT_VERIFICATION, "certification"),
        Error::Verification(_) => (EXIT_VERIFICATION, "verification"),
        Error::NonConvergence { .. } => (EXIT_NONCONVERGENCE, "non_convergence"),
    }
}

/// Runs one command. `args` includes the program name, as in `std::env::args()`.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> CliOutput {
    let args: Vec<String> = args.into_iter().collect();
    let json_errors = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => {
                    let message = text.trim_end();
                    let message = message.strip_prefix("error: ").unwrap_or(message);
                    error_output(EXIT_USAGE, "usage", message, json_errors, String::new())
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Outcome { stdout, failure: None }) => CliOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Ok(Outcome {
            stdout,
            failure: Some(e),
        })
        | Err(Failure { stdout, error: e }) => {
            let (code, kind) = classify_error(&e);
            error_output(code, kind, &e.to_string(), json_errors, stdout)
        }
    }
}

fn error_output(code: i32, kind: &str, message: &str, json: bool, stdout: String) -> CliOutput {
    let stderr = if json {
        let doc = ErrorDocument {
            error: ErrorBody {
                kind,
                message,
                exit_code: code,
            },
        };
        serde_json::to_string(&doc).expect("error document serializes") + "\n"
    } else {
        format!("error: {message}\n")
    };
    CliOutput { code, stdout, stderr }
}

/// A command's stdout, plus an error when the command produced a report
/// that nonetheless fails (verification, cross-validation).
struct Outcome {
    stdout: String,
    failure: Option<Error>,
}

struct Failure {
    stdout: String,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            stdout: String::new(),
            error,
        }
    }
}

fn dispatch(command: Command) -> std::result::Result<Outcome, Failure> {
    match command {
        Command::Spectrum(a) => Ok(spectrum_cmd(a)?),
        Command::Verify(a) => verify_cmd(a),
        Command::Classify(a) => Ok(classify_cmd(a)?),
        Command::Charpoly(a) => Ok(charpoly_cmd(a)?),
        Command::Blowup(a) => Ok(blowup_cmd(a)?),
        Command::Radius(a) => Ok(radius_cmd(a)?),
        Command::Crossval(a) => crossval_cmd(a),
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, failure: None }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("output document serializes");
    text.push('\n');
    text
}

fn load_graph(input: &GraphInput) -> Result<(Graph, InputInfo)> {
    let (graph, format, source) = if let Some(path) = &input.input {
        let text = std::fs::read_to_string(path)?;
        (parse_edge_list(&text)?, "edge_list", path.display().to_string())
    } else if let Some(text) = &input.graph6 {
        (parse_graph6(text)?, "graph6", text.clone())
    } else if let Some(text) = &input.edges {
        (parse_inline_edges(text)?, "edges", text.clone())
    } else {
        return Err(Error::validation("no graph given"));
    };
    let info = InputInfo {
        format: format.into(),
        source,
        n: graph.n(),
        edges: graph.edges(),
    };
    Ok((graph, info))
}

/// Parses `"0 1; 1 2"`. Pairs are separated by `;` or newlines.
fn parse_inline_edges(text: &str) -> Result<Graph> {
    let lines = text.replace(';', "\n");
    if lines.trim_start().starts_with('n') {
        return parse_edge_list(&lines);
    }
    let mut max_label = None;
    for (idx, line) in lines.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("expected a vertex label, found {tok:?}"),
            })?;
            max_label = max_label.max(Some(v));
        }
    }
    let n = max_label.map_or(0, |m| m + 1);
    parse_edge_list(&format!("n {n}\n{lines}"))
}

fn engine_options(tol: f64, threads: Option<usize>) -> EngineOptions {
    let mut opts = EngineOptions {
        tol,
        ..Default::default()
    };
    if let Some(t) = threads {
        opts.worker_count = t;
    }
    opts
}

fn elapsed_ms(start: Instant, timing: bool) -> Option<f64> {
    timing.then(|| start.elapsed().as_secs_f64() * 1e3)
}

fn spectrum_cmd(a: SpectrumArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (graph, input) = load_graph(&a.graph)?;
    let opts = EngineOptions {
        use_eta_reduction: !a.no_eta_reduction,
        use_rotation_quotient: !a.no_rotation_quotient,
        use_connected_reduction: !a.no_connected_reduction,
        certify: !a.no_certify,
        ..engine_options(a.tol, a.threads)
    };
    let report = blowup_spectrum(&graph, a.s, &opts)?;
    let entries: Vec<SpectrumEntry> = report
        .spectrum
        .values()
        .iter()
        .zip(report.witnesses())
        .zip(&report.certified)
        .map(|((&z, w), &residual)| SpectrumEntry {
            value: z.into(),
            residual,
            witness: w.clone(),
        })
        .collect();

    if a.csv {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for e in &entries {
            let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            let subset: Vec<u32> = e.witness.subset.iter().map(|&v| v as u32).collect();
            let residual = e.residual.map(csv_number).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{}",
                csv_number(e.value.re),
                csv_number(e.value.im),
                residual,
                join(&subset),
                join(&e.witness.effective_eta(a.s))
            )
            .expect("writing to a String");
        }
        return Ok(ok(out));
    }

    let doc = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "spectrum",
        input: Some(input),
        s: Some(a.s),
        result: SpectrumResult {
            count: entries.len(),
            eigenvalues: entries,
        },
        meta: Meta {
            tolerance: Some(opts.tol),
            reductions: Some(Reductions::of(&opts)),
            certified: Some(opts.certify),
            counts: Some(report.counts),
            wall_ms: elapsed_ms(start, a.common.timing),
        },
    };
    Ok(ok(to_json(&doc)))
}

/// Shortest round-trip form, in exponent notation for very small or large magnitudes.
fn csv_number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{}", x + 0.0)
    }
}

fn verify_cmd(a: VerifyArgs) -> std::result::Result<Outcome, Failure> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&a.spectrum).map_err(Error::from)?;
    let doc: SpectrumDocumentIn = serde_json::from_str(&text).map_err(Error::from)?;
    if doc.command != "spectrum" {
        return Err(Error::validation(format!("expected a spectrum document, found {:?}", doc.command)).into());
    }
    if doc.s != a.s {
        return Err(Error::validation(format!("document was computed for s = {}, not {}", doc.s, a.s)).into());
    }
    let graph = Graph::from_edges(doc.input.n, &doc.input.edges)?;
    let pairs = doc
        .result
        .eigenvalues
        .iter()
        .map(|e| (e.value.into(), e.witness.clone()))
        .collect();
    let spectrum = SpectrumSet::with_witnesses(pairs, doc.meta.tolerance);
    let report = verify_spectrum(&graph, a.s, &spectrum)?;
    let result = VerifyResult {
        all_passed: report.all_passed(),
        entries: report
            .entries
            .iter()
            .map(|e| VerifyEntry {
                value: e.value.into(),
                residual: e.residual,
                passed: e.passed,
                reason: e.reason.clone(),
            })
            .collect(),
    };
    let out = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        input: Some(doc.input),
        s: Some(a.s),
        result,
        meta: Meta {
            tolerance: Some(doc.meta.tolerance),
            wall_ms: elapsed_ms(start, a.common.timing),
            ..Default::default()
        },
    };
    Ok(Outcome {
        stdout: to_json(&out),
        failure: report.ensure_passed().err(),
    })
}

fn classify_cmd(a: ClassifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (graph, input) = load_graph(&a.graph)?;
    let verdict = classify_real_eigenvalue(&graph, a.s, a.lambda)?;
    let doc = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "classify",
        input: Some(input),
        s: Some(a.s),
        result: verdict,
        meta: Meta {
            tolerance: Some(DEFAULT_MERGE_TOL),
            wall_ms: elapsed_ms(start, a.common.timing),
            ..Default::default()
        },
    };
    Ok(ok(to_json(&doc)))
}

fn charpoly_cmd(a: CharpolyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (graph, input) = load_graph(&a.graph)?;
    let eta = EtaAssignment::new(a.s, a.eta.clone())?;
    let poly = char_poly(&adjacency_from_eta(&graph, &eta)?);
    let doc = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "charpoly",
        input: Some(input),
        s: Some(a.s),
        result: CharpolyResult {
            eta: a.eta,
            coefficients: complex_list(poly.coefficients()),
            degree: poly.degree(),
        },
        meta: Meta {
            wall_ms: elapsed_ms(start, a.common.timing),
            ..Default::default()
        },
    };
    Ok(ok(to_json(&doc)))
}

fn blowup_cmd(a: BlowupArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (graph, input) = load_graph(&a.graph)?;
    let (h, _) = build_blowup(&graph, a.s)?;
    let doc = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "blowup",
        input: Some(input),
        s: Some(a.s),
        result: h,
        meta: Meta {
            wall_ms: elapsed_ms(start, a.common.timing),
            ..Default::default()
        },
    };
    Ok(ok(to_json(&doc)))
}

fn radius_cmd(a: RadiusArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (graph, input) = load_graph(&a.graph)?;
    let doc = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "radius",
        input: Some(input),
        s: None,
        result: RadiusResult {
            rho: spectral_radius(&graph),
        },
        meta: Meta {
            wall_ms: elapsed_ms(start, a.common.timing),
            ..Default::default()
        },
    };
    Ok(ok(to_json(&doc)))
}

fn crossval_cmd(a: CrossvalArgs) -> std::result::Result<Outcome, Failure> {
    let start = Instant::now();
    let (graph, input) = load_graph(&a.graph)?;
    let base = engine_options(a.tol, a.threads);
    let report = cross_validate_with(&graph, a.s, &base)?;
    let runs = report
        .runs
        .iter()
        .map(|r| CrossvalRun {
            name: r.name,
            reductions: Reductions::of(&r.options),
            count: r.spectrum.len(),
            values: complex_list(r.spectrum.values()),
            missing: complex_list(&r.diff.a_minus_b),
            extra: complex_list(&r.diff.b_minus_a),
            max_matched_distance: r.diff.max_matched_distance,
            equal: r.diff.is_equal(),
        })
        .collect();
    let doc = OutputDocument {
        schema_version: SCHEMA_VERSION,
        command: "crossval",
        input: Some(input),
        s: Some(a.s),
        result: CrossvalResult {
            all_equal: report.all_equal(),
            runs,
        },
        meta: Meta {
            tolerance: Some(a.tol),
            wall_ms: elapsed_ms(start, a.common.timing),
            ..Default::default()
        },
    };
    Ok(Outcome {
        stdout: to_json(&doc),
        failure: report.ensure_equal().err(),
    })
}
