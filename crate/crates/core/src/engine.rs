//! The blowup spectrum pipeline.
//!
//! Every nonzero eigenvalue of `G^[s]` is an eigenvalue of `diag(η)·A(S)` for
//! a connected induced subgraph `S` and an assignment `η` of `s`-th roots of
//! unity. The engine enumerates those pairs, solves each small matrix,
//! certifies every eigenvalue with an explicit tensor eigenvector of the
//! blowup and merges the results deterministically.
//!
//! Three reductions are applied by default, each of which can be switched off
//! for cross-validation:
//!
//! * **η-space**: the spectrum of `diag(π)·A·diag(π)` depends only on `π²`,
//!   so `s^k` assignments are enumerated instead of `(2s)^k`.
//! * **rotation quotient**: scaling every `η_i` by an `s`-th root of unity
//!   `ω` scales all eigenvalues by `ω`, so `η` is fixed to 1 on the smallest
//!   vertex of `S` and the result is closed under rotation afterwards.
//! * **connectivity**: the spectrum of a disconnected subgraph is the union
//!   of its components' spectra, all of which are enumerated separately.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_all_subsets, enumerate_connected_subsets, induced_subgraph, Graph, VertexSubset, PIPELINE_SOFT_LIMIT,
};
use crate::hypergraph::{
    build_blowup, construct_in, eigen_residual, zero_eigenpair, BlowupMap, UniformHypergraph, NOWHERE_ZERO_TOL,
};
use crate::numeric::{complex_eigenpairs, normalize_inf, ComplexMatrix};
use crate::spectrum::{cluster_single_linkage, compare_spectra, SpectrumComparison, SpectrumSet, Witness};
use crate::weights::{adjacency_from_eta, adjacency_from_pi, root_of_unity, EtaAssignment, WeightAssignment};
use crate::{CERTIFY_TOL, DEFAULT_MERGE_TOL};

/// Eigenvalues of modulus at most this are folded into the exact 0.
pub const ZERO_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct EngineOptions {
    pub tol: f64,
    pub use_eta_reduction: bool,
    pub use_rotation_quotient: bool,
    pub use_connected_reduction: bool,
    pub certify: bool,
    pub worker_count: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            tol: DEFAULT_MERGE_TOL,
            use_eta_reduction: true,
            use_rotation_quotient: true,
            use_connected_reduction: true,
            certify: true,
            worker_count: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

impl EngineOptions {
    pub fn unreduced() -> Self {
        EngineOptions {
            use_eta_reduction: false,
            use_rotation_quotient: false,
            use_connected_reduction: false,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::validation(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.worker_count == 0 {
            return Err(Error::validation("worker count must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Counts {
    pub subsets: usize,
    pub matrices: usize,
    /// Eigenvalue records entering the merge, rotations included.
    pub records: usize,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Merged eigenvalues, each with a witness.
    pub spectrum: SpectrumSet,
    /// Certification residual per value; `None` when certification is off.
    pub certified: Vec<Option<f64>>,
    pub counts: Counts,
    pub wall_time: Duration,
}

impl SpectrumReport {
    pub fn witnesses(&self) -> &[Witness] {
        self.spectrum.witnesses().expect("engine output carries witnesses")
    }
}

struct Record {
    value: Complex64,
    witness: Witness,
    residual: Option<f64>,
}

/// Shared read-only state for one engine run.
struct Context<'a> {
    graph: &'a Graph,
    s: u32,
    opts: &'a EngineOptions,
    hypergraph: UniformHypergraph,
    blowup: BlowupMap,
}

/// One enumerated vertex subset together with its induced subgraph.
struct SubsetJob {
    subset: VertexSubset,
    labels: Vec<usize>,
    graph: Graph,
}

pub fn blowup_spectrum(g: &Graph, s: u32, opts: &EngineOptions) -> Result<SpectrumReport> {
    let start = Instant::now();
    opts.validate()?;
    if s < 2 {
        return Err(Error::validation(format!("s must be at least 2, got {s}")));
    }
    if g.n() == 0 {
        return Err(Error::validation("graph has no vertices"));
    }
    if g.n() > PIPELINE_SOFT_LIMIT {
        log_soft_limit(g.n());
    }
    let (hypergraph, blowup) = build_blowup(g, s)?;
    let ctx = Context {
        graph: g,
        s,
        opts,
        hypergraph,
        blowup,
    };

    let subsets: Vec<VertexSubset> = if opts.use_connected_reduction {
        enumerate_connected_subsets(g).collect()
    } else {
        enumerate_all_subsets(g)
    };
    let jobs: Vec<SubsetJob> = subsets
        .into_iter()
        .filter(|sub| sub.len() >= 2)
        .map(|subset| {
            let (graph, labels) = induced_subgraph(g, &subset)?;
            Ok(SubsetJob { subset, labels, graph })
        })
        .collect::<Result<_>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.worker_count)
        .build()
        .map_err(|e| Error::validation(format!("cannot start worker pool: {e}")))?;
    let per_subset: Vec<(usize, Vec<Record>)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let patterns = pattern_count(&ctx, job.labels.len());
                let chunks: Vec<Vec<Record>> = (0..patterns)
                    .into_par_iter()
                    .map(|p| solve_item(&ctx, job, p))
                    .collect::<Result<_>>()?;
                Ok((patterns as usize, chunks.into_iter().flatten().collect()))
            })
            .collect::<Result<_>>()
    })?;

    let mut counts = Counts {
        subsets: jobs.len() + g.n(),
        ..Default::default()
    };
    let mut records = vec![zero_record(&ctx)?];
    for (matrices, recs) in per_subset {
        counts.matrices += matrices;
        records.extend(recs);
    }
    counts.records = records.len();

    let (spectrum, certified) = merge_records(records, opts.tol);
    Ok(SpectrumReport {
        spectrum,
        certified,
        counts,
        wall_time: start.elapsed(),
    })
}

fn log_soft_limit(n: usize) {
    eprintln!("warning: {n} vertices exceeds the soft limit of {PIPELINE_SOFT_LIMIT}; this may take very long");
}

fn zero_record(ctx: &Context) -> Result<Record> {
    let residual = if ctx.opts.certify {
        let report = eigen_residual(&ctx.hypergraph, &zero_eigenpair(&ctx.blowup, 0))?;
        if !report.is_certified() {
            return Err(Error::Certification {
                lambda: "0".into(),
                residual: report.max_residual,
            });
        }
        Some(report.max_residual)
    } else {
        None
    };
    Ok(Record {
        value: Complex64::new(0.0, 0.0),
        witness: Witness::zero(0),
        residual,
    })
}

/// Number of weight patterns enumerated on a subset of size `k`.
fn pattern_count(ctx: &Context, k: usize) -> u64 {
    let radix = weight_radix(ctx) as u64;
    let free = if ctx.opts.use_rotation_quotient { k - 1 } else { k };
    radix.pow(free as u32)
}

fn weight_radix(ctx: &Context) -> u32 {
    if ctx.opts.use_eta_reduction {
        ctx.s
    } else {
        2 * ctx.s
    }
}

/// Digits of `index` in base `radix`, least significant at the last free
/// position; the first entry is pinned to 0 under the rotation quotient.
fn pattern_digits(ctx: &Context, k: usize, mut index: u64) -> Vec<u32> {
    let radix = weight_radix(ctx) as u64;
    let mut digits = vec![0u32; k];
    let first = usize::from(ctx.opts.use_rotation_quotient);
    for slot in (first..k).rev() {
        digits[slot] = (index % radix) as u32;
        index /= radix;
    }
    digits
}

fn solve_item(ctx: &Context, job: &SubsetJob, pattern: u64) -> Result<Vec<Record>> {
    let k = job.labels.len();
    let digits = pattern_digits(ctx, k, pattern);
    let s = ctx.s;
    let matrix: ComplexMatrix = if ctx.opts.use_eta_reduction {
        adjacency_from_eta(&job.graph, &EtaAssignment::new(s, digits.clone())?)?
    } else {
        adjacency_from_pi(&job.graph, &WeightAssignment::new(s, digits.clone())?)?
    };
    let pairs = complex_eigenpairs(&matrix)?;
    let eta_digits: Vec<u32> = digits.iter().map(|d| d % s).collect();
    let rotations = if ctx.opts.use_rotation_quotient { s } else { 1 };

    let mut out = Vec::with_capacity(pairs.len() * rotations as usize);
    for (eigen_index, pair) in pairs.iter().enumerate() {
        if pair.value.norm() <= ZERO_TOL {
            continue;
        }
        for r in 0..rotations {
            let value = pair.value * root_of_unity(r, s);
            let witness = Witness {
                subset: job.labels.clone(),
                eta: eta_digits.clone(),
                rotation: r,
                eigen_index,
            };
            let residual = if ctx.opts.certify {
                // weights whose weighted matrix is ω^r times the solved one
                let pi_exponents: Vec<u32> = if ctx.opts.use_eta_reduction {
                    digits.iter().map(|f| (f + r) % s).collect()
                } else {
                    digits.iter().map(|e| (e + r) % (2 * s)).collect()
                };
                let weights = WeightAssignment::new(s, pi_exponents)?;
                let y: Vec<Complex64> = if ctx.opts.use_eta_reduction {
                    // u solves diag(η)A u = λu, so y = diag(π)⁻¹ u solves diag(π)A diag(π) y = λy
                    pair.vector
                        .iter()
                        .enumerate()
                        .map(|(i, u)| u / weights.value(i))
                        .collect()
                } else {
                    pair.vector.clone()
                };
                Some(certify_lift(ctx, &job.subset, &weights, value, y)?)
            } else {
                None
            };
            out.push(Record {
                value,
                witness,
                residual,
            });
        }
    }
    Ok(out)
}

/// Certifies `(value, y)` through the blowup construction. Components of `y`
/// that are numerically zero are dropped together with their vertices: the
/// restriction is an eigenpair of the smaller weighted induced subgraph.
fn certify_lift(
    ctx: &Context,
    subset: &VertexSubset,
    weights: &WeightAssignment,
    value: Complex64,
    mut y: Vec<Complex64>,
) -> Result<f64> {
    normalize_inf(&mut y).ok_or_else(|| Error::InputEigenpair("zero eigenvector".into()))?;
    let labels = subset.vertices();
    let keep: Vec<usize> = (0..y.len()).filter(|&i| y[i].norm() >= NOWHERE_ZERO_TOL).collect();
    let (support, weights, y) = if keep.len() == y.len() {
        (*subset, weights.clone(), y)
    } else {
        let kept_labels: Vec<usize> = keep.iter().map(|&i| labels[i]).collect();
        (
            VertexSubset::from_vertices(ctx.graph.n(), &kept_labels)?,
            WeightAssignment::new(ctx.s, keep.iter().map(|&i| weights.exponents()[i]).collect())?,
            keep.iter().map(|&i| y[i]).collect(),
        )
    };
    let (_, report) = construct_in(&ctx.hypergraph, &ctx.blowup, &support, &weights, value, &y)?;
    Ok(report.max_residual)
}

/// Deterministic merge: single linkage at `tol`; each cluster keeps the
/// witness with the smallest certification residual (ties broken by witness order).
fn merge_records(records: Vec<Record>, tol: f64) -> (SpectrumSet, Vec<Option<f64>>) {
    let points: Vec<Complex64> = records.iter().map(|r| r.value).collect();
    let clusters = cluster_single_linkage(&points, tol);
    let mut values = Vec::with_capacity(clusters.len());
    let mut witnesses = Vec::with_capacity(clusters.len());
    let mut residuals = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let best = cluster
            .members
            .iter()
            .map(|&m| &records[m])
            .min_by(|a, b| {
                let ra = a.residual.unwrap_or(f64::INFINITY);
                let rb = b.residual.unwrap_or(f64::INFINITY);
                ra.total_cmp(&rb).then_with(|| a.witness.cmp(&b.witness))
            })
            .expect("clusters are nonempty");
        values.push(cluster.centroid);
        witnesses.push(best.witness.clone());
        residuals.push(best.residual);
    }
    (SpectrumSet::from_parts(values, tol, Some(witnesses)), residuals)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifiedValue {
    pub value: Complex64,
    pub residual: Option<f64>,
    pub passed: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub entries: Vec<VerifiedValue>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifiedValue> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn ensure_passed(&self) -> Result<()> {
        let failed: Vec<String> = self
            .failures()
            .map(|e| format!("{} ({})", e.value, e.reason.as_deref().unwrap_or("residual too large")))
            .collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "{} value(s) failed: {}",
                failed.len(),
                failed.join(", ")
            )))
        }
    }
}

/// Re-derives every value of `sp` from its witness: re-solves the witness
/// matrix, finds the matching eigenvalue, lifts it to the blowup and checks
/// the tensor residual.
pub fn verify_spectrum(g: &Graph, s: u32, sp: &SpectrumSet) -> Result<VerificationReport> {
    let witnesses = sp
        .witnesses()
        .ok_or_else(|| Error::validation("spectrum carries no witnesses"))?;
    let (hypergraph, blowup) = build_blowup(g, s)?;
    let opts = EngineOptions::default();
    let ctx = Context {
        graph: g,
        s,
        opts: &opts,
        hypergraph,
        blowup,
    };
    let entries = sp
        .values()
        .iter()
        .zip(witnesses)
        .map(|(&value, w)| verify_one(&ctx, value, w, sp.tol()))
        .collect::<Result<_>>()?;
    Ok(VerificationReport { entries })
}

fn verify_one(ctx: &Context, value: Complex64, w: &Witness, tol: f64) -> Result<VerifiedValue> {
    let fail = |reason: String| VerifiedValue {
        value,
        residual: None,
        passed: false,
        reason: Some(reason),
    };
    if w.subset.is_empty() || w.subset.len() != w.eta.len() {
        return Err(Error::validation(format!("malformed witness for {value}")));
    }
    let subset = VertexSubset::from_vertices(ctx.graph.n(), &w.subset)?;
    if subset.len() != w.subset.len() {
        return Err(Error::validation(format!(
            "witness subset for {value} repeats a vertex"
        )));
    }
    if value.norm() <= ZERO_TOL {
        let report = eigen_residual(&ctx.hypergraph, &zero_eigenpair(&ctx.blowup, w.subset[0]))?;
        return Ok(VerifiedValue {
            value,
            residual: Some(report.max_residual),
            passed: report.is_certified(),
            reason: None,
        });
    }
    let eta = EtaAssignment::new(ctx.s, w.effective_eta(ctx.s))?;
    let (sub, _) = induced_subgraph(ctx.graph, &subset)?;
    let pairs = complex_eigenpairs(&adjacency_from_eta(&sub, &eta)?)?;
    let Some(pair) = pairs
        .iter()
        .min_by(|a, b| (a.value - value).norm().total_cmp(&(b.value - value).norm()))
    else {
        return Ok(fail("witness matrix has no eigenvalues".into()));
    };
    let distance = (pair.value - value).norm();
    if distance > tol {
        return Ok(fail(format!(
            "nearest witness eigenvalue {} is {distance:.3e} away",
            pair.value
        )));
    }
    let weights = eta.square_root();
    let y: Vec<Complex64> = pair
        .vector
        .iter()
        .enumerate()
        .map(|(i, u)| u / weights.value(i))
        .collect();
    match certify_lift(ctx, &subset, &weights, pair.value, y) {
        Ok(residual) => Ok(VerifiedValue {
            value,
            residual: Some(residual),
            passed: residual <= CERTIFY_TOL,
            reason: None,
        }),
        Err(e @ (Error::Certification { .. } | Error::InputEigenpair(_))) => Ok(fail(e.to_string())),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct CrossValidationRun {
    pub name: &'static str,
    pub options: EngineOptions,
    pub spectrum: SpectrumSet,
    /// Difference against the fully reduced baseline.
    pub diff: SpectrumComparison,
}

#[derive(Clone, Debug)]
pub struct CrossValidationReport {
    pub runs: Vec<CrossValidationRun>,
}

impl CrossValidationReport {
    pub fn all_equal(&self) -> bool {
        self.runs.iter().all(|r| r.diff.is_equal())
    }

    pub fn ensure_equal(&self) -> Result<()> {
        let mut problems = Vec::new();
        for run in self.runs.iter().filter(|r| !r.diff.is_equal()) {
            problems.push(format!(
                "{}: missing {:?}, extra {:?}",
                run.name, run.diff.a_minus_b, run.diff.b_minus_a
            ));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(problems.join("; ")))
        }
    }
}

/// Runs the pipeline with all reductions, then with each reduction switched
/// off in turn, and compares every run with the first.
pub fn cross_validate_reductions(g: &Graph, s: u32) -> Result<CrossValidationReport> {
    cross_validate_with(g, s, &EngineOptions::default())
}

pub fn cross_validate_with(g: &Graph, s: u32, base: &EngineOptions) -> Result<CrossValidationReport> {
    if g.n() > 8 {
        return Err(Error::validation(format!(
            "cross-validation supports n <= 8, got {}",
            g.n()
        )));
    }
    if !(2..=4).contains(&s) {
        return Err(Error::validation(format!(
            "cross-validation supports s in 2..=4, got {s}"
        )));
    }
    let baseline = EngineOptions {
        use_eta_reduction: true,
        use_rotation_quotient: true,
        use_connected_reduction: true,
        ..base.clone()
    };
    let variants = [
        ("all_reductions", baseline.clone()),
        (
            "no_eta_reduction",
            EngineOptions {
                use_eta_reduction: false,
                certify: false,
                ..baseline.clone()
            },
        ),
        (
            "no_rotation_quotient",
            EngineOptions {
                use_rotation_quotient: false,
                certify: false,
                ..baseline.clone()
            },
        ),
        (
            "no_connected_reduction",
            EngineOptions {
                use_connected_reduction: false,
                certify: false,
                ..baseline.clone()
            },
        ),
    ];
    let mut runs: Vec<CrossValidationRun> = Vec::with_capacity(variants.len());
    for (name, options) in variants {
        let spectrum = blowup_spectrum(g, s, &options)?.spectrum;
        let diff = match runs.first() {
            Some(first) => compare_spectra(&first.spectrum, &spectrum, options.tol),
            None => SpectrumComparison::default(),
        };
        runs.push(CrossValidationRun {
            name,
            options,
            spectrum,
            diff,
        });
    }
    Ok(CrossValidationReport { runs })
}
