//! Uniform hypergraphs, the s-blowup of a graph, and tensor eigenpairs.
//!
//! The adjacency tensor (entries `1/(k−1)!` on permutations of each edge) is
//! never materialized. Its eigen-equation is evaluated in the equivalent
//! per-vertex form `λ x_v^{k−1} = Σ_{e ∋ v} Π_{u ∈ e∖{v}} x_u`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, VertexSubset};
use crate::numeric::{eigen_residual_inf, normalize_inf, vec_norm_inf, C0, C1};
use crate::weights::{adjacency_from_pi, WeightAssignment};
use crate::CERTIFY_TOL;

/// Components of a weighted-subgraph eigenvector below this modulus (after
/// scaling to unit max-norm) are treated as zero.
pub const NOWHERE_ZERO_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(skip)]
    incidence: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = edges;
        for e in edges.iter_mut() {
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::validation(format!("edge {e:?} does not have {k} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::validation(format!("edge {e:?} repeats a vertex")));
            }
            if e.last().is_some_and(|&v| v >= n) {
                return Err(Error::validation(format!("edge {e:?} has a vertex outside 0..{n}")));
            }
        }
        let mut sorted = edges.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation("duplicate hyperedge"));
        }
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(idx);
            }
        }
        Ok(UniformHypergraph { k, n, edges, incidence })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Compact JSON with keys in the order `k`, `n`, `edges`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }
}

/// Block structure of `G^[s]`: base vertex `i` owns hypergraph vertices
/// `s·i .. s·i + s`, the first of which is its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupMap {
    base: Graph,
    s: u32,
    blocks: Vec<Vec<usize>>,
}

impl BlowupMap {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn representative(&self, i: usize) -> usize {
        self.blocks[i][0]
    }

    pub fn hypergraph_order(&self) -> usize {
        self.s as usize * self.base.n()
    }
}

pub fn build_blowup(g: &Graph, s: u32) -> Result<(UniformHypergraph, BlowupMap)> {
    if s < 2 {
        return Err(Error::validation(format!("blowup needs s >= 2, got {s}")));
    }
    let su = s as usize;
    let blocks: Vec<Vec<usize>> = (0..g.n()).map(|i| (su * i..su * i + su).collect()).collect();
    let edges = g
        .edges()
        .into_iter()
        .map(|(i, j)| blocks[i].iter().chain(&blocks[j]).copied().collect())
        .collect();
    let h = UniformHypergraph::new(2 * su, su * g.n(), edges)?;
    Ok((
        h,
        BlowupMap {
            base: g.clone(),
            s,
            blocks,
        },
    ))
}

/// Right-hand side of the eigen-equation: `Σ_{e ∋ v} Π_{u ∈ e∖{v}} x_u` for every `v`.
pub fn apply_adjacency(h: &UniformHypergraph, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != h.n {
        return Err(Error::validation(format!(
            "vector of length {} for {} vertices",
            x.len(),
            h.n
        )));
    }
    let mut out = vec![C0; h.n];
    let mut prefix = vec![C1; h.k + 1];
    for e in &h.edges {
        for (p, &v) in e.iter().enumerate() {
            prefix[p + 1] = prefix[p] * x[v];
        }
        let mut suffix = C1;
        for (p, &v) in e.iter().enumerate().rev() {
            out[v] += prefix[p] * suffix;
            suffix *= x[v];
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorEigenPair {
    pub lambda: Complex64,
    pub x: Vec<Complex64>,
}

impl TensorEigenPair {
    pub fn new(lambda: Complex64, x: Vec<Complex64>) -> Result<Self> {
        if x.iter().all(|z| *z == C0) {
            return Err(Error::validation("eigenvector must be nonzero"));
        }
        Ok(TensorEigenPair { lambda, x })
    }

    pub fn from_real(lambda: f64, x: &[f64]) -> Result<Self> {
        Self::new(
            Complex64::new(lambda, 0.0),
            x.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// `max(per_vertex) / scale`.
    pub max_residual: f64,
    /// Unnormalized `|λ x_v^{k−1} − Σ_{e∋v} x^{e∖{v}}|`.
    pub per_vertex: Vec<f64>,
    /// `max(1, |λ| · ‖x‖∞^{k−1})`.
    pub scale: f64,
}

impl ResidualReport {
    pub fn is_certified(&self) -> bool {
        self.max_residual <= CERTIFY_TOL
    }
}

pub fn eigen_residual(h: &UniformHypergraph, p: &TensorEigenPair) -> Result<ResidualReport> {
    let rhs = apply_adjacency(h, &p.x)?;
    let km1 = (h.k - 1) as u32;
    let per_vertex: Vec<f64> =
        p.x.iter()
            .zip(&rhs)
            .map(|(xv, r)| (p.lambda * xv.powu(km1) - r).norm())
            .collect();
    let scale = (p.lambda.norm() * vec_norm_inf(&p.x).powi(km1 as i32)).max(1.0);
    let max_residual = per_vertex.iter().copied().fold(0.0, f64::max) / scale;
    Ok(ResidualReport {
        max_residual,
        per_vertex,
        scale,
    })
}

/// Lifts an eigenpair `(λ, y)` of the weighted induced subgraph on `subset`
/// to a tensor eigenpair of the blowup: with `z_i` the principal `s`-th root
/// of `y_i`, the representative of block `i` gets `π(i)·z_i`, the other
/// block members get `z_i`, and blocks outside the subset are zero.
///
/// `w` and `y` are indexed by the subset's vertices in ascending order.
pub fn construct_blowup_eigenvector(
    bm: &BlowupMap,
    subset: &VertexSubset,
    w: &WeightAssignment,
    lambda: Complex64,
    y: &[Complex64],
) -> Result<(TensorEigenPair, ResidualReport)> {
    let (h, _) = build_blowup(&bm.base, bm.s)?;
    construct_in(&h, bm, subset, w, lambda, y)
}

/// [`construct_blowup_eigenvector`] against a prebuilt blowup hypergraph.
pub(crate) fn construct_in(
    h: &UniformHypergraph,
    bm: &BlowupMap,
    subset: &VertexSubset,
    w: &WeightAssignment,
    lambda: Complex64,
    y: &[Complex64],
) -> Result<(TensorEigenPair, ResidualReport)> {
    if w.s() != bm.s {
        return Err(Error::validation(format!(
            "weights are {}-th roots, blowup has s = {}",
            2 * w.s(),
            bm.s
        )));
    }
    if y.len() != subset.len() || w.len() != subset.len() {
        return Err(Error::validation(format!(
            "subset has {} vertices but {} weights and {} eigenvector entries",
            subset.len(),
            w.len(),
            y.len()
        )));
    }
    if lambda.norm() <= CERTIFY_TOL {
        return Err(Error::InputEigenpair(format!(
            "lambda = {lambda} is zero; use a single-vertex eigenvector"
        )));
    }
    let (sub, labels) = induced_subgraph(&bm.base, subset)?;
    let m = adjacency_from_pi(&sub, w)?;
    let mut y = y.to_vec();
    if normalize_inf(&mut y).is_none() {
        return Err(Error::InputEigenpair("eigenvector is zero or not finite".into()));
    }
    let residual = eigen_residual_inf(&m, lambda, &y);
    if residual > CERTIFY_TOL * m.norm_inf().max(1.0) {
        return Err(Error::InputEigenpair(format!(
            "(lambda, y) is not an eigenpair of the weighted subgraph: residual {residual:.3e}"
        )));
    }
    if let Some(i) = y.iter().position(|z| z.norm() < NOWHERE_ZERO_TOL) {
        return Err(Error::InputEigenpair(format!(
            "eigenvector vanishes at base vertex {} (|y| = {:.1e})",
            labels[i],
            y[i].norm()
        )));
    }

    let inv_s = 1.0 / bm.s as f64;
    let mut x = vec![C0; bm.hypergraph_order()];
    for (idx, &i) in labels.iter().enumerate() {
        let z = y[idx].powf(inv_s);
        for &v in bm.block(i) {
            x[v] = z;
        }
        x[bm.representative(i)] = w.value(idx) * z;
    }
    let pair = TensorEigenPair::new(lambda, x)?;
    let report = eigen_residual(h, &pair)?;
    if !report.is_certified() {
        return Err(Error::Certification {
            lambda: lambda.to_string(),
            residual: report.max_residual,
        });
    }
    Ok((pair, report))
}

/// The pair `(0, e_v)` with `e_v` the unit vector at the representative of
/// base vertex `i`. Certified for every blowup since `s ≥ 2`.
pub fn zero_eigenpair(bm: &BlowupMap, i: usize) -> TensorEigenPair {
    let mut x = vec![C0; bm.hypergraph_order()];
    x[bm.representative(i)] = C1;
    TensorEigenPair { lambda: C0, x }
}
