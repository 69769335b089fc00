//! Eigenvalues of the s-blowup of a graph.
//!
//! The s-blowup `G^[s]` of a simple graph `G` is the `2s`-uniform hypergraph
//! obtained by replacing every vertex `i` with a block `V_i` of `s` fresh
//! vertices and every edge `{i, j}` with the hyperedge `V_i ∪ V_j`. A complex
//! number is an eigenvalue of `G^[s]` exactly when it is an eigenvalue of
//! some induced subgraph of `G` whose vertices carry `2s`-th roots of unity
//! (edge `{i, j}` weighted by `π(i)π(j)`).
//!
//! This crate turns that characterization into a computation:
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`graph`] | simple graphs, edge-list and graph6 input, connected induced subsets |
//! | [`weights`] | root-of-unity vertex weights and weighted adjacency matrices |
//! | [`numeric`] | dense complex eigensolver, characteristic polynomials, symmetric Jacobi |
//! | [`spectrum`] | tolerance-aware sets of complex eigenvalues |
//! | [`hypergraph`] | uniform hypergraphs, the blowup, tensor residuals, eigenvector lifting |
//! | [`engine`] | the full spectrum pipeline with symmetry reductions and certification |
//! | [`classify`] | H/N classification of real eigenvalues |
//! | [`cli`] | the command-line front end |
//!
//! ```
//! use blowup_spectra::{engine::{blowup_spectrum, EngineOptions}, graph::Graph};
//!
//! let k3 = Graph::complete(3);
//! let report = blowup_spectrum(&k3, 2, &EngineOptions::default()).unwrap();
//! assert_eq!(report.spectrum.len(), 11);
//! ```

pub mod classify;
pub mod cli;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod numeric;
pub mod spectrum;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Residual threshold for accepting a tensor eigenpair.
pub const CERTIFY_TOL: f64 = 1e-8;

/// Default absolute tolerance for merging eigenvalues.
pub const DEFAULT_MERGE_TOL: f64 = 1e-7;
