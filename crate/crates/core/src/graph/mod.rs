//! Simple undirected graphs on at most 62 vertices, stored as adjacency bitsets.

mod enumerate;
mod parse;

pub use enumerate::{connected_subsets_anchored, enumerate_all_subsets, enumerate_connected_subsets, ConnectedSubsets};
pub use parse::{encode_graph6, parse_edge_list, parse_graph6};

use crate::error::{Error, Result};
use crate::numeric::symmetric_eigen;

/// Largest vertex count any graph may have.
pub const MAX_VERTICES: usize = 62;

/// Soft limit for the full spectrum pipeline.
pub const PIPELINE_SOFT_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::validation(format!(
                "graph has {n} vertices, at most {MAX_VERTICES} are supported"
            )));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("complete graph too large");
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("path too large");
        for i in 1..n {
            g.add_edge(i - 1, i).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).unwrap();
        }
        g
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::validation(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::validation(format!(
                "edge ({u}, {v}) references a vertex outside 0..{}",
                self.n
            )));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] >> v & 1 == 1
    }

    /// Neighbor bitset of `v`.
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            let mut higher = self.rows[i] & !low_mask(i + 1);
            while higher != 0 {
                let j = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((i, j));
            }
        }
        out
    }

    pub fn all_vertices(&self) -> u64 {
        low_mask(self.n)
    }

    /// Whether the subgraph induced on `members` is connected. The empty set is not.
    pub fn is_connected_subset(&self, members: u64) -> bool {
        if members == 0 {
            return false;
        }
        let start = members & members.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.rows[v] & members & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == members
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.is_connected_subset(self.all_vertices())
    }

    /// Plain 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// A set of vertices of a parent graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    parent_n: usize,
    members: u64,
}

impl VertexSubset {
    pub fn new(parent_n: usize, members: u64) -> Result<Self> {
        if members & !low_mask(parent_n) != 0 {
            return Err(Error::validation(format!(
                "subset {members:#b} has vertices outside 0..{parent_n}"
            )));
        }
        Ok(VertexSubset { parent_n, members })
    }

    pub fn from_vertices(parent_n: usize, vertices: &[usize]) -> Result<Self> {
        let mut members = 0u64;
        for &v in vertices {
            if v >= parent_n {
                return Err(Error::validation(format!("vertex {v} outside 0..{parent_n}")));
            }
            members |= 1 << v;
        }
        Ok(VertexSubset { parent_n, members })
    }

    pub fn full(g: &Graph) -> Self {
        VertexSubset {
            parent_n: g.n(),
            members: g.all_vertices(),
        }
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    pub fn bits(&self) -> u64 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.parent_n && self.members >> v & 1 == 1
    }

    pub fn min_vertex(&self) -> Option<usize> {
        (self.members != 0).then(|| self.members.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.members;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
}

/// Induced subgraph on `subset`, relabelled `0..|subset|` in ascending order
/// of original label. The second component maps new labels to original ones.
pub fn induced_subgraph(g: &Graph, subset: &VertexSubset) -> Result<(Graph, Vec<usize>)> {
    if subset.is_empty() {
        return Err(Error::validation("induced subgraph of an empty vertex set"));
    }
    if subset.parent_n() != g.n() {
        return Err(Error::validation(format!(
            "subset belongs to a graph on {} vertices, not {}",
            subset.parent_n(),
            g.n()
        )));
    }
    let labels = subset.vertices();
    let mut sub = Graph::empty(labels.len())?;
    for (a, &u) in labels.iter().enumerate() {
        for (b, &v) in labels.iter().enumerate().skip(a + 1) {
            if g.has_edge(u, v) {
                sub.add_edge(a, b)?;
            }
        }
    }
    Ok((sub, labels))
}

/// Largest adjacency eigenvalue; 0 for edgeless graphs.
pub fn spectral_radius(g: &Graph) -> f64 {
    if g.edge_count() == 0 {
        return 0.0;
    }
    let (values, _) = symmetric_eigen(&g.adjacency());
    values.last().copied().unwrap_or(0.0).max(0.0)
}
