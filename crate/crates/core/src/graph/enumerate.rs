use super::{low_mask, Graph, VertexSubset};

/// Connected vertex sets whose minimum vertex is `anchor`, sorted by bitset value.
///
/// Binary branching over the frontier: each candidate neighbor is either
/// added to the set or permanently excluded, so every connected set is
/// reached by exactly one decision sequence.
pub fn connected_subsets_anchored(g: &Graph, anchor: usize) -> Vec<u64> {
    assert!(anchor < g.n(), "anchor {anchor} outside graph");
    let allowed = g.all_vertices() & !low_mask(anchor + 1);
    let mut out = Vec::new();
    let start = 1u64 << anchor;
    branch(g, allowed, start, g.row(anchor) & allowed, 0, &mut out);
    out.sort_unstable();
    out
}

fn branch(g: &Graph, allowed: u64, set: u64, frontier: u64, excluded: u64, out: &mut Vec<u64>) {
    if frontier == 0 {
        out.push(set);
        return;
    }
    let u = frontier.trailing_zeros() as usize;
    let bit = 1u64 << u;
    let grown = set | bit;
    let next_frontier = (frontier | g.row(u)) & allowed & !grown & !excluded;
    branch(g, allowed, grown, next_frontier, excluded, out);
    branch(g, allowed, set, frontier & !bit, excluded | bit, out);
}

/// Every vertex subset inducing a connected subgraph, ordered by minimum
/// vertex and then by bitset value. Each anchor is an independent chunk.
pub struct ConnectedSubsets<'a> {
    graph: &'a Graph,
    anchor: usize,
    pending: std::vec::IntoIter<u64>,
}

impl Iterator for ConnectedSubsets<'_> {
    type Item = VertexSubset;

    fn next(&mut self) -> Option<VertexSubset> {
        loop {
            if let Some(bits) = self.pending.next() {
                return Some(VertexSubset::new(self.graph.n(), bits).expect("subset in range"));
            }
            if self.anchor >= self.graph.n() {
                return None;
            }
            self.pending = connected_subsets_anchored(self.graph, self.anchor).into_iter();
            self.anchor += 1;
        }
    }
}

pub fn enumerate_connected_subsets(g: &Graph) -> ConnectedSubsets<'_> {
    ConnectedSubsets {
        graph: g,
        anchor: 0,
        pending: Vec::new().into_iter(),
    }
}

/// All nonempty subsets, ordered like [`enumerate_connected_subsets`].
pub fn enumerate_all_subsets(g: &Graph) -> Vec<VertexSubset> {
    let n = g.n();
    let mut out: Vec<u64> = (1..=g.all_vertices()).collect();
    out.sort_by_key(|&b| (b.trailing_zeros(), b));
    out.into_iter().map(|b| VertexSubset::new(n, b).unwrap()).collect()
}
