//! Finite sets of complex eigenvalues under an absolute merge tolerance.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::weights::root_of_unity;

/// Where an eigenvalue came from: the induced subgraph (original labels), the
/// η exponents solved on it, a global rotation applied afterwards and the
/// index of the eigenvalue in the solver output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub subset: Vec<usize>,
    pub eta: Vec<u32>,
    pub rotation: u32,
    pub eigen_index: usize,
}

impl Witness {
    /// The single-vertex witness for the eigenvalue 0.
    pub fn zero(vertex: usize) -> Self {
        Witness {
            subset: vec![vertex],
            eta: vec![0],
            rotation: 0,
            eigen_index: 0,
        }
    }

    /// η exponents with the rotation folded in.
    pub fn effective_eta(&self, s: u32) -> Vec<u32> {
        self.eta.iter().map(|f| (f + self.rotation) % s).collect()
    }
}

/// Canonical order: real part, then imaginary part.
pub fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSet {
    values: Vec<Complex64>,
    tol: f64,
    witnesses: Option<Vec<Witness>>,
}

impl SpectrumSet {
    /// Values must already be merged and canonically sorted.
    pub(crate) fn from_parts(values: Vec<Complex64>, tol: f64, witnesses: Option<Vec<Witness>>) -> Self {
        debug_assert!(values
            .windows(2)
            .all(|w| canonical_cmp(&w[0], &w[1]) != Ordering::Greater));
        if let Some(w) = &witnesses {
            assert_eq!(w.len(), values.len());
        }
        SpectrumSet { values, tol, witnesses }
    }

    /// Attaches witnesses to a set whose values are taken as-is (sorted here).
    pub fn with_witnesses(pairs: Vec<(Complex64, Witness)>, tol: f64) -> Self {
        let mut pairs = pairs;
        pairs.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let (values, witnesses) = pairs.into_iter().unzip();
        SpectrumSet {
            values,
            tol,
            witnesses: Some(witnesses),
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn witnesses(&self) -> Option<&[Witness]> {
        self.witnesses.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.values.iter().any(|v| (v - z).norm() <= tol)
    }

    /// Largest modulus, 0 for the empty set.
    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> SpectrumSet {
        merge_spectrum(&self.values.iter().map(|z| z * c).collect::<Vec<_>>(), self.tol)
    }
}

/// One single-linkage cluster.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub centroid: Complex64,
    /// Indices into the input, in canonical order of their values.
    pub members: Vec<usize>,
}

/// Single-linkage clustering with threshold `tol`, independent of input order.
///
/// Centroids of distinct clusters can still end up within `tol` of each other
/// (a chain of points pulls its centroid sideways). Such clusters are joined
/// and the linkage repeated until every pair of centroids is farther apart
/// than `tol`, which makes merging idempotent.
pub fn cluster_single_linkage(points: &[Complex64], tol: f64) -> Vec<Cluster> {
    assert!(tol > 0.0, "merge tolerance must be positive");
    assert!(points.iter().all(|z| z.is_finite()), "cannot merge non-finite values");
    let mean = |members: &[usize]| members.iter().map(|&i| points[i]).sum::<Complex64>() / members.len() as f64;
    let mut groups = link(points, tol);
    loop {
        let centroids: Vec<Complex64> = groups.iter().map(|g| mean(g)).collect();
        let joined = link(&centroids, tol);
        if joined.len() == groups.len() {
            break;
        }
        groups = joined
            .into_iter()
            .map(|parts| {
                let mut members: Vec<usize> = parts.iter().flat_map(|&g| groups[g].iter().copied()).collect();
                members.sort_by(|&a, &b| canonical_cmp(&points[a], &points[b]).then(a.cmp(&b)));
                members
            })
            .collect();
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|members| Cluster {
            centroid: snap(mean(&members)),
            members,
        })
        .collect();
    clusters.sort_by(|a, b| canonical_cmp(&a.centroid, &b.centroid).then(a.members[0].cmp(&b.members[0])));
    clusters
}

/// One pass of single linkage. Returns index groups, each in canonical order.
///
/// Points are bucketed into square cells of side `tol / 2`, so every cell
/// has diameter below `tol` and is one cluster outright. Pairs of cells at
/// most two apart are then linked by a bounding-box test, falling back to
/// pairwise distances only when the boxes straddle the threshold.
fn link(points: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| canonical_cmp(&points[a], &points[b]).then(a.cmp(&b)));

    let side = tol / 2.0;
    let mut cells: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for &i in &order {
        let key = (
            (points[i].re / side).floor() as i64,
            (points[i].im / side).floor() as i64,
        );
        cells.entry(key).or_default().push(i);
    }

    let mut parent: Vec<usize> = (0..points.len()).collect();
    let mut boxes: BTreeMap<(i64, i64), [f64; 4]> = BTreeMap::new();
    for (key, members) in &cells {
        for &m in &members[1..] {
            union(&mut parent, members[0], m);
        }
        let mut bb = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
        for &m in members {
            bb[0] = bb[0].min(points[m].re);
            bb[1] = bb[1].max(points[m].re);
            bb[2] = bb[2].min(points[m].im);
            bb[3] = bb[3].max(points[m].im);
        }
        boxes.insert(*key, bb);
    }

    for (&(cx, cy), members) in &cells {
        for dx in -2i64..=2 {
            for dy in -2i64..=2 {
                if (dx, dy) <= (0, 0) {
                    continue;
                }
                let Some(other) = cells.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                if find(&mut parent, members[0]) == find(&mut parent, other[0]) {
                    continue;
                }
                let (a, b) = (boxes[&(cx, cy)], boxes[&(cx + dx, cy + dy)]);
                let gap_re = (b[0] - a[1]).max(a[0] - b[1]).max(0.0);
                let gap_im = (b[2] - a[3]).max(a[2] - b[3]).max(0.0);
                if gap_re.hypot(gap_im) > tol {
                    continue;
                }
                let span_re = a[1].max(b[1]) - a[0].min(b[0]);
                let span_im = a[3].max(b[3]) - a[2].min(b[2]);
                if span_re.hypot(span_im) <= tol {
                    union(&mut parent, members[0], other[0]);
                    continue;
                }
                'pairs: for &p in members {
                    for &q in other {
                        if (points[p] - points[q]).norm() <= tol {
                            union(&mut parent, p, q);
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in &order {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Flushes round-off sized components (and negative zero) to `+0.0`.
fn snap(z: Complex64) -> Complex64 {
    let f = |x: f64| if x.abs() <= 1e-14 { 0.0 } else { x };
    Complex64::new(f(z.re), f(z.im))
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Deduplicates `values`: clusters are formed by single linkage at `tol` and
/// each is represented by its centroid.
pub fn merge_spectrum(values: &[Complex64], tol: f64) -> SpectrumSet {
    let clusters = cluster_single_linkage(values, tol);
    SpectrumSet {
        values: clusters.into_iter().map(|c| c.centroid).collect(),
        tol,
        witnesses: None,
    }
}

/// `{ωλ : λ ∈ sp, ωˢ = 1}`, merged at `sp.tol()`. Witnesses record the rotation;
/// when rotated copies merge, the least-rotated witness is kept.
pub fn rotation_closure(sp: &SpectrumSet, s: u32) -> SpectrumSet {
    assert!(s >= 1, "rotation order must be positive");
    let mut points = Vec::with_capacity(sp.len() * s as usize);
    let mut origin = Vec::with_capacity(points.capacity());
    for r in 0..s {
        let omega = root_of_unity(r, s);
        for (k, z) in sp.values.iter().enumerate() {
            points.push(z * omega);
            origin.push((r, k));
        }
    }
    let clusters = cluster_single_linkage(&points, sp.tol);
    let values = clusters.iter().map(|c| c.centroid).collect();
    let witnesses = sp.witnesses.as_ref().map(|ws| {
        clusters
            .iter()
            .map(|c| {
                let &(r, k) = c.members.iter().map(|&m| &origin[m]).min().unwrap();
                let mut w = ws[k].clone();
                w.rotation = (w.rotation + r) % s;
                w
            })
            .collect()
    });
    SpectrumSet {
        values,
        tol: sp.tol,
        witnesses,
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectrumComparison {
    pub a_minus_b: Vec<Complex64>,
    pub b_minus_a: Vec<Complex64>,
    /// Largest distance among matched pairs.
    pub max_matched_distance: f64,
}

impl SpectrumComparison {
    pub fn is_equal(&self) -> bool {
        self.a_minus_b.is_empty() && self.b_minus_a.is_empty()
    }
}

/// Tolerance matching of two value lists: candidate pairs within `tol` are
/// matched greedily by increasing distance; leftovers are reported per side.
pub fn compare_values(a: &[Complex64], b: &[Complex64], tol: f64) -> SpectrumComparison {
    assert!(tol > 0.0, "comparison tolerance must be positive");
    let mut candidates = Vec::new();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let d = (x - y).norm();
            if d <= tol {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut max_matched_distance = 0.0f64;
    for (d, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            max_matched_distance = max_matched_distance.max(d);
        }
    }
    SpectrumComparison {
        a_minus_b: a.iter().zip(&used_a).filter(|(_, &u)| !u).map(|(z, _)| *z).collect(),
        b_minus_a: b.iter().zip(&used_b).filter(|(_, &u)| !u).map(|(z, _)| *z).collect(),
        max_matched_distance,
    }
}

pub fn compare_spectra(a: &SpectrumSet, b: &SpectrumSet, tol: f64) -> SpectrumComparison {
    compare_values(&a.values, &b.values, tol)
}
