//! Shared helpers for the integration tests: graph enumeration up to
//! isomorphism and an oracle for blowup spectra that shares no code with the
//! library's eigensolver or reductions.

#![allow(dead_code)]

use blowup_spectra::graph::Graph;
use num_complex::Complex64;

/// All `(i, j)` with `i < j < n`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, found by brute-force canonical forms (minimum edge mask over all
/// relabelings).
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs = pairs(n);
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let perms = permutations(n);
    // image of each pair under each permutation
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(i, j)| index(p[i], p[j])).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = maps
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .filter(|&(b, _)| mask >> b & 1 == 1)
                    .fold(0u32, |acc, (_, &t)| acc | 1 << t)
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Every labeled graph on exactly `n` vertices.
pub fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs = pairs(n);
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    graphs_up_to_iso(n).into_iter().filter(|g| g.is_connected()).collect()
}

/// Graphs on 1..=max_n vertices, one per isomorphism class.
pub fn all_graphs(max_n: usize, connected_only: bool) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| {
            if connected_only {
                connected_graphs_up_to_iso(n)
            } else {
                graphs_up_to_iso(n)
            }
        })
        .collect()
}

/// Connectivity by depth-first search over an adjacency test.
pub fn brute_connected(g: &Graph, members: &[usize]) -> bool {
    if members.is_empty() {
        return false;
    }
    let mut seen = vec![members[0]];
    let mut stack = vec![members[0]];
    while let Some(v) = stack.pop() {
        for &u in members {
            if !seen.contains(&u) && g.has_edge(u, v) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen.len() == members.len()
}

pub fn unit(k: u32, m: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
}

type Poly = Vec<Complex64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `det(λI − M)` by the Leibniz expansion, coefficients ascending.
pub fn leibniz_char_poly(m: &[Vec<Complex64>]) -> Poly {
    let n = m.len();
    let mut total = vec![Complex64::new(0.0, 0.0); n + 1];
    for p in permutations(n) {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term: Poly = vec![Complex64::new(if inversions % 2 == 0 { 1.0 } else { -1.0 }, 0.0)];
        for (i, &j) in p.iter().enumerate() {
            let factor = if i == j {
                vec![-m[i][j], Complex64::new(1.0, 0.0)]
            } else {
                vec![-m[i][j]]
            };
            term = poly_mul(&term, &factor);
        }
        for (k, c) in term.into_iter().enumerate() {
            total[k] += c;
        }
    }
    total
}

fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn derivative(p: &[Complex64]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

/// Roots of a monic polynomial: Durand–Kerner iteration, then every cluster
/// of `m` nearby roots is replaced by the simple root of the `(m−1)`-th
/// derivative near the cluster mean, which is accurate where the plain
/// iteration loses digits to multiplicity.
pub fn poly_roots(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let bound = 1.0 + p[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound * 0.5).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            if denom.norm() > 0.0 {
                let step = eval(p, z[i]) / denom;
                z[i] -= step;
            }
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-16) {
            break;
        }
    }
    // Newton on p itself, then on derivatives for clusters of nearby roots.
    let newton = |q: &[Complex64], start: Complex64| {
        let dq = derivative(q);
        let mut r = start;
        for _ in 0..60 {
            let slope = eval(&dq, r);
            if slope.norm() == 0.0 {
                break;
            }
            let step = eval(q, r) / slope;
            r -= step;
            if step.norm() < 1e-17 {
                break;
            }
        }
        r
    };
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if done[i] {
            continue;
        }
        let cluster: Vec<usize> = (i..n).filter(|&j| !done[j] && (z[j] - z[i]).norm() < 1e-2).collect();
        let mean = cluster.iter().map(|&j| z[j]).sum::<Complex64>() / cluster.len() as f64;
        let mut d = p.to_vec();
        for _ in 1..cluster.len() {
            d = derivative(&d);
        }
        let r = newton(&d, mean);
        // a true m-fold root is a root of p and of its first m−1 derivatives
        let mut q = p.to_vec();
        let mut is_multiple = true;
        for _ in 0..cluster.len() {
            let scale = q.iter().map(|c| c.norm()).fold(1.0, f64::max) * (1.0 + r.norm()).powi(q.len() as i32);
            is_multiple &= eval(&q, r).norm() <= 1e-9 * scale;
            q = derivative(&q);
        }
        if is_multiple {
            cluster.iter().for_each(|&j| done[j] = true);
            out.extend(std::iter::repeat_n(r, cluster.len()));
        } else {
            done[i] = true;
            out.push(newton(p, z[i]));
        }
    }
    out
}

/// Adds `z` to `set` unless a point within `tol` is already present.
pub fn insert_distinct(set: &mut Vec<Complex64>, z: Complex64, tol: f64) {
    if !set.iter().any(|w| (w - z).norm() <= tol) {
        set.push(z);
    }
}

/// Eigenvalues of `G^[s]` from the plain statement: the union over every
/// nonempty induced subgraph and every assignment of `2s`-th roots of unity
/// of the weighted adjacency eigenvalues, plus 0. No η reduction, rotation
/// quotient, or connectivity reduction.
pub fn oracle_blowup_spectrum(g: &Graph, s: u32, tol: f64) -> Vec<Complex64> {
    let n = g.n();
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for mask in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = members.len();
        let patterns = (2 * s as usize).pow(k as u32);
        for code in 0..patterns {
            let mut c = code;
            let pi: Vec<Complex64> = (0..k)
                .map(|_| {
                    let e = c % (2 * s as usize);
                    c /= 2 * s as usize;
                    unit(e as u32, 2 * s)
                })
                .collect();
            let m: Vec<Vec<Complex64>> = (0..k)
                .map(|a| {
                    (0..k)
                        .map(|b| {
                            if g.has_edge(members[a], members[b]) {
                                pi[a] * pi[b]
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        })
                        .collect()
                })
                .collect();
            for r in poly_roots(&leibniz_char_poly(&m)) {
                let r = if r.norm() <= 1e-8 { Complex64::new(0.0, 0.0) } else { r };
                insert_distinct(&mut out, r, tol);
            }
        }
    }
    out
}

/// `(A x^{k−1})_v` from the dense adjacency tensor with entries `1/(k−1)!`
/// on every permutation of every edge, summed over all index tuples.
pub fn dense_tensor_apply(k: usize, n: usize, edges: &[Vec<usize>], x: &[Complex64]) -> Vec<Complex64> {
    let factorial: f64 = (1..k).map(|i| i as f64).product();
    let mut tensor = std::collections::HashMap::new();
    for e in edges {
        for p in permutations(k) {
            let idx: Vec<usize> = p.iter().map(|&i| e[i]).collect();
            tensor.insert(idx, 1.0 / factorial);
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let tuples = n.pow(k as u32);
    for code in 0..tuples {
        let mut c = code;
        let idx: Vec<usize> = (0..k)
            .map(|_| {
                let v = c % n;
                c /= n;
                v
            })
            .collect();
        if let Some(&a) = tensor.get(&idx) {
            out[idx[0]] += idx[1..].iter().map(|&u| x[u]).product::<Complex64>() * a;
        }
    }
    out
}

/// Matches each point of `a` to a distinct point of `b` within `tol`.
pub fn same_set(a: &[Complex64], b: &[Complex64], tol: f64) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("sizes differ: {} vs {}\n{a:?}\n{b:?}", a.len(), b.len()));
    }
    let mut used = vec![false; b.len()];
    for z in a {
        match (0..b.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (b[i] - z).norm().total_cmp(&(b[j] - z).norm()))
        {
            Some(j) if (b[j] - z).norm() <= tol => used[j] = true,
            _ => return Err(format!("{z} has no partner within {tol}\n{a:?}\n{b:?}")),
        }
    }
    Ok(())
}
