//! Complex eigenpairs: Householder reduction to Hessenberg form, shifted QR
//! to Schur form, eigenvectors by back-substitution on the triangular factor.

use num_complex::Complex64;

use super::{normalize_inf, vec_norm_inf, ComplexMatrix, C0, C1};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const MAX_ITER_PER_EIGENVALUE: usize = 60;
/// Residual bound `‖Mv − λv‖∞ ≤ RESIDUAL_BOUND · max(1, ‖M‖∞)` with `‖v‖∞ = 1`.
const RESIDUAL_BOUND: f64 = 1e-8;
/// Radius, relative to `max(1, ‖M‖∞)`, within which computed eigenvalues are
/// tested as perturbed copies of one multiple eigenvalue.
const CLUSTER_RADIUS: f64 = 1e-3;
const CLUSTER_ACCEPT: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: Complex64,
    /// Scaled so that its largest-modulus entry is exactly 1.
    pub vector: Vec<Complex64>,
}

/// All `dim` eigenpairs of `m`, counted with algebraic multiplicity.
pub fn complex_eigenpairs(m: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::validation("eigenproblem of an empty matrix"));
    }
    if !m.is_finite() {
        return Err(Error::validation("matrix has non-finite entries"));
    }
    let norm = m.norm_inf();
    let bound = RESIDUAL_BOUND * norm.max(1.0);

    let mut t = m.clone();
    let mut q = ComplexMatrix::identity(n);
    hessenberg(&mut t, &mut q);
    schur(&mut t, &mut q).map_err(|iterations| Error::NonConvergence {
        iterations,
        matrix: Box::new(m.clone()),
    })?;

    let mut pairs = Vec::with_capacity(n);
    for k in 0..n {
        let value = t[(k, k)];
        let mut vector = schur_eigenvector(&t, &q, k, norm);
        if normalize_inf(&mut vector).is_none() || eigen_residual_inf(m, value, &vector) > bound {
            let start = if vector.iter().all(|z| z.is_finite()) {
                vector
            } else {
                vec![C1; n]
            };
            vector = inverse_iteration(m, value, &start);
            if eigen_residual_inf(m, value, &vector) > bound {
                return Err(Error::NonConvergence {
                    iterations: 0,
                    matrix: Box::new(m.clone()),
                });
            }
        }
        pairs.push(EigenPair { value, vector });
    }
    polish_clusters(m, &mut pairs, norm);
    Ok(pairs)
}

/// `‖Mv − λv‖∞`.
pub fn eigen_residual_inf(m: &ComplexMatrix, value: Complex64, v: &[Complex64]) -> f64 {
    m.mul_vec(v)
        .iter()
        .zip(v)
        .map(|(mv, x)| (mv - value * x).norm())
        .fold(0.0, f64::max)
}

/// A few steps of inverse iteration with shift `mu`, starting from `start`.
/// The result is normalized with [`normalize_inf`].
pub fn inverse_iteration(m: &ComplexMatrix, mu: Complex64, start: &[Complex64]) -> Vec<Complex64> {
    let n = m.dim();
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] -= mu;
    }
    let floor = EPS * m.norm_inf().max(1.0);
    let lu = Lu::factor(a, floor);
    let mut v: Vec<Complex64> = start.to_vec();
    if normalize_inf(&mut v).is_none() {
        v = vec![C1; n];
    }
    // On a defective eigenvalue the eigenvector lies in the range of
    // `M − μI`, so further solves drift back to a generalized eigenvector.
    // Keep the best iterate rather than the last.
    let mut best = (eigen_residual_inf(m, mu, &v), v.clone());
    for _ in 0..3 {
        let mut w = lu.solve(&v);
        if normalize_inf(&mut w).is_none() {
            break;
        }
        let r = eigen_residual_inf(m, mu, &w);
        if r < best.0 {
            best = (r, w.clone());
        }
        v = w;
    }
    best.1
}

/// Replaces each tight cluster of computed eigenvalues by its mean when the
/// mean is itself an eigenvalue to high accuracy. Defective eigenvalues are
/// perturbed by roughly `ε^(1/k)` for a Jordan block of size `k`, while the
/// cluster mean stays accurate to `O(ε)`.
fn polish_clusters(m: &ComplexMatrix, pairs: &mut [EigenPair], norm: f64) {
    let n = pairs.len();
    if n < 2 {
        return;
    }
    let radius = CLUSTER_RADIUS * norm.max(1.0);
    let accept = CLUSTER_ACCEPT * norm.max(1.0);
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (pairs[i].value - pairs[j].value).norm() <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| find(&mut label, i) == root).collect();
        if members.len() < 2 {
            continue;
        }
        let spread = members
            .iter()
            .map(|&i| (pairs[i].value - pairs[root].value).norm())
            .fold(0.0, f64::max);
        if spread == 0.0 {
            continue;
        }
        let mean = members.iter().map(|&i| pairs[i].value).sum::<Complex64>() / members.len() as f64;
        let mut refined = Vec::with_capacity(members.len());
        let mut ok = true;
        for &i in &members {
            let v = &pairs[i].vector;
            if eigen_residual_inf(m, mean, v) <= accept {
                refined.push(v.clone());
                continue;
            }
            // A start close to the eigenvector of a Jordan block can stall,
            // so fall back to the all-ones vector and the coordinate vectors.
            let dim = v.len();
            let starts = std::iter::once(v.clone())
                .chain(std::iter::once(vec![C1; dim]))
                .chain((0..dim).map(|j| (0..dim).map(|r| if r == j { C1 } else { C0 }).collect()));
            match starts
                .map(|s0| inverse_iteration(m, mean, &s0))
                .find(|w| eigen_residual_inf(m, mean, w) <= accept)
            {
                Some(w) => refined.push(w),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for (&i, v) in members.iter().zip(refined) {
                pairs[i].value = mean;
                pairs[i].vector = v;
            }
        }
    }
}

fn find(label: &mut [usize], mut i: usize) -> usize {
    while label[i] != i {
        label[i] = label[label[i]];
        i = label[i];
    }
    i
}

/// In-place Householder reduction `H = Qᴴ M Q`, accumulating `Q`.
fn hessenberg(h: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = h.dim();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { C1 };
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← (I − 2vvᴴ) H
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= 2.0 * vr * dot;
            }
        }
        // H ← H (I − 2vvᴴ), Q ← Q (I − 2vvᴴ)
        for mat in [&mut *h, &mut *q] {
            for i in 0..n {
                let dot: Complex64 = v.iter().enumerate().map(|(c, vc)| mat[(i, k + 1 + c)] * vc).sum();
                for (c, vc) in v.iter().enumerate() {
                    mat[(i, k + 1 + c)] -= 2.0 * dot * vc.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C0;
        }
    }
}

/// Shifted QR iteration on a Hessenberg matrix, producing the full Schur form.
/// Returns the iteration count on failure.
fn schur(h: &mut ComplexMatrix, q: &mut ComplexMatrix) -> std::result::Result<(), usize> {
    let n = h.dim();
    if n == 1 {
        return Ok(());
    }
    let mut hi = n - 1;
    let mut its = 0;
    let mut total = 0;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut tst = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if tst == 0.0 {
                tst = active_norm(h, 0, hi);
            }
            if sub <= EPS * tst || sub < f64::MIN_POSITIVE {
                h[(l, l - 1)] = C0;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        total += 1;
        if its > MAX_ITER_PER_EIGENVALUE {
            return Err(total);
        }

        let mu = if its % 10 == 0 {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(h, q, l, hi, mu);
    }
    Ok(())
}

fn active_norm(h: &ComplexMatrix, lo: usize, hi: usize) -> f64 {
    let mut s = 0.0f64;
    for i in lo..=hi {
        for j in lo..=hi {
            s = s.max(h[(i, j)].norm());
        }
    }
    s.max(f64::MIN_POSITIVE)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let denom = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    }
}

fn qr_step(h: &mut ComplexMatrix, q: &mut ComplexMatrix, lo: usize, hi: usize, mu: Complex64) {
    let n = h.dim();
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..n {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = c * x + s * y;
            h[(k + 1, j)] = -s.conj() * x + c * y;
        }
        h[(k + 1, k)] = C0;
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in 0..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
        for i in 0..n {
            let (x, y) = (q[(i, k)], q[(i, k + 1)]);
            q[(i, k)] = x * c + y * s.conj();
            q[(i, k + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Rotation `[[c, s], [−s̄, c]]` (real `c`) mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, C0);
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Eigenvector for the `k`-th diagonal entry of the triangular factor,
/// mapped back through `Q`. Tiny pivots are replaced by a floor so repeated
/// eigenvalues still yield usable vectors.
fn schur_eigenvector(t: &ComplexMatrix, q: &ComplexMatrix, k: usize, norm: f64) -> Vec<Complex64> {
    let n = t.dim();
    let lambda = t[(k, k)];
    let smin = (EPS * lambda.norm().max(norm)).max(f64::MIN_POSITIVE);
    let mut x = vec![C0; k + 1];
    x[k] = C1;
    for i in (0..k).rev() {
        let mut sum = t[(i, k)];
        for j in i + 1..k {
            sum += t[(i, j)] * x[j];
        }
        let mut denom = t[(i, i)] - lambda;
        if denom.norm() < smin {
            denom = Complex64::new(smin, 0.0);
        }
        x[i] = -sum / denom;
        let big = vec_norm_inf(&x[i..]);
        if big > 1e150 {
            for z in x.iter_mut() {
                *z /= big;
            }
        }
    }
    (0..n).map(|r| (0..=k).map(|c| q[(r, c)] * x[c]).sum()).collect()
}

/// LU factorization with partial pivoting; zero pivots are floored.
struct Lu {
    a: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: ComplexMatrix, floor: f64) -> Lu {
        let n = a.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
                .unwrap();
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = a[(k, j)];
                    a[(k, j)] = a[(p, j)];
                    a[(p, j)] = tmp;
                }
            }
            if a[(k, k)].norm() < floor {
                a[(k, k)] = Complex64::new(floor, 0.0);
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                if f != C0 {
                    for j in k + 1..n {
                        let akj = a[(k, j)];
                        a[(i, j)] -= f * akj;
                    }
                }
            }
        }
        Lu { a, perm }
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.a.dim();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.a[(i, j)];
                let yj = y[j];
                y[i] -= l * yj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.a[(i, j)];
                let yj = y[j];
                y[i] -= u * yj;
            }
            y[i] /= self.a[(i, i)];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_values(m: &ComplexMatrix) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = complex_eigenpairs(m).unwrap().into_iter().map(|p| p.value).collect();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn check_pairs(m: &ComplexMatrix) {
        let bound = RESIDUAL_BOUND * m.norm_inf().max(1.0);
        let pairs = complex_eigenpairs(m).unwrap();
        assert_eq!(pairs.len(), m.dim());
        for p in &pairs {
            assert!((vec_norm_inf(&p.vector) - 1.0).abs() < 1e-12);
            assert!(eigen_residual_inf(m, p.value, &p.vector) <= bound);
        }
    }

    #[test]
    fn k3_adjacency() {
        let m = ComplexMatrix::from_real(&[vec![0., 1., 1.], vec![1., 0., 1.], vec![1., 1., 0.]]).unwrap();
        let v = sorted_values(&m);
        for (got, want) in v.iter().zip([-1.0, -1.0, 2.0]) {
            assert!((got - c(want, 0.0)).norm() < 1e-12, "{got}");
        }
        check_pairs(&m);
    }

    #[test]
    fn identity_has_exact_pairs() {
        let m = ComplexMatrix::identity(2);
        for p in complex_eigenpairs(&m).unwrap() {
            assert_eq!(p.value, C1);
            assert_eq!(eigen_residual_inf(&m, p.value, &p.vector), 0.0);
        }
    }

    #[test]
    fn rotation_generator() {
        let m = ComplexMatrix::from_real(&[vec![0., 1.], vec![-1., 0.]]).unwrap();
        let v = sorted_values(&m);
        assert!((v[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((v[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn jordan_blocks_polish_to_the_multiple_eigenvalue() {
        // nilpotent weighted path: diag(1, 1, -1) A(P3)
        let m = ComplexMatrix::from_real(&[vec![0., 1., 0.], vec![1., 0., 1.], vec![0., -1., 0.]]).unwrap();
        for p in complex_eigenpairs(&m).unwrap() {
            assert!(p.value.norm() < 1e-12, "{}", p.value);
        }
        check_pairs(&m);

        let j = ComplexMatrix::from_rows(&[
            vec![c(2.0, 1.0), C1, C0, C0],
            vec![C0, c(2.0, 1.0), C1, C0],
            vec![C0, C0, c(2.0, 1.0), C1],
            vec![C0, C0, C0, c(2.0, 1.0)],
        ])
        .unwrap();
        for p in complex_eigenpairs(&j).unwrap() {
            assert!((p.value - c(2.0, 1.0)).norm() < 1e-10, "{}", p.value);
        }
        check_pairs(&j);
    }

    #[test]
    fn close_but_distinct_eigenvalues_are_kept() {
        let m = ComplexMatrix::from_real(&[vec![1.0, 1.0], vec![0.0, 1.0 + 1e-4]]).unwrap();
        let v = sorted_values(&m);
        assert!((v[0].re - 1.0).abs() < 1e-12);
        assert!((v[1].re - 1.0001).abs() < 1e-12);
    }

    #[test]
    fn zero_and_one_by_one() {
        let v = sorted_values(&ComplexMatrix::zeros(3));
        assert!(v.iter().all(|z| *z == C0));
        let m = ComplexMatrix::from_rows(&[vec![c(0.5, -2.0)]]).unwrap();
        assert_eq!(sorted_values(&m), vec![c(0.5, -2.0)]);
        assert!(complex_eigenpairs(&ComplexMatrix::zeros(0)).is_err());
    }
}
