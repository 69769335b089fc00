//! Root-of-unity vertex weights and the weighted adjacency matrices they induce.
//!
//! Weights are stored as integer exponents: a [`WeightAssignment`] holds
//! `e_i ∈ [0, 2s)` meaning `π(i) = exp(2πι e_i / 2s)`, and an
//! [`EtaAssignment`] holds `f_i ∈ [0, s)` meaning `η_i = exp(2πι f_i / s)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{ComplexMatrix, C0};

/// `exp(2πι · k / m)`, exact on the real and imaginary axes.
pub fn root_of_unity(k: u32, m: u32) -> Complex64 {
    assert!(m > 0, "order of a root of unity must be positive");
    let k = k % m;
    if (4 * k).is_multiple_of(m) {
        return match 4 * k / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (sin, cos) = (std::f64::consts::TAU * k as f64 / m as f64).sin_cos();
    Complex64::new(cos, sin)
}

fn check_s(s: u32) -> Result<()> {
    if s < 2 {
        return Err(Error::validation(format!("s must be at least 2, got {s}")));
    }
    Ok(())
}

/// Per-vertex `2s`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightAssignment {
    s: u32,
    exponents: Vec<u32>,
}

impl WeightAssignment {
    pub fn new(s: u32, exponents: Vec<u32>) -> Result<Self> {
        check_s(s)?;
        if let Some(e) = exponents.iter().find(|&&e| e >= 2 * s) {
            return Err(Error::validation(format!("weight exponent {e} outside [0, {})", 2 * s)));
        }
        Ok(WeightAssignment { s, exponents })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn value(&self, i: usize) -> Complex64 {
        root_of_unity(self.exponents[i], 2 * self.s)
    }

    pub fn values(&self) -> Vec<Complex64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// `η_i = π(i)²`.
    pub fn squares(&self) -> EtaAssignment {
        EtaAssignment {
            s: self.s,
            exponents: self.exponents.iter().map(|e| e % self.s).collect(),
        }
    }
}

/// Per-vertex `s`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EtaAssignment {
    s: u32,
    exponents: Vec<u32>,
}

impl EtaAssignment {
    pub fn new(s: u32, exponents: Vec<u32>) -> Result<Self> {
        check_s(s)?;
        if let Some(f) = exponents.iter().find(|&&f| f >= s) {
            return Err(Error::validation(format!("eta exponent {f} outside [0, {s})")));
        }
        Ok(EtaAssignment { s, exponents })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn value(&self, i: usize) -> Complex64 {
        root_of_unity(self.exponents[i], self.s)
    }

    /// Multiplies every entry by `exp(2πι r / s)`.
    pub fn rotated(&self, r: u32) -> EtaAssignment {
        EtaAssignment {
            s: self.s,
            exponents: self.exponents.iter().map(|f| (f + r) % self.s).collect(),
        }
    }

    /// A square root: `π(i) = exp(2πι f_i / 2s)`, i.e. `e_i = f_i`.
    pub fn square_root(&self) -> WeightAssignment {
        WeightAssignment {
            s: self.s,
            exponents: self.exponents.clone(),
        }
    }
}

/// `M[i][j] = π(i)π(j)` on edges. Symmetric but not Hermitian in general.
pub fn adjacency_from_pi(g: &Graph, w: &WeightAssignment) -> Result<ComplexMatrix> {
    if w.len() != g.n() {
        return Err(Error::validation(format!(
            "{} weights for a graph on {} vertices",
            w.len(),
            g.n()
        )));
    }
    let pi = w.values();
    let mut m = ComplexMatrix::zeros(g.n());
    for (i, j) in g.edges() {
        let a = pi[i] * pi[j];
        m[(i, j)] = a;
        m[(j, i)] = a;
    }
    Ok(m)
}

/// `diag(η) · A(g)`: row `i` of the adjacency matrix scaled by `η_i`.
pub fn adjacency_from_eta(g: &Graph, h: &EtaAssignment) -> Result<ComplexMatrix> {
    if h.len() != g.n() {
        return Err(Error::validation(format!(
            "{} eta values for a graph on {} vertices",
            h.len(),
            g.n()
        )));
    }
    let mut m = ComplexMatrix::zeros(g.n());
    for i in 0..g.n() {
        let eta = h.value(i);
        for j in 0..g.n() {
            m[(i, j)] = if g.has_edge(i, j) { eta } else { C0 };
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{complex_eigenpairs, C1};

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn values(m: &ComplexMatrix) -> Vec<Complex64> {
        let mut v: Vec<_> = complex_eigenpairs(m).unwrap().into_iter().map(|p| p.value).collect();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn roots_exact_on_axes() {
        assert_eq!(root_of_unity(1, 4), I);
        assert_eq!(root_of_unity(3, 6), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(7, 4), -I);
        let w = root_of_unity(1, 3);
        assert!((w.powu(3) - C1).norm() < 1e-15);
    }

    #[test]
    fn pi_examples() {
        let k2 = Graph::complete(2);
        let m = adjacency_from_pi(&k2, &WeightAssignment::new(2, vec![0, 0]).unwrap()).unwrap();
        assert_eq!(m.rows(), vec![vec![C0, C1], vec![C1, C0]]);

        let m = adjacency_from_pi(&k2, &WeightAssignment::new(2, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(m.rows(), vec![vec![C0, I], vec![I, C0]]);
        let v = values(&m);
        assert!((v[0] + I).norm() < 1e-12 && (v[1] - I).norm() < 1e-12);

        let m = adjacency_from_pi(&Graph::complete(3), &WeightAssignment::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { C0 } else { -C1 };
                assert_eq!(m[(i, j)], want);
            }
        }
    }

    #[test]
    fn eta_examples() {
        let k3 = Graph::complete(3);
        let v = values(&adjacency_from_eta(&k3, &EtaAssignment::new(2, vec![0, 0, 0]).unwrap()).unwrap());
        for (got, want) in v.iter().zip([-1.0, -1.0, 2.0]) {
            assert!((got - want).norm() < 1e-12);
        }
        let v = values(&adjacency_from_eta(&k3, &EtaAssignment::new(2, vec![1, 1, 1]).unwrap()).unwrap());
        for (got, want) in v.iter().zip([-2.0, 1.0, 1.0]) {
            assert!((got - want).norm() < 1e-12);
        }

        let omega = root_of_unity(1, 3);
        let m = adjacency_from_eta(&Graph::complete(2), &EtaAssignment::new(3, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(m.rows(), vec![vec![C0, omega], vec![C1, C0]]);
        let root = omega.sqrt();
        let v = values(&m);
        assert!(v.iter().all(|z| (z - root).norm() < 1e-12 || (z + root).norm() < 1e-12));
        assert!((v[0] + v[1]).norm() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(WeightAssignment::new(2, vec![4]).is_err());
        assert!(WeightAssignment::new(1, vec![0]).is_err());
        assert!(EtaAssignment::new(3, vec![3]).is_err());
        let k3 = Graph::complete(3);
        assert!(adjacency_from_pi(&k3, &WeightAssignment::new(2, vec![0, 0]).unwrap()).is_err());
        assert!(adjacency_from_eta(&k3, &EtaAssignment::new(2, vec![0]).unwrap()).is_err());
    }

    #[test]
    fn squares_and_square_roots() {
        let w = WeightAssignment::new(3, vec![0, 1, 4, 5]).unwrap();
        let h = w.squares();
        for i in 0..4 {
            assert!((w.value(i) * w.value(i) - h.value(i)).norm() < 1e-15);
            let r = h.square_root();
            assert!((r.value(i) * r.value(i) - h.value(i)).norm() < 1e-15);
        }
    }
}
