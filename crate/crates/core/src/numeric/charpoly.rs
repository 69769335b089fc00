use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexMatrix, C1};

/// Monic polynomial, coefficients in ascending degree (`c_0, …, c_k = 1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyCoeffs {
    coefficients: Vec<Complex64>,
}

impl PolyCoeffs {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Companion matrix whose characteristic polynomial is `self`.
    pub fn companion(&self) -> ComplexMatrix {
        let k = self.degree();
        let mut m = ComplexMatrix::zeros(k);
        for i in 1..k {
            m[(i, i - 1)] = C1;
        }
        for i in 0..k {
            m[(i, k - 1)] = -self.coefficients[i];
        }
        m
    }
}

/// `det(λI − M)` via the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &ComplexMatrix) -> PolyCoeffs {
    let n = m.dim();
    let mut coefficients = vec![Complex64::new(0.0, 0.0); n + 1];
    coefficients[n] = C1;
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    let mut mk = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let mut next = m.matmul(&mk);
        for i in 0..n {
            next[(i, i)] += coefficients[n - k + 1];
        }
        mk = next;
        coefficients[n - k] = -m.matmul(&mk).trace() / k as f64;
    }
    PolyCoeffs { coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let p = char_poly(&ComplexMatrix::zeros(2));
        assert_eq!(
            p.coefficients(),
            &[Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), C1]
        );
    }

    #[test]
    fn two_by_two() {
        // [[1,2],[3,4]]: λ² − 5λ − 2
        let m = ComplexMatrix::from_real(&[vec![1., 2.], vec![3., 4.]]).unwrap();
        let p = char_poly(&m);
        let want = [-2.0, -5.0, 1.0];
        for (c, w) in p.coefficients().iter().zip(want) {
            assert!((c - Complex64::new(w, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn companion_round_trip() {
        let m = ComplexMatrix::from_rows(&[
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(-1.0, 0.0),
            ],
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(3.0, -1.0),
            ],
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.5),
            ],
        ])
        .unwrap();
        let p = char_poly(&m);
        let q = char_poly(&p.companion());
        for (a, b) in p.coefficients().iter().zip(q.coefficients()) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
