//! Characteristic polynomials of the triangle with vertex weights ±1, and a
//! cross-check of their roots against the eigensolver.

use blowup_spectra::graph::Graph;
use blowup_spectra::numeric::{char_poly, complex_eigenpairs};
use blowup_spectra::weights::{adjacency_from_eta, EtaAssignment};

fn main() -> blowup_spectra::Result<()> {
    let k3 = Graph::complete(3);
    for eta in [[0, 0, 0], [1, 1, 1], [0, 0, 1], [0, 1, 1]] {
        let m = adjacency_from_eta(&k3, &EtaAssignment::new(2, eta.to_vec())?)?;
        let poly = char_poly(&m);
        let c = poly.coefficients();
        let signs: Vec<&str> = eta.iter().map(|&f| if f == 0 { "+1" } else { "-1" }).collect();
        println!(
            "eta = ({}): lambda^3 {:+} lambda^2 {:+} lambda {:+}",
            signs.join(", "),
            c[2].re + 0.0,
            c[1].re + 0.0,
            c[0].re + 0.0
        );
        let mut roots: Vec<String> = complex_eigenpairs(&poly.companion())?
            .iter()
            .map(|p| format!("{:.4}{:+.4}i", p.value.re, p.value.im))
            .collect();
        roots.sort();
        println!("    roots {}", roots.join(", "));
    }
    Ok(())
}
