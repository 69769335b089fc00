//! Which real eigenvalues of K3^[2] have real eigenvectors?
//!
//! The classifier's verdicts are compared with a numerical search for real
//! eigenvectors, and -2 is additionally settled by an exact determinant.

use blowup_spectra::classify::{
    classify_real_eigenvalue, k3_minus_two_certificate, numeric_real_eigvec_search, Verdict,
};
use blowup_spectra::engine::{blowup_spectrum, EngineOptions};
use blowup_spectra::graph::Graph;
use blowup_spectra::hypergraph::build_blowup;

fn main() -> blowup_spectra::Result<()> {
    let k3 = Graph::complete(3);
    let (h, _) = build_blowup(&k3, 2)?;
    let spectrum = blowup_spectrum(&k3, 2, &EngineOptions::default())?.spectrum;

    for z in spectrum.values().iter().filter(|z| z.im == 0.0) {
        let verdict = classify_real_eigenvalue(&k3, 2, z.re)?;
        let search = numeric_real_eigvec_search(&h, z.re, 200)?;
        print!("lambda = {:>5.2}: {:?}", z.re, verdict.verdict);
        if let Some(w) = &verdict.real_witness {
            print!("  via subset {:?}", w.subset);
        }
        if verdict.verdict == Verdict::N {
            print!("  ({} subsets ruled out)", verdict.examined.len());
        }
        println!("  oracle residual {:.1e}", search.residual);
    }

    let cert = k3_minus_two_certificate();
    println!();
    for line in &cert.trace {
        println!("  {line}");
    }
    Ok(())
}
