//! The spectrum pipeline with each symmetry reduction switched off must give
//! the same set of eigenvalues; this also shows how much work each one saves.

use blowup_spectra::engine::{blowup_spectrum, cross_validate_reductions, EngineOptions};
use blowup_spectra::graph::Graph;

fn main() -> blowup_spectra::Result<()> {
    let g = Graph::cycle(5);
    let s = 3;
    let report = cross_validate_reductions(&g, s)?;
    for run in &report.runs {
        let work = blowup_spectrum(
            &g,
            s,
            &EngineOptions {
                certify: false,
                ..run.options.clone()
            },
        )?
        .counts;
        println!(
            "{:<24} {:>3} values  {:>5} matrices  agrees: {}",
            run.name,
            run.spectrum.len(),
            work.matrices,
            run.diff.is_equal()
        );
    }
    report.ensure_equal()?;
    println!("all pipelines agree on C5^[{s}]");
    Ok(())
}
