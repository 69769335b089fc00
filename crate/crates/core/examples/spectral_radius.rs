//! The largest eigenvalue modulus of a blowup equals the spectral radius of
//! the base graph, and the spectrum is symmetric under s-th roots of unity.

use blowup_spectra::engine::{blowup_spectrum, EngineOptions};
use blowup_spectra::graph::{spectral_radius, Graph};
use blowup_spectra::weights::root_of_unity;

fn main() -> blowup_spectra::Result<()> {
    let graphs = [
        ("K4", Graph::complete(4)),
        ("P5", Graph::path(5)),
        ("C6", Graph::cycle(6)),
        ("Petersen", Graph::petersen()),
    ];
    for (name, g) in graphs {
        for s in [2, 3] {
            let spectrum = blowup_spectrum(
                &g,
                s,
                &EngineOptions {
                    certify: false,
                    ..Default::default()
                },
            )?
            .spectrum;
            let rotated = spectrum.scaled(root_of_unity(1, s));
            let symmetric = rotated.values().iter().all(|&z| spectrum.contains(z, 1e-7));
            println!(
                "{name:<9} s={s}: rho(G) = {:.6}, max |lambda| = {:.6}, {} values, rotation-symmetric: {symmetric}",
                spectral_radius(&g),
                spectrum.max_modulus(),
                spectrum.len()
            );
        }
    }
    Ok(())
}
