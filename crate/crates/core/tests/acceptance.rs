//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use blowup_spectra::classify::{
    classify_real_eigenvalue, k3_minus_two_certificate, numeric_real_eigvec_search, Verdict,
};
use blowup_spectra::cli;
use blowup_spectra::engine::{blowup_spectrum, cross_validate_reductions, EngineOptions};
use blowup_spectra::graph::{spectral_radius, Graph};
use blowup_spectra::hypergraph::build_blowup;
use blowup_spectra::numeric::char_poly;
use blowup_spectra::weights::{adjacency_from_eta, root_of_unity, EtaAssignment};
use blowup_spectra::CERTIFY_TOL;
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn k3_expected() -> Vec<Complex64> {
    let r7 = 7f64.sqrt() / 2.0;
    vec![
        c(0.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(2.0, 0.0),
        c(-2.0, 0.0),
        c(0.5, r7),
        c(0.5, -r7),
        c(-0.5, r7),
        c(-0.5, -r7),
    ]
}

fn max_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .map(|z| b.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// `spectrum --s 2` on K3 through the command-line entry point.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = cli::run(["blowup-spectra", "spectrum", "--s", "2", "--graph6", "Bw", "--json"].map(String::from));
    let elapsed = start.elapsed();
    if out.code != 0 {
        return Err(format!("exit code {}: {}", out.code, out.stderr));
    }
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let values: Vec<Complex64> = doc["result"]["eigenvalues"]
        .as_array()
        .ok_or("missing eigenvalues")?
        .iter()
        .map(|e| c(e["value"]["re"].as_f64().unwrap(), e["value"]["im"].as_f64().unwrap()))
        .collect();
    same_set(&values, &k3_expected(), 1e-9)?;
    let dist = max_match_distance(&values, &k3_expected());
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} values, max distance {dist:.1e}, {elapsed:.2?}",
        values.len()
    ))
}

fn criterion_2() -> Outcome {
    let k3 = Graph::complete(3);
    // eta exponents for s = 2: 1 means eta_i = -1
    let cases: [([u32; 3], [f64; 4]); 4] = [
        ([0, 0, 0], [-2.0, -3.0, 0.0, 1.0]),
        ([1, 1, 1], [2.0, -3.0, 0.0, 1.0]),
        ([0, 0, 1], [2.0, 1.0, 0.0, 1.0]),
        ([0, 1, 1], [-2.0, 1.0, 0.0, 1.0]),
    ];
    let mut worst = 0.0f64;
    for (eta, want) in cases {
        let m = adjacency_from_eta(&k3, &EtaAssignment::new(2, eta.to_vec()).unwrap()).map_err(|e| e.to_string())?;
        let poly = char_poly(&m);
        for (got, w) in poly.coefficients().iter().zip(want) {
            worst = worst.max((got - c(w, 0.0)).norm());
        }
    }
    if worst > 1e-10 {
        return Err(format!("coefficient error {worst:.1e}"));
    }
    Ok(format!("4 polynomials, max coefficient error {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    for s in 2..=4u32 {
        let got = blowup_spectrum(&Graph::complete(2), s, &EngineOptions::default()).map_err(|e| e.to_string())?;
        let mut want = vec![c(0.0, 0.0)];
        want.extend((0..2 * s).map(|k| root_of_unity(k, 2 * s)));
        same_set(got.spectrum.values(), &want, 1e-9).map_err(|e| format!("s={s}: {e}"))?;
    }
    Ok("s = 2, 3, 4 match {0} and the 2s-th roots of unity".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (mut graphs, mut values) = (0, 0);
    for n in 1..=5 {
        for g in labeled_graphs(n).into_iter().filter(|g| g.is_connected()) {
            graphs += 1;
            for s in 2..=3 {
                let report =
                    blowup_spectrum(&g, s, &EngineOptions::default()).map_err(|e| format!("{:?}: {e}", g.edges()))?;
                for (z, r) in report.spectrum.values().iter().zip(&report.certified) {
                    match r {
                        Some(r) if *r <= CERTIFY_TOL => values += 1,
                        _ => return Err(format!("{z} uncertified ({r:?}) for {:?}, s={s}", g.edges())),
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{graphs} labeled connected graphs, {values} values certified, {elapsed:.1?}"
    ))
}

fn criterion_5() -> Outcome {
    let mut graphs = 0;
    for n in 1..=5 {
        for g in labeled_graphs(n) {
            graphs += 1;
            for s in 2..=3 {
                let report = cross_validate_reductions(&g, s).map_err(|e| e.to_string())?;
                report
                    .ensure_equal()
                    .map_err(|e| format!("{:?}, s={s}: {e}", g.edges()))?;
            }
        }
    }
    Ok(format!(
        "{graphs} labeled graphs x 2 values of s, all four pipelines agree"
    ))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    let graphs = all_graphs(6, true);
    for g in &graphs {
        for s in 2..=3 {
            let sp = blowup_spectrum(
                g,
                s,
                &EngineOptions {
                    certify: false,
                    ..Default::default()
                },
            )
            .map_err(|e| e.to_string())?;
            let diff = (sp.spectrum.max_modulus() - spectral_radius(g)).abs();
            worst = worst.max(diff);
            if diff > 1e-7 {
                return Err(format!("{:?}, s={s}: |max|λ| - ρ| = {diff:.1e}", g.edges()));
            }
        }
    }
    Ok(format!(
        "{} connected graphs up to isomorphism, max deviation {worst:.1e}",
        graphs.len()
    ))
}

fn criterion_7() -> Outcome {
    let graphs = all_graphs(6, true);
    for g in &graphs {
        for s in 2..=3 {
            let sp = blowup_spectrum(
                g,
                s,
                &EngineOptions {
                    certify: false,
                    ..Default::default()
                },
            )
            .map_err(|e| e.to_string())?
            .spectrum;
            for r in 1..s {
                let turned = sp.scaled(root_of_unity(r, s));
                same_set(sp.values(), turned.values(), 1e-7)
                    .map_err(|e| format!("{:?}, s={s}, r={r}: {e}", g.edges()))?;
            }
        }
    }
    Ok(format!(
        "{} connected graphs up to isomorphism, invariant under every s-th root of unity",
        graphs.len()
    ))
}

fn criterion_8() -> Outcome {
    let k3 = Graph::complete(3);
    let v = classify_real_eigenvalue(&k3, 2, -2.0).map_err(|e| e.to_string())?;
    if v.verdict != Verdict::N {
        return Err(format!("classify(-2) = {:?}", v.verdict));
    }
    let cert = k3_minus_two_certificate();
    if cert.determinant != 4 || cert.verdict != Verdict::N {
        return Err(format!("certificate determinant {}", cert.determinant));
    }
    let (h, _) = build_blowup(&k3, 2).unwrap();
    let search = numeric_real_eigvec_search(&h, -2.0, 500).map_err(|e| e.to_string())?;
    if search.residual <= 1e-6 {
        return Err(format!(
            "oracle found a real vector with residual {:.1e}",
            search.residual
        ));
    }
    let h2 = classify_real_eigenvalue(&k3, 2, 2.0).map_err(|e| e.to_string())?;
    let witness = h2
        .real_witness
        .as_ref()
        .filter(|w| h2.verdict == Verdict::H && w.residual <= CERTIFY_TOL);
    if witness.is_none() {
        return Err(format!("classify(2) = {:?}", h2.verdict));
    }
    Ok(format!(
        "-2 is N (determinant {}, best oracle residual {:.2e}); 2 is H (residual {:.1e})",
        cert.determinant,
        search.residual,
        witness.unwrap().residual
    ))
}

fn criterion_9() -> Outcome {
    let (mut h_count, mut n_count) = (0, 0);
    let mut min_n_residual = f64::INFINITY;
    for g in all_graphs(4, false) {
        let sp = blowup_spectrum(
            &g,
            2,
            &EngineOptions {
                certify: false,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?
        .spectrum;
        let (h, _) = build_blowup(&g, 2).unwrap();
        for z in sp.values().iter().filter(|z| z.im.abs() <= 1e-9 && z.re.abs() > 1e-8) {
            let v = classify_real_eigenvalue(&g, 2, z.re).map_err(|e| format!("{:?} at {}: {e}", g.edges(), z.re))?;
            match v.verdict {
                Verdict::H => {
                    let w = v.real_witness.ok_or("H without witness")?;
                    if w.residual > CERTIFY_TOL {
                        return Err(format!(
                            "{:?} at {}: H witness residual {:.1e}",
                            g.edges(),
                            z.re,
                            w.residual
                        ));
                    }
                    h_count += 1;
                }
                Verdict::N => {
                    let search = numeric_real_eigvec_search(&h, z.re, 500).map_err(|e| e.to_string())?;
                    if search.residual <= 1e-6 {
                        return Err(format!(
                            "{:?} at {}: classified N but the oracle found residual {:.1e}",
                            g.edges(),
                            z.re,
                            search.residual
                        ));
                    }
                    min_n_residual = min_n_residual.min(search.residual);
                    n_count += 1;
                }
                Verdict::Zero => return Err(format!("ZERO verdict for {}", z.re)),
            }
        }
    }
    Ok(format!(
        "{h_count} H and {n_count} N verdicts agree with the oracle (smallest N residual {min_n_residual:.2e})"
    ))
}

fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn criterion_10() -> Outcome {
    let g = random_connected_graph(10, 0.35, 2024);
    let start = Instant::now();
    let four = blowup_spectrum(
        &g,
        2,
        &EngineOptions {
            worker_count: 4,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    let one = blowup_spectrum(
        &g,
        2,
        &EngineOptions {
            worker_count: 1,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    if one.spectrum != four.spectrum || one.certified != four.certified {
        return Err("1-worker and 4-worker outputs differ".into());
    }
    Ok(format!(
        "{} edges, {} values, {elapsed:.2?} with 4 workers, identical with 1 worker",
        g.edge_count(),
        four.spectrum.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("K3 blowup golden spectrum", criterion_1),
        ("K3 characteristic polynomials", criterion_2),
        ("single-edge blowups", criterion_3),
        ("converse soundness, connected n <= 5", criterion_4),
        ("reduction cross-validation, n <= 5", criterion_5),
        ("spectral radius identity, connected n <= 6", criterion_6),
        ("rotation symmetry, connected n <= 6", criterion_7),
        ("K3 N-eigenvalue -2", criterion_8),
        ("classifier/oracle agreement, n <= 4", criterion_9),
        ("performance and determinism, n = 10", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
