//! Full-scale growth experiment: 100 replications of length 10^6 from each
//! reference start, fitted by c1 + c2 * n^c3 over two windows and in both
//! c1 modes. Takes a few seconds in release mode.
//!
//! Run with: cargo run --release --example growth_table

use std::time::Instant;

use clustering_attachment::engine::CaParams;
use clustering_attachment::fit::{fit_power, C1Mode, FitResult};
use clustering_attachment::graph::Graph;
use clustering_attachment::montecarlo::{self, EngineKind, ReplicationPlan};

fn row(label: &str, fit: &FitResult) {
    let mode = match fit.c1_mode {
        C1Mode::Free => "free",
        C1Mode::Fixed(_) => "fixed",
    };
    println!(
        "{label:>12}  {mode:>5}  {:>10.3}  {:>7.3}  {:>6.3}",
        fit.c1, fit.c2, fit.c3
    );
}

fn main() {
    let starts = [
        ("triangle", Graph::complete(3)),
        ("complete:17", Graph::complete(17)),
        ("complete:51", Graph::complete(51)),
    ];
    let windows = [(200_000.0, 1_000_000.0), (500_000.0, 1_000_000.0)];

    for window in windows {
        println!(
            "\nwindow [{:.0e}, {:.0e}]:\n{:>12}  {:>5}  {:>10}  {:>7}  {:>6}",
            window.0, window.1, "start", "c1", "c1-hat", "c2-hat", "c3-hat"
        );
        for (label, g) in &starts {
            let start = Instant::now();
            let plan = ReplicationPlan {
                replications: 100,
                length: 1_000_000,
                thinning: 1_000,
                master_seed: 97,
            };
            let outcome =
                montecarlo::run_replications(g, &CaParams::limit(), EngineKind::Fast, &plan)
                    .unwrap();
            let samples: Vec<(f64, f64)> = outcome
                .curve
                .points
                .iter()
                .map(|p| (p.n as f64, p.mean))
                .collect();
            let delta1 = samples[0].1;
            row(label, &fit_power(&samples, window, C1Mode::Free).unwrap());
            row(label, &fit_power(&samples, window, C1Mode::Fixed(delta1)).unwrap());
            eprintln!("  [{label}: simulated + fitted in {:.2?}]", start.elapsed());
        }
    }
}
