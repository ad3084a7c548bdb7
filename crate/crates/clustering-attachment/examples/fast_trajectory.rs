//! Million-step trajectory through the counter/urn fast path, with
//! throughput measurement. Four integers of state, however long the run.
//!
//! Run with: cargo run --release --example fast_trajectory

use std::time::Instant;

use clustering_attachment::graph::Graph;
use clustering_attachment::limit::{self, CounterState};

fn main() {
    let s0 = CounterState::from_graph(&Graph::complete(3)).unwrap();
    println!(
        "start: {} active nodes, {} connected pairs, {} triangles",
        s0.active_nodes(),
        s0.connected_pairs(),
        s0.delta()
    );

    let steps = 1_000_000u64;
    let start = Instant::now();
    let trajectory = limit::run_fast(s0, "triangle", 2024, steps, 100_000);
    let elapsed = start.elapsed();

    for sample in &trajectory.samples {
        println!("n = {:>8}: delta = {}", sample.n, sample.delta);
    }
    println!(
        "\n{steps} steps in {elapsed:.3?} ({:.2e} steps/s), {} samples kept",
        steps as f64 / elapsed.as_secs_f64(),
        trajectory.samples.len()
    );
}
