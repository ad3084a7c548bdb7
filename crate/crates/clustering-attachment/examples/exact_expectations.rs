//! Exact white-draw probabilities and expected triangle counts from the
//! dynamic program, next to a Monte-Carlo estimate of the same quantity.
//!
//! Run with: cargo run --example exact_expectations

use clustering_attachment::engine::CaParams;
use clustering_attachment::graph::Graph;
use clustering_attachment::limit::CounterState;
use clustering_attachment::montecarlo::{self, EngineKind, ReplicationPlan};
use clustering_attachment::oracle;

fn main() {
    for (label, g) in [("triangle", Graph::complete(3)), ("diamond", Graph::diamond())] {
        let s0 = CounterState::from_graph(&g).unwrap();
        println!("from {label}:");
        println!("   n   P(triangle at n)   E[delta at n]");
        let pb = oracle::marginal_pb_sweep(s0, 20);
        let ed = oracle::expected_delta_sweep(s0, 20);
        for n in 1..=20u64 {
            println!(
                "{n:>4}   {:>16.12}   {:>13.9}",
                pb[(n - 1) as usize],
                ed[(n - 1) as usize]
            );
        }
        println!();
    }

    // The sample mean over replications hugs the exact expectation.
    let g = Graph::complete(3);
    let s0 = CounterState::from_graph(&g).unwrap();
    let n = 10_000u64;
    let plan = ReplicationPlan {
        replications: 200,
        length: n,
        thinning: n - 1,
        master_seed: 11,
    };
    let outcome =
        montecarlo::run_replications(&g, &CaParams::limit(), EngineKind::Fast, &plan).unwrap();
    let last = outcome.curve.points.last().unwrap();
    let exact = oracle::expected_delta(s0, n);
    println!(
        "at n = {n}: exact E[delta] = {exact:.4}, sample mean over {} runs = {:.4} (se {:.4})",
        plan.replications,
        last.mean,
        last.std_err(plan.replications)
    );
}
