//! Numeric check of the inequality families behind the divergence result,
//! from the three reference complete-graph starts and the diamond.
//!
//! Run with: cargo run --example lemma_margins

use clustering_attachment::graph::Graph;
use clustering_attachment::limit::CounterState;
use clustering_attachment::oracle::{verify_lemmas, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        state_range: 500,
        horizon: 5_000,
        conditional_max: 500,
        joint_max: 200,
        expectation_max: 500,
    };
    for (label, g) in [
        ("triangle", Graph::complete(3)),
        ("diamond", Graph::diamond()),
        ("complete:17", Graph::complete(17)),
        ("complete:51", Graph::complete(51)),
    ] {
        let s0 = CounterState::from_graph(&g).unwrap();
        println!("from {label}:");
        print!("{}", verify_lemmas(s0, &opts));
        println!();
    }
}
