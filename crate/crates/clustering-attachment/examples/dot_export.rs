//! Evolve a small graph and print it as DOT, with the active subgraph
//! (nodes in triangles, edges between them) marked for rendering.
//!
//! Run with: cargo run --example dot_export > evolved.dot

use clustering_attachment::engine::{self, CaParams};
use clustering_attachment::graph::Graph;
use clustering_attachment::io;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut g = Graph::diamond();
    let params = CaParams::limit();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        engine::evolve_step(&mut g, &params, &mut rng).unwrap();
    }
    eprintln!(
        "{} nodes, {} edges; {} active nodes, {} active edges",
        g.node_count(),
        g.edge_count(),
        g.active_node_count(),
        g.active_edge_count()
    );
    print!("{}", io::export_dot(&g));
}
