//! Distributional agreement between the two simulators and the exact
//! chain: the number of triangles gained over the first four steps from
//! the diamond follows the same law under the full graph engine, the
//! counter/urn fast path, and the dynamic program.

use clustering_attachment::engine::{self, CaParams};
use clustering_attachment::graph::Graph;
use clustering_attachment::limit::CounterState;
use clustering_attachment::oracle::WhiteCountDistribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Critical value of the chi-square distribution, df = 4, upper tail 0.001.
const CHI2_CRIT_P999_DF4: f64 = 18.467;

const STEPS: u64 = 4;
const RUNS: u64 = 10_000;

fn exact_white_counts() -> Vec<f64> {
    let s0 = CounterState::from_graph(&Graph::diamond()).unwrap();
    let mut dist = WhiteCountDistribution::new(s0);
    dist.advance_to(STEPS);
    (0..=STEPS).map(|j| dist.probability(j)).collect()
}

fn chi_square(observed: &[u64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}

#[test]
fn fast_engine_matches_the_exact_distribution() {
    let s0 = CounterState::from_graph(&Graph::diamond()).unwrap();
    let mut observed = vec![0u64; STEPS as usize + 1];
    for run in 0..RUNS {
        let mut rng = ChaCha8Rng::seed_from_u64(501);
        rng.set_stream(run);
        let mut s = s0;
        for _ in 0..STEPS {
            s.step(&mut rng);
        }
        observed[(s.delta() - s.initial_triangles()) as usize] += 1;
    }
    let expected: Vec<f64> = exact_white_counts()
        .iter()
        .map(|p| p * RUNS as f64)
        .collect();
    let stat = chi_square(&observed, &expected);
    assert!(
        stat < CHI2_CRIT_P999_DF4,
        "chi-square {stat} over {CHI2_CRIT_P999_DF4}; observed {observed:?}, expected {expected:?}"
    );
}

#[test]
fn full_engine_matches_the_exact_distribution() {
    let params = CaParams::limit();
    let mut observed = vec![0u64; STEPS as usize + 1];
    for run in 0..RUNS {
        let mut rng = ChaCha8Rng::seed_from_u64(502);
        rng.set_stream(run);
        let mut g = Graph::diamond();
        for _ in 0..STEPS {
            engine::evolve_step(&mut g, &params, &mut rng).unwrap();
        }
        observed[(g.total_triangles() - 2) as usize] += 1;
    }
    let expected: Vec<f64> = exact_white_counts()
        .iter()
        .map(|p| p * RUNS as f64)
        .collect();
    let stat = chi_square(&observed, &expected);
    assert!(
        stat < CHI2_CRIT_P999_DF4,
        "chi-square {stat} over {CHI2_CRIT_P999_DF4}; observed {observed:?}, expected {expected:?}"
    );
}
