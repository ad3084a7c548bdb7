//! The limit model (`m = 2`, `epsilon = 0`, indicator attachment) reduced to
//! four integer counters — the fast path for million-step trajectories.
//!
//! Under the limit rule the sampled pair is uniform on the set of all
//! unordered pairs of active nodes. Treat each such pair as a ball in an
//! urn: *white* when the pair is an edge of the graph, *black* otherwise.
//! One evolution step draws a ball uniformly; a white draw means the new
//! node closes a triangle, which activates it and turns both of its new
//! edges into white balls (the remaining pairs involving the newcomer enter
//! as black). A black draw changes nothing that the urn can see. The whole
//! process is therefore determined by:
//!
//! * `v` — number of active nodes,
//! * `e_conn` — number of connected active pairs (white balls),
//! * `delta1`, `v1` — triangle count and active-node count of the start.
//!
//! The urn size is `v(v-1)/2` and the total triangle count stays the linear
//! function `delta1 + (v - v1)` of the active-node count, so trajectories
//! need O(1) state however long they run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::ModelError;
use crate::graph::Graph;
use crate::montecarlo::{Recorder, Sample, Trajectory};

/// Counter state of the limit process. Copyable; 32 bytes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterState {
    v: u64,
    e_conn: u64,
    delta1: u64,
    v1: u64,
}

impl CounterState {
    /// Builds a state from explicit counters, validating the reachability
    /// invariants: at least three active nodes, at least one connected
    /// pair, no more connected pairs than pairs, and strictly more
    /// connected pairs than `v - 1`.
    pub fn new(active_nodes: u64, connected_pairs: u64, triangles: u64) -> Result<Self, ModelError> {
        let s = Self {
            v: active_nodes,
            e_conn: connected_pairs,
            delta1: triangles,
            v1: active_nodes,
        };
        if active_nodes < 3 {
            return Err(ModelError::BadCounterState(format!(
                "need at least 3 active nodes, got {active_nodes}"
            )));
        }
        if connected_pairs == 0 || connected_pairs > s.pair_count() {
            return Err(ModelError::BadCounterState(format!(
                "connected pairs {connected_pairs} outside 1..={}",
                s.pair_count()
            )));
        }
        if connected_pairs < active_nodes {
            return Err(ModelError::BadCounterState(format!(
                "connected pairs {connected_pairs} not above active nodes - 1 = {}",
                active_nodes - 1
            )));
        }
        Ok(s)
    }

    /// Reads the counters off an initial graph. The graph must contain at
    /// least two active nodes (which for a simple graph means a whole
    /// triangle, so at least three).
    pub fn from_graph(g: &Graph) -> Result<Self, ModelError> {
        let active = g.active_node_count();
        if active < 2 {
            return Err(ModelError::TooFewActiveNodes {
                required: 2,
                found: active as usize,
            });
        }
        Self::new(active, g.active_edge_count(), g.total_triangles())
    }

    /// Number of active nodes.
    pub fn active_nodes(&self) -> u64 {
        self.v
    }

    /// Connected active pairs — the white balls.
    pub fn connected_pairs(&self) -> u64 {
        self.e_conn
    }

    /// All active pairs — the urn size `v(v-1)/2`.
    pub fn pair_count(&self) -> u64 {
        debug_assert!(self.v < 1 << 32);
        self.v * (self.v - 1) / 2
    }

    /// Disconnected active pairs — the black balls.
    pub fn disconnected_pairs(&self) -> u64 {
        self.pair_count() - self.e_conn
    }

    pub fn initial_triangles(&self) -> u64 {
        self.delta1
    }

    pub fn initial_active_nodes(&self) -> u64 {
        self.v1
    }

    /// Current total triangle count: the active-node count plus the fixed
    /// offset `delta1 - v1`.
    pub fn delta(&self) -> u64 {
        self.v - self.v1 + self.delta1
    }

    /// Probability that the next draw is white, `e_conn / pair_count`.
    pub fn white_probability(&self) -> f64 {
        self.e_conn as f64 / self.pair_count() as f64
    }

    /// Probability that the draw `gap` steps ahead is white, conditional on
    /// every draw in between being white.
    pub fn p_after_whites(&self, gap: u64) -> f64 {
        let (num, den) = self.p_after_whites_parts(gap);
        num as f64 / den as f64
    }

    /// Exact numerator/denominator of [`p_after_whites`], for integer
    /// comparisons.
    pub fn p_after_whites_parts(&self, gap: u64) -> (u64, u64) {
        let num = self.e_conn + 2 * gap;
        let den = self.pair_count() + gap * self.v + gap * gap.saturating_sub(1) / 2;
        (num, den)
    }

    /// The state after `whites` white draws: each one adds an active node
    /// and two connected pairs.
    pub fn after_whites(&self, whites: u64) -> Self {
        Self {
            v: self.v + whites,
            e_conn: self.e_conn + 2 * whites,
            delta1: self.delta1,
            v1: self.v1,
        }
    }

    /// One urn step. Draws a ball index uniformly from `1..=pair_count`
    /// (exact integer sampling, no floating-point scaling); returns whether
    /// the draw was white, i.e. whether a triangle was added.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        let ball = rng.gen_range(1..=self.pair_count());
        let white = ball <= self.e_conn;
        if white {
            self.v += 1;
            self.e_conn += 2;
        }
        white
    }
}

/// Runs `steps` urn steps, recording the triangle count every `thinning`
/// steps (plus the first and last indices). State memory is O(1); the
/// trajectory holds O(steps / thinning) samples.
pub fn run_fast_with<R: Rng + ?Sized>(
    mut state: CounterState,
    steps: u64,
    thinning: u64,
    rng: &mut R,
) -> Vec<Sample> {
    let mut recorder = Recorder::new(thinning, steps + 1);
    recorder.record(1, state.delta());
    for s in 1..=steps {
        state.step(rng);
        recorder.record(s + 1, state.delta());
    }
    recorder.into_samples()
}

/// Seed-stable wrapper over [`run_fast_with`] (ChaCha8 seeded from `seed`,
/// stream 0 — the same scheme the replication harness derives sub-streams
/// from).
pub fn run_fast(
    state: CounterState,
    label: &str,
    seed: u64,
    steps: u64,
    thinning: u64,
) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = run_fast_with(state, steps, thinning, &mut rng);
    Trajectory {
        initial_label: label.to_string(),
        seed,
        thinning,
        samples,
    }
}
