//! Random-graph evolution by clustering attachment.
//!
//! Each evolution step appends one node and connects it to `m` existing
//! nodes drawn by successive sampling, with weights driven by clustering
//! coefficients through an attachment function. The crate centers on the
//! *limit model* (`m = 2`, zero weight floor, indicator attachment), where
//! a newcomer picks a uniform pair of *active* nodes — nodes already lying
//! in a triangle — and the total triangle count admits an exact reduction
//! to four integer counters.
//!
//! What is here:
//!
//! * [`graph`] — simple graphs with incremental triangle bookkeeping,
//!   edge-list and DOT formats in [`io`];
//! * [`engine`] — the full evolution for arbitrary parameters;
//! * [`limit`] — the counter/urn fast path (tens of millions of steps per
//!   second single-threaded);
//! * [`oracle`] — exact white-draw probabilities, expected triangle counts,
//!   pairwise joints, and the numeric inequality checks;
//! * [`montecarlo`] — reproducible parallel replications and CSV export;
//! * [`fit`] — least-squares fitting of `c1 + c2 * n^c3` growth curves;
//! * [`cli`] — the `casim` binary (evolve, mc, oracle, verify, fit,
//!   convert).
//!
//! The `examples/` directory holds one runnable program per capability;
//! start with `cargo run --example fast_trajectory`.
//!
//! ```
//! use clustering_attachment::{graph::Graph, limit::{self, CounterState}, oracle};
//!
//! let s0 = CounterState::from_graph(&Graph::complete(3)).unwrap();
//! let trajectory = limit::run_fast(s0, "triangle", 7, 1_000, 100);
//! assert!(trajectory.samples.last().unwrap().delta > 1);
//!
//! // the exact expectation the simulation fluctuates around
//! let expected = oracle::expected_delta(s0, 1_001);
//! assert!(expected > 2.0);
//! ```

pub mod cli;
pub mod engine;
pub mod fit;
pub mod graph;
pub mod io;
pub mod limit;
pub mod montecarlo;
pub mod oracle;

pub use engine::{AttachmentFunction, CaParams, ModelError};
pub use graph::{Graph, GraphError, NodeId};
pub use limit::CounterState;
