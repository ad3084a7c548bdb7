//! Replication harness: independent trajectories with deterministic
//! per-replication random streams, exact sample-mean aggregation, and the
//! two-column CSV format consumed by the fitter.
//!
//! Sub-streams come from a counter-based split of the master seed: every
//! replication `j` runs on `ChaCha8Rng::seed_from_u64(master).set_stream(j)`.
//! The scheme is independent of scheduling, so parallel runs reproduce
//! bit-for-bit. Aggregation sums integer triangle counts in 128-bit
//! arithmetic, which makes the mean curve independent of summation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{self, CaParams, ModelError};
use crate::graph::Graph;
use crate::limit::{self, CounterState};

/// One recorded point of a trajectory: the evolution index `n` (the initial
/// graph sits at `n = 1`) and the total triangle count there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sample {
    pub n: u64,
    pub delta: u64,
}

/// A thinned record of one replication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub initial_label: String,
    pub seed: u64,
    pub thinning: u64,
    pub samples: Vec<Sample>,
}

/// Records `(n, delta)` pairs on the thinning grid: index 1, every multiple
/// of the thinning interval, and the final index.
pub(crate) struct Recorder {
    thinning: u64,
    final_n: u64,
    samples: Vec<Sample>,
}

impl Recorder {
    pub(crate) fn new(thinning: u64, final_n: u64) -> Self {
        assert!(thinning >= 1, "thinning interval must be at least 1");
        Self {
            thinning,
            final_n,
            samples: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn record(&mut self, n: u64, delta: u64) {
        if n == 1 || n == self.final_n || n.is_multiple_of(self.thinning) {
            self.samples.push(Sample { n, delta });
        }
    }

    pub(crate) fn into_samples(self) -> Vec<Sample> {
        self.samples
    }
}

/// A mean-curve point with the across-replication standard deviation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanPoint {
    pub n: u64,
    pub mean: f64,
    pub std_dev: f64,
}

impl MeanPoint {
    /// Standard error of the mean for `replications` samples.
    pub fn std_err(&self, replications: u32) -> f64 {
        self.std_dev / (replications as f64).sqrt()
    }
}

/// Pointwise mean of the replicated trajectories.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanCurve {
    pub replications: u32,
    pub points: Vec<MeanPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineKind {
    /// Full graph evolution; works for any parameters.
    Full,
    /// Counter/urn process; limit-model parameters only.
    Fast,
}

#[derive(Clone, Copy, Debug)]
pub struct ReplicationPlan {
    pub replications: u32,
    /// Trajectory length N: indices run 1..=N, so N - 1 evolution steps.
    pub length: u64,
    pub thinning: u64,
    pub master_seed: u64,
}

#[derive(Clone, Debug)]
pub struct ReplicationSummary {
    pub replication: u32,
    /// Random stream the replication ran on.
    pub stream: u64,
    pub final_delta: u64,
}

#[derive(Clone, Debug)]
pub struct ReplicationOutcome {
    pub curve: MeanCurve,
    pub summaries: Vec<ReplicationSummary>,
}

/// Runs `plan.replications` independent trajectories and aggregates their
/// sample means. Replications execute in parallel; determinism comes from
/// the per-replication streams and the exact integer aggregation.
pub fn run_replications(
    g0: &Graph,
    params: &CaParams,
    engine: EngineKind,
    plan: &ReplicationPlan,
) -> Result<ReplicationOutcome, ModelError> {
    assert!(plan.replications >= 1, "need at least one replication");
    assert!(plan.length >= 1, "trajectory length must be at least 1");
    let steps = plan.length - 1;

    let runs: Vec<Vec<Sample>> = match engine {
        EngineKind::Fast => {
            if !params.is_limit_model() {
                return Err(ModelError::NotLimitModel);
            }
            let s0 = CounterState::from_graph(g0)?;
            (0..plan.replications)
                .into_par_iter()
                .map(|j| {
                    let mut rng = ChaCha8Rng::seed_from_u64(plan.master_seed);
                    rng.set_stream(j as u64);
                    limit::run_fast_with(s0, steps, plan.thinning, &mut rng)
                })
                .collect()
        }
        EngineKind::Full => {
            engine::validate_initial(g0, params)?;
            (0..plan.replications)
                .into_par_iter()
                .map(|j| {
                    let mut rng = ChaCha8Rng::seed_from_u64(plan.master_seed);
                    rng.set_stream(j as u64);
                    let mut g = g0.clone();
                    engine::run_with(&mut g, params, steps, plan.thinning, &mut rng)
                        .expect("initial graph validated above")
                })
                .collect()
        }
    };

    Ok(aggregate(plan, runs))
}

fn aggregate(plan: &ReplicationPlan, runs: Vec<Vec<Sample>>) -> ReplicationOutcome {
    let grid: Vec<u64> = runs[0].iter().map(|s| s.n).collect();
    let r = plan.replications as u64;
    let mut sums = vec![0u128; grid.len()];
    let mut squares = vec![0u128; grid.len()];
    for samples in &runs {
        debug_assert_eq!(samples.len(), grid.len());
        for (i, s) in samples.iter().enumerate() {
            sums[i] += s.delta as u128;
            squares[i] += (s.delta as u128) * (s.delta as u128);
        }
    }
    let points = grid
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let mean = sums[i] as f64 / r as f64;
            let std_dev = if r > 1 {
                let num = r as f64 * squares[i] as f64 - (sums[i] as f64) * (sums[i] as f64);
                (num.max(0.0) / (r as f64 * (r - 1) as f64)).sqrt()
            } else {
                0.0
            };
            MeanPoint { n, mean, std_dev }
        })
        .collect();
    let summaries = runs
        .iter()
        .enumerate()
        .map(|(j, samples)| ReplicationSummary {
            replication: j as u32,
            stream: j as u64,
            final_delta: samples.last().expect("at least one sample").delta,
        })
        .collect();
    ReplicationOutcome {
        curve: MeanCurve {
            replications: plan.replications,
            points,
        },
        summaries,
    }
}

/// One checkpoint of the engine-agreement check: exact expectation next to
/// the two empirical means.
#[derive(Clone, Copy, Debug)]
pub struct AgreementRow {
    pub n: u64,
    pub exact: f64,
    pub full_mean: f64,
    pub full_std_err: f64,
    pub fast_mean: f64,
    pub fast_std_err: f64,
}

impl AgreementRow {
    pub fn full_z(&self) -> f64 {
        (self.full_mean - self.exact) / self.full_std_err
    }

    pub fn fast_z(&self) -> f64 {
        (self.fast_mean - self.exact) / self.fast_std_err
    }

    /// Whether the two engines' `z`-sigma confidence bands overlap.
    pub fn bands_overlap(&self, z: f64) -> bool {
        (self.full_mean - self.fast_mean).abs() <= z * (self.full_std_err + self.fast_std_err)
    }
}

/// Runs both engines on the limit model from the same initial graph and
/// lines their mean triangle counts up against the exact expectation at the
/// given checkpoints. The engines run on unrelated streams (`master_seed`
/// for the full engine, `master_seed + 1` for the fast one); agreement is
/// distributional, not pathwise.
pub fn engine_agreement(
    g0: &Graph,
    checkpoints: &[u64],
    replications: u32,
    master_seed: u64,
) -> Result<Vec<AgreementRow>, ModelError> {
    assert!(!checkpoints.is_empty());
    let mut sorted: Vec<u64> = checkpoints.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    assert!(sorted[0] >= 1);
    let length = *sorted.last().expect("non-empty");
    let thinning = sorted.iter().fold(0u64, |acc, &n| gcd(acc, n));

    let params = CaParams::limit();
    let plan_full = ReplicationPlan {
        replications,
        length,
        thinning,
        master_seed,
    };
    let plan_fast = ReplicationPlan {
        master_seed: master_seed.wrapping_add(1),
        ..plan_full
    };
    let full = run_replications(g0, &params, EngineKind::Full, &plan_full)?.curve;
    let fast = run_replications(g0, &params, EngineKind::Fast, &plan_fast)?.curve;

    let s0 = CounterState::from_graph(g0)?;
    let expectations = crate::oracle::expected_delta_sweep(s0, length);

    let rows = sorted
        .iter()
        .map(|&n| {
            let fu = full
                .points
                .iter()
                .find(|p| p.n == n)
                .expect("checkpoint on the thinning grid");
            let fa = fast
                .points
                .iter()
                .find(|p| p.n == n)
                .expect("checkpoint on the thinning grid");
            AgreementRow {
                n,
                exact: expectations[(n - 1) as usize],
                full_mean: fu.mean,
                full_std_err: fu.std_err(replications),
                fast_mean: fa.mean,
                fast_std_err: fa.std_err(replications),
            }
        })
        .collect();
    Ok(rows)
}

fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

/// CSV for a single trajectory: header `n,delta`, one row per sample. With
/// `offset` the value column is the triangle count minus its initial value.
pub fn trajectory_csv(t: &Trajectory, offset: bool) -> String {
    let base = if offset { t.samples.first().map_or(0, |s| s.delta) } else { 0 };
    let header = if offset { "n,delta_offset" } else { "n,delta" };
    let mut out = String::from(header);
    out.push('\n');
    for s in &t.samples {
        out.push_str(&format!("{},{}\n", s.n, s.delta - base));
    }
    out
}

/// CSV for a mean curve: header `n,delta_mean`. With `offset` the value
/// column is the mean minus the initial triangle count.
pub fn mean_curve_csv(c: &MeanCurve, offset: bool) -> String {
    let base = if offset {
        c.points.first().map_or(0.0, |p| p.mean)
    } else {
        0.0
    };
    let header = if offset { "n,delta_mean_offset" } else { "n,delta_mean" };
    let mut out = String::from(header);
    out.push('\n');
    for p in &c.points {
        out.push_str(&format!("{},{}\n", p.n, p.mean - base));
    }
    out
}

/// Parses a two-column numeric CSV. A single leading non-numeric row is
/// treated as the header; later malformed rows are errors.
pub fn parse_xy_csv(text: &str) -> Result<Vec<(f64, f64)>, CsvError> {
    let mut rows = Vec::new();
    let mut first_data_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let parsed = match (cols.next(), cols.next(), cols.next()) {
            (Some(a), Some(b), None) => a
                .trim()
                .parse::<f64>()
                .and_then(|x| b.trim().parse::<f64>().map(|y| (x, y)))
                .ok(),
            _ => None,
        };
        match parsed {
            Some(pair) => {
                rows.push(pair);
                first_data_seen = true;
            }
            None if !first_data_seen && idx == 0 => continue, // header
            None => {
                return Err(CsvError {
                    line: idx + 1,
                    message: format!("expected two numeric columns, got {line:?}"),
                })
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn plan(replications: u32, length: u64, thinning: u64, master_seed: u64) -> ReplicationPlan {
        ReplicationPlan {
            replications,
            length,
            thinning,
            master_seed,
        }
    }

    #[test]
    fn recorder_grid_has_the_expected_row_count() {
        let mut r = Recorder::new(1_000, 1_000_000);
        for n in 1..=1_000_000u64 {
            r.record(n, n);
        }
        assert_eq!(r.into_samples().len(), 1_001);

        let mut r = Recorder::new(100, 1_001);
        for n in 1..=1_001u64 {
            r.record(n, n);
        }
        // 1, 100, 200, ..., 1000, 1001
        assert_eq!(r.into_samples().len(), 12);
    }

    #[test]
    fn single_replication_mean_equals_the_trajectory() {
        let g = Graph::complete(3);
        let out = run_replications(
            &g,
            &CaParams::limit(),
            EngineKind::Fast,
            &plan(1, 500, 10, 77),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        rng.set_stream(0);
        let s0 = CounterState::from_graph(&g).unwrap();
        let samples = limit::run_fast_with(s0, 499, 10, &mut rng);
        for (p, s) in out.curve.points.iter().zip(&samples) {
            assert_eq!(p.n, s.n);
            assert_eq!(p.mean, s.delta as f64);
            assert_eq!(p.std_dev, 0.0);
        }
    }

    #[test]
    fn equal_master_seeds_reproduce_the_curve_exactly() {
        let g = Graph::diamond();
        let a = run_replications(&g, &CaParams::limit(), EngineKind::Fast, &plan(16, 2_000, 50, 5))
            .unwrap();
        let b = run_replications(&g, &CaParams::limit(), EngineKind::Fast, &plan(16, 2_000, 50, 5))
            .unwrap();
        assert_eq!(a.curve, b.curve);
    }

    #[test]
    fn aggregation_is_exchangeable_over_replication_order() {
        // Permuting which replication produced which trajectory cannot move
        // the mean: aggregation is an exact integer sum.
        let g = Graph::diamond();
        let p = plan(8, 400, 20, 41);
        let reference = run_replications(&g, &CaParams::limit(), EngineKind::Fast, &p).unwrap();
        let s0 = CounterState::from_graph(&g).unwrap();
        let mut runs: Vec<Vec<Sample>> = (0..8u64)
            .map(|j| {
                let mut rng = ChaCha8Rng::seed_from_u64(41);
                rng.set_stream(j);
                limit::run_fast_with(s0, 399, 20, &mut rng)
            })
            .collect();
        runs.reverse();
        let permuted = aggregate(&p, runs);
        assert_eq!(reference.curve, permuted.curve);
    }

    #[test]
    fn mean_curve_starts_at_the_initial_triangle_count_and_never_decreases() {
        let g = Graph::complete(17);
        let out = run_replications(
            &g,
            &CaParams::limit(),
            EngineKind::Fast,
            &plan(32, 3_000, 100, 9),
        )
        .unwrap();
        assert_eq!(out.curve.points[0].mean, 680.0);
        for w in out.curve.points.windows(2) {
            assert!(w[1].mean >= w[0].mean);
        }
    }

    #[test]
    fn fast_engine_rejects_non_limit_parameters() {
        let g = Graph::complete(3);
        let params = CaParams::new(3, 0.0, crate::engine::AttachmentFunction::Indicator).unwrap();
        assert_eq!(
            run_replications(&g, &params, EngineKind::Fast, &plan(2, 10, 1, 0)).unwrap_err(),
            ModelError::NotLimitModel
        );
    }

    #[test]
    fn fast_mean_tracks_the_exact_expectation() {
        let g = Graph::complete(3);
        let n = 10_000u64;
        let out = run_replications(
            &g,
            &CaParams::limit(),
            EngineKind::Fast,
            &plan(100, n, 1_000, 2024),
        )
        .unwrap();
        let s0 = CounterState::from_graph(&g).unwrap();
        let expected = oracle::expected_delta(s0, n);
        let last = out.curve.points.last().unwrap();
        let z = (last.mean - expected).abs() / last.std_err(100);
        assert!(z < 4.0, "z = {z}, mean {} vs exact {expected}", last.mean);
    }

    #[test]
    fn trajectory_csv_round_trips() {
        let t = Trajectory {
            initial_label: "diamond".into(),
            seed: 3,
            thinning: 1,
            samples: vec![
                Sample { n: 1, delta: 2 },
                Sample { n: 2, delta: 2 },
                Sample { n: 3, delta: 3 },
            ],
        };
        let parsed = parse_xy_csv(&trajectory_csv(&t, false)).unwrap();
        assert_eq!(parsed, vec![(1.0, 2.0), (2.0, 2.0), (3.0, 3.0)]);
        let offset = parse_xy_csv(&trajectory_csv(&t, true)).unwrap();
        assert_eq!(offset[0], (1.0, 0.0));
        assert_eq!(offset[2], (3.0, 1.0));
    }

    #[test]
    fn empty_curve_exports_header_only() {
        let c = MeanCurve {
            replications: 1,
            points: vec![],
        };
        assert_eq!(mean_curve_csv(&c, false), "n,delta_mean\n");
    }

    #[test]
    fn offset_curve_starts_at_zero() {
        let c = MeanCurve {
            replications: 2,
            points: vec![
                MeanPoint { n: 1, mean: 1.0, std_dev: 0.0 },
                MeanPoint { n: 5, mean: 3.5, std_dev: 0.7 },
            ],
        };
        let rows = parse_xy_csv(&mean_curve_csv(&c, true)).unwrap();
        assert_eq!(rows[0], (1.0, 0.0));
        assert_eq!(rows[1], (5.0, 2.5));
    }

    #[test]
    fn csv_parse_errors_carry_line_numbers() {
        let err = parse_xy_csv("n,delta\n1,2\noops\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_xy_csv("1,2\n3,4,5\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn mean_curve_csv_round_trips_through_parse() {
        let g = Graph::complete(3);
        let out = run_replications(
            &g,
            &CaParams::limit(),
            EngineKind::Fast,
            &plan(4, 100, 10, 1),
        )
        .unwrap();
        let rows = parse_xy_csv(&mean_curve_csv(&out.curve, false)).unwrap();
        assert_eq!(rows.len(), out.curve.points.len());
        for (row, p) in rows.iter().zip(&out.curve.points) {
            assert_eq!(row.0, p.n as f64);
            assert_eq!(row.1, p.mean);
        }
    }
}
