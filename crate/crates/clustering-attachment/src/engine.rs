//! The general clustering-attachment evolution: each step appends one node,
//! weights every existing node by its clustering coefficient through an
//! attachment function (plus an `epsilon` floor), draws `m` distinct nodes
//! by successive sampling, and connects the newcomer to all of them.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::montecarlo::{Recorder, Sample, Trajectory};

/// Attachment function mapping a clustering coefficient in `[0, 1]` to a
/// non-negative weight. Both variants vanish at zero and are positive and
/// non-decreasing on `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AttachmentFunction {
    /// `weight(x) = 1` for `x > 0`, else `0` — the pointwise limit of the
    /// power family as the exponent goes to zero.
    Indicator,
    /// `weight(x) = x^alpha` with `alpha > 0`.
    Power { alpha: f64 },
}

impl AttachmentFunction {
    pub fn evaluate(&self, x: f64) -> f64 {
        match *self {
            AttachmentFunction::Indicator => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            // 0^alpha = 0 for every alpha > 0.
            AttachmentFunction::Power { alpha } => x.powf(alpha),
        }
    }
}

/// Model parameters: edges per new node, weight floor, attachment function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaParams {
    m: usize,
    epsilon: f64,
    attachment: AttachmentFunction,
}

impl CaParams {
    pub fn new(m: usize, epsilon: f64, attachment: AttachmentFunction) -> Result<Self, ModelError> {
        if m < 2 {
            return Err(ModelError::MTooSmall(m));
        }
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(ModelError::BadEpsilon(epsilon));
        }
        if let AttachmentFunction::Power { alpha } = attachment {
            if !alpha.is_finite() || alpha <= 0.0 {
                return Err(ModelError::BadAlpha(alpha));
            }
        }
        Ok(Self { m, epsilon, attachment })
    }

    /// The limit model: `m = 2`, `epsilon = 0`, indicator attachment. New
    /// nodes pick a uniform pair of active nodes.
    pub fn limit() -> Self {
        Self {
            m: 2,
            epsilon: 0.0,
            attachment: AttachmentFunction::Indicator,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn attachment(&self) -> AttachmentFunction {
        self.attachment
    }

    pub fn is_limit_model(&self) -> bool {
        self.m == 2
            && self.epsilon == 0.0
            && self.attachment == AttachmentFunction::Indicator
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("m must be at least 2, got {0}")]
    MTooSmall(usize),
    #[error("epsilon must be finite and non-negative, got {0}")]
    BadEpsilon(f64),
    #[error("power attachment exponent must be finite and positive, got {0}")]
    BadAlpha(f64),
    #[error("initial graph too small: epsilon > 0 needs at least {required} nodes, found {found}")]
    TooFewNodes { required: usize, found: usize },
    #[error(
        "initial graph violates the epsilon = 0 start condition: \
         need at least {required} active nodes (nodes lying in a triangle), found {found}"
    )]
    TooFewActiveNodes { required: usize, found: usize },
    #[error("attachment weights sum to zero: epsilon = 0 and no node is active")]
    ZeroWeightSum,
    #[error("successive sampling needs {required} positive-weight nodes, found {found}")]
    TooFewCandidates { required: usize, found: usize },
    #[error("fast engine requires the limit model (m = 2, epsilon = 0, indicator attachment)")]
    NotLimitModel,
    #[error("invalid counter state: {0}")]
    BadCounterState(String),
}

/// Checks that the initial graph supports the given parameters: with a
/// positive `epsilon` any graph with at least `m` nodes works; with
/// `epsilon = 0` at least `m` nodes must already be active, otherwise the
/// attachment weights are identically zero.
pub fn validate_initial(g: &Graph, params: &CaParams) -> Result<(), ModelError> {
    if params.epsilon > 0.0 {
        if g.node_count() < params.m {
            return Err(ModelError::TooFewNodes {
                required: params.m,
                found: g.node_count(),
            });
        }
    } else {
        let active = g.active_node_count() as usize;
        if active < params.m {
            return Err(ModelError::TooFewActiveNodes {
                required: params.m,
                found: active,
            });
        }
    }
    Ok(())
}

/// Normalized attachment weights over the current node set.
///
/// The indicator branch decides activity from the integer triangle count
/// rather than a floating-point coefficient, so a node is weighted iff it
/// really lies in a triangle.
pub fn node_weights(g: &Graph, params: &CaParams) -> Result<Vec<f64>, ModelError> {
    let eps = params.epsilon;
    let mut weights: Vec<f64> = match params.attachment {
        AttachmentFunction::Indicator => g
            .nodes()
            .map(|i| if g.is_active(i) { 1.0 + eps } else { eps })
            .collect(),
        AttachmentFunction::Power { alpha } => (0..g.node_count())
            .map(|i| g.clustering_by_index(i).powf(alpha) + eps)
            .collect(),
    };
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(ModelError::ZeroWeightSum);
    }
    for w in &mut weights {
        *w /= total;
    }
    Ok(weights)
}

/// Draws `m` distinct indices by successive sampling: each draw picks an
/// index with probability proportional to its weight among the indices not
/// drawn yet (renormalizing after every draw).
pub fn successive_sample<R: Rng + ?Sized>(
    weights: &[f64],
    m: usize,
    rng: &mut R,
) -> Result<Vec<NodeId>, ModelError> {
    let positive = weights.iter().filter(|&&w| w > 0.0).count();
    if positive < m {
        return Err(ModelError::TooFewCandidates {
            required: m,
            found: positive,
        });
    }
    let mut remaining = weights.to_vec();
    let mut total: f64 = remaining.iter().sum();
    let mut picked = Vec::with_capacity(m);
    for _ in 0..m {
        let target = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut chosen = None;
        let mut last_positive = 0;
        for (idx, &w) in remaining.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            last_positive = idx;
            acc += w;
            if target < acc {
                chosen = Some(idx);
                break;
            }
        }
        // Rounding can push `target` past the final accumulated weight;
        // fall back to the last positive-weight index.
        let idx = chosen.unwrap_or(last_positive);
        picked.push(NodeId(idx as u32));
        total -= remaining[idx];
        remaining[idx] = 0.0;
    }
    Ok(picked)
}

/// Outcome of one evolution step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub new_node: NodeId,
    /// The sampled attachment targets, in draw order.
    pub attached: Vec<NodeId>,
    /// Number of adjacent pairs among the targets, which is exactly the
    /// number of triangles this step closes. For `m > 2` it can exceed one.
    pub new_triangles: u64,
}

/// Appends one node and connects it to `m` sampled targets.
pub fn evolve_step<R: Rng + ?Sized>(
    g: &mut Graph,
    params: &CaParams,
    rng: &mut R,
) -> Result<StepRecord, ModelError> {
    let weights = node_weights(g, params)?;
    let attached = successive_sample(&weights, params.m, rng)?;
    let mut new_triangles = 0;
    for (a, &u) in attached.iter().enumerate() {
        for &w in &attached[a + 1..] {
            if g.has_edge(u, w) {
                new_triangles += 1;
            }
        }
    }
    let new_node = g.add_node();
    for &target in &attached {
        g.add_edge(new_node, target)
            .expect("fresh node has no incident edges yet");
    }
    Ok(StepRecord {
        new_node,
        attached,
        new_triangles,
    })
}

/// Runs `steps` evolution steps in place, recording the triangle count on the
/// thinning grid. Sample indices follow the convention that the initial graph
/// sits at n = 1, so the final sample has n = steps + 1.
pub fn run_with<R: Rng + ?Sized>(
    g: &mut Graph,
    params: &CaParams,
    steps: u64,
    thinning: u64,
    rng: &mut R,
) -> Result<Vec<Sample>, ModelError> {
    validate_initial(g, params)?;
    let mut recorder = Recorder::new(thinning, steps + 1);
    recorder.record(1, g.total_triangles());
    for s in 1..=steps {
        evolve_step(g, params, rng)?;
        recorder.record(s + 1, g.total_triangles());
    }
    Ok(recorder.into_samples())
}

/// Convenience wrapper over [`run_with`]: clones the initial graph and uses a
/// fixed, documented random stream (ChaCha8 seeded from `seed`, stream 0) so
/// equal seeds give identical trajectories.
pub fn run(
    g0: &Graph,
    params: &CaParams,
    label: &str,
    seed: u64,
    steps: u64,
    thinning: u64,
) -> Result<Trajectory, ModelError> {
    let mut g = g0.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = run_with(&mut g, params, steps, thinning, &mut rng)?;
    Ok(Trajectory {
        initial_label: label.to_string(),
        seed,
        thinning,
        samples,
    })
}
