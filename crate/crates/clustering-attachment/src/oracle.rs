//! Exact probabilities for the limit process by dynamic programming.
//!
//! A black draw leaves the counter state untouched, so after `k` steps the
//! state is a deterministic function of the number `j` of white draws so
//! far: `j` extra active nodes and `2j` extra connected pairs. The chain
//! over `j` is therefore an exact reformulation, not an approximation, and
//! one probability vector over `j` suffices to compute the white-draw
//! probability at any step, the expected triangle count, and pairwise joint
//! probabilities. The vector's support is truncated far below any useful
//! tolerance (entries under 1e-30 at the edges); the discarded mass is
//! tracked and stays around 1e-24 even for million-step sweeps.

use std::collections::VecDeque;
use std::fmt;

use crate::limit::CounterState;

/// Mass besides which a support cell is dropped. Over `s` steps at most
/// `2 s` cells are dropped, so sweeps to 10^6 lose under 1e-23 probability.
const TRUNCATION_THRESHOLD: f64 = 1e-30;

/// Distribution of the white-draw count after a number of steps, together
/// with the initial counters that define the transition probabilities.
#[derive(Clone, Debug)]
pub struct WhiteCountDistribution {
    initial: CounterState,
    step: u64,
    j_min: u64,
    probs: VecDeque<f64>,
    truncated: f64,
}

impl WhiteCountDistribution {
    /// Point mass at zero whites, zero steps taken.
    pub fn new(initial: CounterState) -> Self {
        Self {
            initial,
            step: 0,
            j_min: 0,
            probs: VecDeque::from([1.0]),
            truncated: 0.0,
        }
    }

    /// Internal constructor for conditioned (sub-probability) measures.
    fn from_parts(initial: CounterState, step: u64, j_min: u64, probs: VecDeque<f64>) -> Self {
        Self {
            initial,
            step,
            j_min,
            probs,
            truncated: 0.0,
        }
    }

    /// White-draw probability after `j` whites: the counters grow by `j`
    /// active nodes and `2j` connected pairs.
    #[inline]
    pub fn white_probability_after(&self, j: u64) -> f64 {
        self.initial.after_whites(j).white_probability()
    }

    /// Number of completed steps.
    pub fn step(&self) -> u64 {
        self.step
    }

    /// Probability of exactly `j` whites so far.
    pub fn probability(&self, j: u64) -> f64 {
        if j < self.j_min || j >= self.j_min + self.probs.len() as u64 {
            0.0
        } else {
            self.probs[(j - self.j_min) as usize]
        }
    }

    /// Inclusive support bounds of the retained mass.
    pub fn support(&self) -> (u64, u64) {
        (self.j_min, self.j_min + self.probs.len() as u64 - 1)
    }

    /// Sum of the retained mass (1 minus the truncated remainder for a
    /// proper distribution).
    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Mass dropped by support truncation so far.
    pub fn truncated_mass(&self) -> f64 {
        self.truncated
    }

    /// Probability that the next draw is white: the white probabilities
    /// averaged over the current white-count distribution.
    pub fn next_white_probability(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, &p)| p * self.white_probability_after(self.j_min + i as u64))
            .sum()
    }

    /// Advances one step: mass at `j` either stays (black draw) or moves to
    /// `j + 1` (white draw).
    pub fn advance(&mut self) {
        let old_len = self.probs.len();
        self.probs.push_back(0.0);
        for i in (0..=old_len).rev() {
            let stay = if i < old_len {
                let j = self.j_min + i as u64;
                self.probs[i] * (1.0 - self.white_probability_after(j))
            } else {
                0.0
            };
            let inflow = if i > 0 {
                let j = self.j_min + i as u64 - 1;
                self.probs[i - 1] * self.white_probability_after(j)
            } else {
                0.0
            };
            self.probs[i] = stay + inflow;
        }
        self.step += 1;
        while self.probs.len() > 1 && self.probs[0] < TRUNCATION_THRESHOLD {
            self.truncated += self.probs.pop_front().expect("non-empty");
            self.j_min += 1;
        }
        while self.probs.len() > 1
            && *self.probs.back().expect("non-empty") < TRUNCATION_THRESHOLD
        {
            self.truncated += self.probs.pop_back().expect("non-empty");
        }
    }

    pub fn advance_to(&mut self, step: u64) {
        while self.step < step {
            self.advance();
        }
    }

    /// The sub-probability measure over white counts obtained by keeping
    /// only the paths whose next draw is white (and taking that draw). Its
    /// total mass is the white probability of the next step.
    fn condition_on_next_white(&self) -> Self {
        let probs: VecDeque<f64> = self
            .probs
            .iter()
            .enumerate()
            .map(|(i, &p)| p * self.white_probability_after(self.j_min + i as u64))
            .collect();
        Self::from_parts(self.initial, self.step + 1, self.j_min + 1, probs)
    }
}

/// Exact `P(white at step n)`, `n >= 1`.
pub fn marginal_pb(s0: CounterState, n: u64) -> f64 {
    assert!(n >= 1);
    let mut dist = WhiteCountDistribution::new(s0);
    dist.advance_to(n - 1);
    dist.next_white_probability()
}

/// Exact white-draw probabilities for every step `1..=n_max`, one sweep.
pub fn marginal_pb_sweep(s0: CounterState, n_max: u64) -> Vec<f64> {
    assert!(n_max >= 1);
    let mut dist = WhiteCountDistribution::new(s0);
    let mut out = Vec::with_capacity(n_max as usize);
    for _ in 1..=n_max {
        out.push(dist.next_white_probability());
        dist.advance();
    }
    out
}

/// Exact expected triangle count at index `n` (the initial graph is `n = 1`).
pub fn expected_delta(s0: CounterState, n: u64) -> f64 {
    assert!(n >= 1);
    *expected_delta_sweep(s0, n).last().expect("n >= 1")
}

/// Expected triangle counts for `n = 1..=n_max` in one sweep. The running
/// sum of white probabilities is Kahan-compensated so million-term sweeps
/// keep full additive precision.
pub fn expected_delta_sweep(s0: CounterState, n_max: u64) -> Vec<f64> {
    assert!(n_max >= 1);
    let delta1 = s0.initial_triangles() as f64;
    let mut out = Vec::with_capacity(n_max as usize);
    out.push(delta1);
    let mut dist = WhiteCountDistribution::new(s0);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for _ in 2..=n_max {
        let p = dist.next_white_probability();
        let y = p - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        out.push(delta1 + sum);
        dist.advance();
    }
    out
}

/// Exact `P(white at step u AND white at step v)`. Indices may come in
/// either order; equal indices give the marginal.
pub fn joint_pb(s0: CounterState, u: u64, v: u64) -> f64 {
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    assert!(u >= 1);
    if u == v {
        return marginal_pb(s0, u);
    }
    let mut dist = WhiteCountDistribution::new(s0);
    dist.advance_to(u - 1);
    let mut conditioned = dist.condition_on_next_white();
    conditioned.advance_to(v - 1);
    conditioned.next_white_probability()
}

/// Scope of the inequality families checked by [`verify_lemmas`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// White-count states `j = 0..=state_range` for the horizon checks.
    pub state_range: u64,
    /// Horizon gaps checked for positivity and strict decrease.
    pub horizon: u64,
    /// Steps checked for marginal-above-conditional.
    pub conditional_max: u64,
    /// Largest step index in the pairwise correlation scan.
    pub joint_max: u64,
    /// Steps checked against the logarithmic expectation bound.
    pub expectation_max: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            state_range: 500,
            horizon: 5_000,
            conditional_max: 500,
            joint_max: 200,
            expectation_max: 500,
        }
    }
}

/// Result of one inequality family.
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
    /// Exact equalities at the degenerate configurations where they are
    /// expected (a start with every active pair connected).
    pub expected_ties: u64,
    pub worst_margin: f64,
    pub worst_case: String,
    pub first_violation: Option<String>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for FamilyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.name)?;
        writeln!(
            f,
            "  {} over {} cases ({} expected ties); worst margin {:.3e} at {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.expected_ties,
            self.worst_margin,
            self.worst_case,
        )?;
        if let Some(v) = &self.first_violation {
            writeln!(f, "  first violation: {v}")?;
        }
        Ok(())
    }
}

/// Report over all inequality families.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub families: Vec<FamilyCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.passed())
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for family in &self.families {
            write!(f, "{family}")?;
        }
        writeln!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct FamilyBuilder {
    check: FamilyCheck,
}

impl FamilyBuilder {
    fn new(name: &'static str) -> Self {
        Self {
            check: FamilyCheck {
                name,
                cases: 0,
                violations: 0,
                expected_ties: 0,
                worst_margin: f64::INFINITY,
                worst_case: String::from("-"),
                first_violation: None,
            },
        }
    }

    /// Requires `margin > 0`, or `margin == 0` when a tie is expected.
    fn strict(&mut self, margin: f64, tie_expected: bool, describe: impl Fn() -> String) {
        self.check.cases += 1;
        if margin < self.check.worst_margin {
            self.check.worst_margin = margin;
            self.check.worst_case = describe();
        }
        let ok = if tie_expected { margin >= 0.0 } else { margin > 0.0 };
        if tie_expected && margin == 0.0 {
            self.check.expected_ties += 1;
        }
        if !ok {
            self.check.violations += 1;
            if self.check.first_violation.is_none() {
                self.check.first_violation = Some(format!("{} (margin {margin:.3e})", describe()));
            }
        }
    }

    fn finish(self) -> FamilyCheck {
        self.check
    }
}

/// Numerically checks the inequality families behind the divergence result:
/// positivity and strict horizon decrease of the conditional white
/// probability (exact integer arithmetic), the marginal dominating its
/// all-white conditional, pairwise non-positive correlation of white draws,
/// and the logarithmic lower bound on the expected triangle count. Exact
/// ties are tolerated only where a fully connected start forces them.
pub fn verify_lemmas(s0: CounterState, opts: &VerifyOptions) -> LemmaReport {
    let complete_start = s0.connected_pairs() == s0.pair_count();

    let mut positive = FamilyBuilder::new("conditional white probability stays positive");
    let mut decreasing = FamilyBuilder::new("conditional white probability decreases with horizon");
    for j in 0..=opts.state_range {
        let state = s0.after_whites(j);
        let (mut num_a, mut den_a) = state.p_after_whites_parts(0);
        for gap in 0..opts.horizon {
            let (num_b, den_b) = state.p_after_whites_parts(gap + 1);
            positive.strict(num_a as f64 / den_a as f64, false, || {
                format!("state j={j}, gap={gap}")
            });
            // exact rational comparison: a/b > c/d  <=>  a d > c b
            let lhs = num_a as u128 * den_b as u128;
            let rhs = num_b as u128 * den_a as u128;
            let margin = num_a as f64 / den_a as f64 - num_b as f64 / den_b as f64;
            decreasing.strict(
                if lhs > rhs { margin.max(f64::MIN_POSITIVE) } else { margin.min(0.0) },
                false,
                || format!("state j={j}, gap={gap} -> {}", gap + 1),
            );
            (num_a, den_a) = (num_b, den_b);
        }
    }

    let top = opts
        .conditional_max
        .max(opts.joint_max)
        .max(opts.expectation_max);
    let marginals = marginal_pb_sweep(s0, top);
    let expectations = expected_delta_sweep(s0, top);

    let mut conditional =
        FamilyBuilder::new("marginal white probability exceeds its all-white conditional");
    for n in 2..=opts.conditional_max {
        let margin = marginals[(n - 1) as usize] - s0.p_after_whites(n - 1);
        // A fully connected start makes the first draw certain, so at n = 2
        // conditioning on it changes nothing: equality is forced.
        conditional.strict(margin, complete_start && n == 2, || format!("n={n}"));
    }

    let mut correlation = FamilyBuilder::new("white draws are non-positively correlated");
    let mut dist = WhiteCountDistribution::new(s0);
    for u in 1..opts.joint_max {
        dist.advance_to(u - 1);
        let mut conditioned = dist.condition_on_next_white();
        for v in (u + 1)..=opts.joint_max {
            conditioned.advance_to(v - 1);
            let joint = conditioned.next_white_probability();
            let product = marginals[(u - 1) as usize] * marginals[(v - 1) as usize];
            correlation.strict(product - joint, complete_start && u == 1, || {
                format!("u={u}, v={v}")
            });
        }
    }

    let mut growth = FamilyBuilder::new("expected triangle growth beats the logarithmic bound");
    let coeff = s0.connected_pairs() as f64 / (3.0 * s0.pair_count() as f64);
    for n in 2..=opts.expectation_max {
        let bound = coeff * ((n - 1) as f64).ln();
        let margin = expectations[(n - 1) as usize] - s0.initial_triangles() as f64 - bound;
        growth.strict(margin, false, || format!("n={n}"));
    }

    LemmaReport {
        families: vec![
            positive.finish(),
            decreasing.finish(),
            conditional.finish(),
            correlation.finish(),
            growth.finish(),
        ],
    }
}
