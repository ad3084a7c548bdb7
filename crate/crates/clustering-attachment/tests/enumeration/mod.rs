//! Exhaustive path enumeration over all 2^(steps) white/black draw
//! sequences with exact rational arithmetic — the ground-truth oracle the
//! dynamic program is checked against. Independent of the DP: it only uses
//! the counter transition (a white draw adds one active node and two
//! connected pairs).

use std::collections::BTreeMap;

use clustering_attachment::limit::CounterState;
use num::{BigInt, BigRational, ToPrimitive, Zero};

pub struct Enumeration {
    /// marginals[t - 1] = P(white at step t)
    marginals: Vec<BigRational>,
    joints: BTreeMap<(u64, u64), BigRational>,
    delta1: u64,
}

impl Enumeration {
    pub fn marginal(&self, t: u64) -> f64 {
        self.marginals[(t - 1) as usize].to_f64().expect("finite")
    }

    pub fn joint(&self, u: u64, v: u64) -> f64 {
        self.joints[&(u.min(v), u.max(v))].to_f64().expect("finite")
    }

    /// Expected triangle count at index n: the initial count plus the sum
    /// of the first n - 1 white probabilities.
    pub fn expected_delta(&self, n: u64) -> f64 {
        let sum: BigRational = self.marginals[..(n - 1) as usize].iter().sum();
        self.delta1 as f64 + sum.to_f64().expect("finite")
    }
}

/// Enumerates every draw sequence of length `n_max - 1` from `s0`.
pub fn enumerate(s0: CounterState, n_max: u64) -> Enumeration {
    let steps = (n_max - 1) as usize;
    let mut out = Enumeration {
        marginals: vec![BigRational::zero(); steps],
        joints: BTreeMap::new(),
        delta1: s0.initial_triangles(),
    };
    for u in 1..=steps as u64 {
        for v in (u + 1)..=steps as u64 {
            out.joints.insert((u, v), BigRational::zero());
        }
    }
    let mut flags = Vec::with_capacity(steps);
    walk(&s0, steps, 0, BigRational::from(BigInt::from(1)), &mut flags, &mut out);
    out
}

fn white_probability(s0: &CounterState, whites: u64) -> BigRational {
    let state = s0.after_whites(whites);
    BigRational::new(
        BigInt::from(state.connected_pairs()),
        BigInt::from(state.pair_count()),
    )
}

fn walk(
    s0: &CounterState,
    steps: usize,
    whites: u64,
    prob: BigRational,
    flags: &mut Vec<bool>,
    out: &mut Enumeration,
) {
    if prob.is_zero() {
        return;
    }
    if flags.len() == steps {
        for (i, &white_i) in flags.iter().enumerate() {
            if !white_i {
                continue;
            }
            out.marginals[i] += &prob;
            for (k, &white_k) in flags.iter().enumerate().skip(i + 1) {
                if white_k {
                    *out.joints.get_mut(&(i as u64 + 1, k as u64 + 1)).expect("prefilled") +=
                        &prob;
                }
            }
        }
        return;
    }
    let q = white_probability(s0, whites);
    let stay = &prob * (BigRational::from(BigInt::from(1)) - &q);

    flags.push(true);
    walk(s0, steps, whites + 1, prob * q, flags, out);
    flags.pop();

    flags.push(false);
    walk(s0, steps, whites, stay, flags, out);
    flags.pop();
}
