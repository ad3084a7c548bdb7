//! Least-squares fit of `phi(n) = c1 + c2 * n^c3` to mean curves.
//!
//! The exponent is found by a profiled one-dimensional search: for a fixed
//! `c3` the remaining problem is linear, so `(c1, c2)` come from a
//! closed-form solve and only `c3` needs a scan (coarse grid, refined by
//! golden section). No starting guess is required.

use std::fmt;

use thiserror::Error;

/// How the constant term is treated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum C1Mode {
    Free,
    /// Pin `c1` to a known value (typically the initial triangle count) and
    /// fit only the power term.
    Fixed(f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least {required} samples in the window, found {found}")]
    TooFewSamples { required: usize, found: usize },
    #[error("degenerate window: the values are constant")]
    DegenerateWindow,
    #[error("abscissae must be at least 1, found {0}")]
    BadAbscissa(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// Sum of squared errors at the returned parameters.
    pub residual: f64,
    pub window: (f64, f64),
    pub c1_mode: C1Mode,
    /// Set when the exponent search ended on a boundary of its range.
    pub hit_bound: bool,
}

impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.c1_mode {
            C1Mode::Free => "free".to_string(),
            C1Mode::Fixed(v) => format!("fixed({v})"),
        };
        write!(
            f,
            "c1 = {:.6}, c2 = {:.6}, c3 = {:.6} (c1 {mode}, window [{}, {}], residual {:.6e}{})",
            self.c1,
            self.c2,
            self.c3,
            self.window.0,
            self.window.1,
            self.residual,
            if self.hit_bound { ", bound hit" } else { "" }
        )
    }
}

/// Exponent search range and stopping width.
pub const C3_RANGE: (f64, f64) = (0.01, 1.5);
pub const C3_TOLERANCE: f64 = 1e-6;
const GRID_POINTS: usize = 61;

/// Fits `c1 + c2 * n^c3` to the samples falling inside `window` (inclusive
/// bounds on `n`).
pub fn fit_power(
    samples: &[(f64, f64)],
    window: (f64, f64),
    mode: C1Mode,
) -> Result<FitResult, FitError> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(n, _)| n >= window.0 && n <= window.1)
        .collect();
    if pts.len() < 3 {
        return Err(FitError::TooFewSamples {
            required: 3,
            found: pts.len(),
        });
    }
    if let Some(&(n, _)) = pts.iter().find(|&&(n, _)| n < 1.0) {
        return Err(FitError::BadAbscissa(n));
    }
    let (y_min, y_max) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| {
            (lo.min(y), hi.max(y))
        });
    if y_max - y_min == 0.0 {
        return Err(FitError::DegenerateWindow);
    }

    // Coarse grid over the exponent, then golden section inside the best
    // bracket. The profiled objective is smooth and, for power-like data,
    // unimodal; the grid guards against a bad bracket.
    let (lo, hi) = C3_RANGE;
    let grid_step = (hi - lo) / (GRID_POINTS - 1) as f64;
    let mut best_idx = 0;
    let mut best_sse = f64::INFINITY;
    for i in 0..GRID_POINTS {
        let c3 = lo + grid_step * i as f64;
        let (sse, _, _) = profile_sse(&pts, c3, mode);
        if sse < best_sse {
            best_sse = sse;
            best_idx = i;
        }
    }
    let mut a = lo + grid_step * best_idx.saturating_sub(1) as f64;
    let mut b = (lo + grid_step * (best_idx + 1) as f64).min(hi);

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = profile_sse(&pts, x1, mode).0;
    let mut f2 = profile_sse(&pts, x2, mode).0;
    while b - a > C3_TOLERANCE {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = profile_sse(&pts, x1, mode).0;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = profile_sse(&pts, x2, mode).0;
        }
    }
    let c3 = 0.5 * (a + b);
    let (residual, c1, c2) = profile_sse(&pts, c3, mode);
    let hit_bound = c3 - C3_RANGE.0 < 2.0 * C3_TOLERANCE || C3_RANGE.1 - c3 < 2.0 * C3_TOLERANCE;
    Ok(FitResult {
        c1,
        c2,
        c3,
        residual,
        window,
        c1_mode: mode,
        hit_bound,
    })
}

/// SSE of the best linear coefficients at a fixed exponent; returns
/// `(sse, c1, c2)`.
fn profile_sse(pts: &[(f64, f64)], c3: f64, mode: C1Mode) -> (f64, f64, f64) {
    let k = pts.len() as f64;
    match mode {
        C1Mode::Free => {
            let mut su = 0.0;
            let mut sy = 0.0;
            for &(n, y) in pts {
                su += n.powf(c3);
                sy += y;
            }
            let (u_bar, y_bar) = (su / k, sy / k);
            let mut var_u = 0.0;
            let mut cov_uy = 0.0;
            for &(n, y) in pts {
                let du = n.powf(c3) - u_bar;
                var_u += du * du;
                cov_uy += du * (y - y_bar);
            }
            if var_u == 0.0 {
                return (f64::INFINITY, 0.0, 0.0);
            }
            let c2 = cov_uy / var_u;
            let c1 = y_bar - c2 * u_bar;
            let sse = pts
                .iter()
                .map(|&(n, y)| {
                    let r = y - c1 - c2 * n.powf(c3);
                    r * r
                })
                .sum();
            (sse, c1, c2)
        }
        C1Mode::Fixed(c1) => {
            let mut num = 0.0;
            let mut den = 0.0;
            for &(n, y) in pts {
                let u = n.powf(c3);
                num += (y - c1) * u;
                den += u * u;
            }
            if den == 0.0 {
                return (f64::INFINITY, c1, 0.0);
            }
            let c2 = num / den;
            let sse = pts
                .iter()
                .map(|&(n, y)| {
                    let r = y - c1 - c2 * n.powf(c3);
                    r * r
                })
                .sum();
            (sse, c1, c2)
        }
    }
}
