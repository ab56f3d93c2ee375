use serde::Serialize;

use crate::bloch::{CartesianVector, EulerAngles};
use crate::error::{Error, Result};
use crate::propagation::{period, ClosedForm, ErrorAngles, Target};

const GRID: usize = 1000;
const ACCEPT: f64 = 1e-6;
/// Coarse mismatch below which a candidate is worth refining.
const SHORTLIST: f64 = 1e-2;
/// Relative half-width of the refinement bracket.
const BRACKET: f64 = 1e-3;
const CONSTANT_SPREAD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodEstimate {
    pub period: f64,
    pub analytic: f64,
    /// Worst shift mismatch on the sample grid at `period`.
    pub mismatch: f64,
    /// The signal is constant, so every shift matches and `period` is the
    /// analytic one.
    pub degenerate: bool,
}

/// Numeric period of the discrepancy for base vector `(1, 0, 0)`.
pub fn estimate_period_numeric(
    target: Target,
    err: ErrorAngles,
    angles: EulerAngles,
) -> Result<f64> {
    let model = ClosedForm::new(CartesianVector::X, err, angles)?;
    Ok(estimate_period(&model, target)?.period)
}

/// Scans `T/8 .. T/2` and then `T .. 9T` around the analytic period `T`,
/// refines each plausible candidate by golden-section search on the mean
/// squared shift mismatch and returns the first one whose worst mismatch on
/// the grid is below `1e-6`.
pub fn estimate_period(model: &ClosedForm, target: Target) -> Result<PeriodEstimate> {
    let analytic = period(model.rates)?;
    let grid: Vec<f64> = (0..GRID)
        .map(|j| analytic * j as f64 / GRID as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&t| model.target(target, t)).collect();

    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if hi - lo < CONSTANT_SPREAD {
        return Ok(PeriodEstimate {
            period: analytic,
            analytic,
            mismatch: hi - lo,
            degenerate: true,
        });
    }

    let shifted = |tau: f64| {
        grid.iter()
            .zip(&values)
            .map(move |(&t, &v)| model.target(target, t + tau) - v)
    };
    let worst = |tau: f64| shifted(tau).fold(0.0, |m: f64, d| m.max(d.abs()));
    let mean_sq = |tau: f64| shifted(tau).map(|d| d * d).sum::<f64>() / GRID as f64;

    let candidates = (2..=8)
        .rev()
        .map(|k| analytic / k as f64)
        .chain((1..=9).map(|k| analytic * k as f64));
    for c in candidates {
        if worst(c) > SHORTLIST {
            continue;
        }
        let tau = golden_section(mean_sq, c * (1.0 - BRACKET), c * (1.0 + BRACKET), c * 1e-13);
        let mismatch = worst(tau);
        if mismatch < ACCEPT {
            return Ok(PeriodEstimate {
                period: tau,
                analytic,
                mismatch,
                degenerate: false,
            });
        }
    }
    Err(Error::PeriodNotFound {
        limit: 10.0 * analytic,
    })
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}
