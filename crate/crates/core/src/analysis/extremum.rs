use serde::Serialize;
use std::f64::consts::TAU;

use crate::bloch::{CartesianVector, EulerAngles, VALIDATION_TOL};
use crate::error::{Error, Result};
use crate::optimize::{multistart_minimize, NelderMeadOptions, SearchBox};
use crate::propagation::{delta_closed_form_from, ErrorAngles, Target};

/// Largest float below `2 pi`; upper edge of the half-open search box.
pub const ANGLE_UPPER: f64 = TAU.next_down();

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExtremumKind {
    pub mode: Mode,
    pub target: Target,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumPoint {
    pub err: ErrorAngles,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumResult {
    pub kind: ExtremumKind,
    pub value: f64,
    pub at: ExtremumPoint,
    pub base_vector: CartesianVector,
    pub angles: EulerAngles,
    pub num_starts: usize,
    pub seed: u64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub num_starts: usize,
    pub seed: u64,
    pub local: NelderMeadOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            num_starts: 1000,
            seed: 42,
            local: NelderMeadOptions {
                initial_step: 0.5,
                f_tol: 1e-10,
                max_evals: 2000,
            },
        }
    }
}

impl SearchOptions {
    pub fn with_starts(mut self, num_starts: usize, seed: u64) -> Self {
        self.num_starts = num_starts;
        self.seed = seed;
        self
    }
}

/// `[0, 2 pi)` in each of `(eps_x, eps_y, eps_z, t)`.
pub fn full_box() -> SearchBox<4> {
    SearchBox::uniform(0.0, ANGLE_UPPER)
}

/// Multi-start search for the extreme discrepancy over `[0, 2 pi)^4`.
pub fn find_extremum(
    target: Target,
    mode: Mode,
    base_vector: CartesianVector,
    angles: EulerAngles,
    num_starts: usize,
    seed: u64,
) -> Result<ExtremumResult> {
    let opts = SearchOptions::default().with_starts(num_starts, seed);
    find_extremum_in(target, mode, base_vector, angles, &full_box(), &opts)
}

/// [`find_extremum`] over an explicit `(eps_x, eps_y, eps_z, t)` box.
pub fn find_extremum_in(
    target: Target,
    mode: Mode,
    base_vector: CartesianVector,
    angles: EulerAngles,
    bounds: &SearchBox<4>,
    opts: &SearchOptions,
) -> Result<ExtremumResult> {
    base_vector.ensure_unit(VALIDATION_TOL)?;
    if !angles.is_finite() {
        return Err(Error::NonFinite("rotation angles"));
    }
    if opts.num_starts == 0 {
        return Err(Error::InvalidArgument(
            "at least one start is required".into(),
        ));
    }
    let delta = |x: &[f64; 4]| {
        let err = ErrorAngles::new(x[0], x[1], x[2]);
        target.pick(delta_closed_form_from(base_vector, err, x[3], angles))
    };
    let sign = match mode {
        Mode::Max => -1.0,
        Mode::Min => 1.0,
    };
    let run = multistart_minimize(
        |x| sign * delta(x),
        bounds,
        opts.num_starts,
        opts.seed,
        &opts.local,
    )
    .ok_or_else(|| Error::InvalidArgument("no start produced a finite value".into()))?;
    let x = run.best.x;
    Ok(ExtremumResult {
        kind: ExtremumKind { mode, target },
        value: delta(&x),
        at: ExtremumPoint {
            err: ErrorAngles::new(x[0], x[1], x[2]),
            t: x[3],
        },
        base_vector,
        angles,
        num_starts: opts.num_starts,
        seed: opts.seed,
        evaluations: run.total_evals,
    })
}
