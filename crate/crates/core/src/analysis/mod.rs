//! Extrema, time averages, numeric periods and the built-in case studies.

mod average;
mod cases;
mod extremum;
mod period;

pub use average::{time_averaged_error, time_averaged_error_with, TimeAverage};
pub use cases::{builtin_cases, resolve_assignment, run_case_study, CaseReport, CaseSpec};
pub use extremum::{
    find_extremum, find_extremum_in, full_box, ExtremumKind, ExtremumPoint, ExtremumResult, Mode,
    SearchOptions, ANGLE_UPPER,
};
pub use period::{estimate_period, estimate_period_numeric, PeriodEstimate};
