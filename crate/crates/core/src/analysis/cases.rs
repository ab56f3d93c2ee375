use serde::Serialize;
use std::f64::consts::{E, PI};

use super::extremum::{find_extremum_in, ExtremumResult, Mode, SearchOptions, ANGLE_UPPER};
use super::period::estimate_period;
use crate::bloch::{CartesianVector, EulerAngles, VALIDATION_TOL};
use crate::error::{Error, Result};
use crate::optimize::SearchBox;
use crate::propagation::{period, ClosedForm, ErrorAngles, ErrorSeries, Target};

const SERIES_SAMPLES: usize = 400;

/// One fixed-rate experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSpec {
    pub label: String,
    /// Rotation rates `(phi, theta, psi)`.
    pub angles: EulerAngles,
    pub base_vector: CartesianVector,
    /// Box for `(eps_x, eps_y, eps_z)`; time always spans `[0, 2 pi)`.
    #[serde(skip)]
    pub err_search: SearchBox<3>,
    /// Error used for the numeric period and the plotted series.
    pub probe_err: ErrorAngles,
    /// Period the rates were chosen to produce, if any.
    pub stated_period: Option<f64>,
}

impl CaseSpec {
    pub fn new(label: impl Into<String>, angles: EulerAngles) -> Result<Self> {
        if !angles.is_finite() {
            return Err(Error::NonFinite("rotation angles"));
        }
        if angles.to_array().iter().all(|&a| a == 0.0) {
            return Err(Error::DegenerateRotation);
        }
        Ok(Self {
            label: label.into(),
            angles,
            base_vector: CartesianVector::X,
            err_search: SearchBox::uniform(0.0, ANGLE_UPPER),
            probe_err: ErrorAngles::new(0.0, 0.2, 0.0),
            stated_period: None,
        })
    }

    /// Spec whose rates are the permutation of `multiset` with period
    /// `stated_period`.
    pub fn from_multiset(
        label: impl Into<String>,
        multiset: [f64; 3],
        stated_period: f64,
    ) -> Result<Self> {
        let angles = resolve_assignment(multiset, stated_period).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no ordering of {multiset:?} has period {stated_period}"
            ))
        })?;
        let mut spec = Self::new(label, angles)?;
        spec.stated_period = Some(stated_period);
        Ok(spec)
    }
}

/// First permutation `(phi, theta, psi)` of `multiset` whose analytic period
/// equals `target` to within `1e-12` relative.
pub fn resolve_assignment(multiset: [f64; 3], target: f64) -> Option<EulerAngles> {
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    ORDERS.iter().find_map(|o| {
        let a = EulerAngles::new(multiset[o[0]], multiset[o[1]], multiset[o[2]]);
        let t = period(a).ok()?;
        ((t - target).abs() <= 1e-12 * target).then_some(a)
    })
}

/// The seven built-in fixed-rate cases.
pub fn builtin_cases() -> Vec<CaseSpec> {
    let table: [(&str, [f64; 3], f64); 7] = [
        ("case1-sub1", [1.0, 2.0, 3.0], (2.0f64 / 13.0).sqrt() * PI),
        ("case1-sub2", [3.0, 2.0, 1.0], 2f64.sqrt() * PI / 3.0),
        ("case2-sub1", [1.0, 1.0, 2.0], (2.0f64 / 5.0).sqrt() * PI),
        ("case2-sub2", [2.0, 1.0, 1.0], PI / 2f64.sqrt()),
        (
            "case3",
            [PI, E, 3.0],
            2.0 * PI / (PI * PI + (E + 3.0).powi(2)).sqrt(),
        ),
        (
            "case4-sub1",
            [1.0, 1.0, PI],
            2.0 * PI / (1.0 + (PI + 1.0).powi(2)).sqrt(),
        ),
        (
            "case4-sub2",
            [PI, 1.0, 1.0],
            2.0 * PI / (PI * PI + 4.0).sqrt(),
        ),
    ];
    table
        .iter()
        .map(|(label, set, t)| {
            CaseSpec::from_multiset(*label, *set, *t).expect("built-in cases resolve")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub angles: EulerAngles,
    pub stated_period: Option<f64>,
    pub analytic_period: f64,
    pub numeric_period: f64,
    pub max_az: ExtremumResult,
    pub max_el: ExtremumResult,
    pub min_az: ExtremumResult,
    pub min_el: ExtremumResult,
    /// One period of the probe discrepancy.
    pub series: ErrorSeries,
}

pub fn run_case_study(spec: &CaseSpec, opts: &SearchOptions) -> Result<CaseReport> {
    spec.base_vector.ensure_unit(VALIDATION_TOL)?;
    let analytic_period = period(spec.angles)?;
    let model = ClosedForm::new(spec.base_vector, spec.probe_err, spec.angles)?;
    let numeric_period = estimate_period(&model, Target::Elevation)?.period;

    let b = &spec.err_search;
    let bounds = SearchBox::new(
        [b.lower[0], b.lower[1], b.lower[2], 0.0],
        [b.upper[0], b.upper[1], b.upper[2], ANGLE_UPPER],
    );
    let search =
        |target, mode| find_extremum_in(target, mode, spec.base_vector, spec.angles, &bounds, opts);

    Ok(CaseReport {
        label: spec.label.clone(),
        angles: spec.angles,
        stated_period: spec.stated_period,
        analytic_period,
        numeric_period,
        max_az: search(Target::Azimuth, Mode::Max)?,
        max_el: search(Target::Elevation, Mode::Max)?,
        min_az: search(Target::Azimuth, Mode::Min)?,
        min_el: search(Target::Elevation, Mode::Min)?,
        series: ErrorSeries::sample_fn(0.0, analytic_period, SERIES_SAMPLES, |t| model.at(t))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_assignments() {
        let cases = builtin_cases();
        assert_eq!(cases.len(), 7);
        let expect = [
            (2.0, 1.0, 3.0),
            (2.0, 3.0, 1.0),
            (1.0, 1.0, 2.0),
            (1.0, 2.0, 1.0),
            (E, PI, 3.0),
            (1.0, 1.0, PI),
            (1.0, PI, 1.0),
        ];
        for (c, (p, th, s)) in cases.iter().zip(expect) {
            // only theta and phi + psi fix the period
            assert_eq!(c.angles.theta, th, "{}", c.label);
            assert!(
                (c.angles.phi + c.angles.psi - p - s).abs() < 1e-15,
                "{}",
                c.label
            );
        }
    }

    #[test]
    fn unresolvable_multiset_is_rejected() {
        assert!(resolve_assignment([1.0, 2.0, 3.0], 1.0).is_none());
        assert!(CaseSpec::from_multiset("x", [1.0, 2.0, 3.0], 1.0).is_err());
        assert!(CaseSpec::new("zero", EulerAngles::ZERO).is_err());
    }

    #[test]
    fn small_case_run() {
        let spec = &builtin_cases()[3];
        let r = run_case_study(spec, &SearchOptions::default().with_starts(24, 3)).unwrap();
        assert!((r.numeric_period - r.analytic_period).abs() < 1e-6 * r.analytic_period);
        assert!((r.analytic_period - spec.stated_period.unwrap()).abs() < 1e-12);
        assert_eq!(r.series.len(), 400);
        for e in [&r.max_az, &r.max_el, &r.min_az, &r.min_el] {
            assert!((0.0..=PI).contains(&e.value));
        }
        assert!(r.min_el.value <= r.max_el.value);
    }
}
