use std::f64::consts::PI;

use crate::bloch::{CartesianVector, EulerAngles};
use crate::error::Result;
use crate::propagation::{period, ClosedForm, ErrorAngles, Target};
use crate::quadrature::{integrate, QuadratureOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeAverage {
    pub value: f64,
    pub period: f64,
    /// Quadrature error bound on the averaged value.
    pub error_estimate: f64,
}

/// Mean discrepancy over one period for base vector `(1, 0, 0)`.
pub fn time_averaged_error(target: Target, err: ErrorAngles, angles: EulerAngles) -> Result<f64> {
    let model = ClosedForm::new(CartesianVector::X, err, angles)?;
    Ok(time_averaged_error_with(&model, target, &QuadratureOptions::default())?.value)
}

pub fn time_averaged_error_with(
    model: &ClosedForm,
    target: Target,
    opts: &QuadratureOptions,
) -> Result<TimeAverage> {
    let t = period(model.rates)?;
    let integral = integrate(|s| model.target(target, s), 0.0, t, opts);
    Ok(TimeAverage {
        value: (integral.value / t).clamp(0.0, PI),
        period: t,
        error_estimate: integral.error_estimate / t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn zero_error_averages_to_zero() {
        for target in [Target::Azimuth, Target::Elevation] {
            assert_eq!(
                time_averaged_error(target, ErrorAngles::ZERO, EulerAngles::uniform(1.0)).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn degenerate_rotation_is_an_error() {
        let r = time_averaged_error(
            Target::Elevation,
            ErrorAngles::new(0.0, 0.2, 0.0),
            EulerAngles::ZERO,
        );
        assert_eq!(r, Err(Error::DegenerateRotation));
    }

    #[test]
    fn matches_midpoint_oracle() {
        let err = ErrorAngles::new(0.0, 0.2, 0.0);
        let angles = EulerAngles::uniform(1.0);
        let model = ClosedForm::new(CartesianVector::X, err, angles).unwrap();
        let t = period(angles).unwrap();
        for target in [Target::Azimuth, Target::Elevation] {
            let n = 200_000;
            let h = t / n as f64;
            let oracle = (0..n)
                .map(|i| model.target(target, (i as f64 + 0.5) * h))
                .sum::<f64>()
                / n as f64;
            let got = time_averaged_error(target, err, angles).unwrap();
            assert!((got - oracle).abs() < 1e-6, "{target:?}: {got} vs {oracle}");
        }
    }

    #[test]
    fn average_is_bounded_by_sampled_maximum() {
        let angles = EulerAngles::new(0.7, 1.9, 2.2);
        let err = ErrorAngles::new(0.5, 2.5, 4.0);
        let model = ClosedForm::new(CartesianVector::X, err, angles).unwrap();
        let t = period(angles).unwrap();
        for target in [Target::Azimuth, Target::Elevation] {
            let max = (0..2000)
                .map(|i| model.target(target, t * i as f64 / 2000.0))
                .fold(0.0, f64::max);
            let avg = time_averaged_error(target, err, angles).unwrap();
            assert!(avg <= max && avg >= 0.0);
        }
    }
}
