//! Error propagation between a clean and a perturbed qubit.
//!
//! Both vectors are rotated synchronously and compared through their
//! wrapped azimuth and elevation gaps `(delta_az, delta_el)`.

mod limit;
mod simulate;

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub use limit::{
    angular_speed, generator, generator_eigenvalues, limit_convergence_check, matrix_exp_generator,
    period, sp_general, sp_special, Generator3,
};
pub use simulate::{closed_form_step, simulate, simulate_with, Pipeline};

use crate::bloch::{angle_distance, cartesian_to_spherical, CartesianVector, EulerAngles};
use crate::error::{Error, Result};
use crate::rotations::{euler_matrix, rotate_euler};

/// Euler-angle perturbation `(eps_x, eps_y, eps_z)` applied to the base vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorAngles {
    pub eps_x: f64,
    pub eps_y: f64,
    pub eps_z: f64,
}

impl ErrorAngles {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    pub const fn new(eps_x: f64, eps_y: f64, eps_z: f64) -> Self {
        Self {
            eps_x,
            eps_y,
            eps_z,
        }
    }

    pub fn as_euler(self) -> EulerAngles {
        EulerAngles::new(self.eps_x, self.eps_y, self.eps_z)
    }

    /// `v . S(eps_x, eps_y, eps_z)`.
    pub fn perturb(self, v: CartesianVector) -> CartesianVector {
        rotate_euler(v, &euler_matrix(self.as_euler()))
    }
}

/// Which discrepancy a routine looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Azimuth,
    Elevation,
}

impl Target {
    pub fn pick(self, pair: (f64, f64)) -> f64 {
        match self {
            Target::Azimuth => pair.0,
            Target::Elevation => pair.1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Target::Azimuth => "azimuth",
            Target::Elevation => "elevation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub delta_az: f64,
    pub delta_el: f64,
}

/// Sampled discrepancy trajectory with strictly increasing `t`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct ErrorSeries {
    samples: Vec<Sample>,
}

impl ErrorSeries {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        for pair in samples.windows(2) {
            if !(pair[1].t > pair[0].t) {
                return Err(Error::InvalidArgument(format!(
                    "sample times must increase strictly ({} then {})",
                    pair[0].t, pair[1].t
                )));
            }
        }
        for s in &samples {
            let ok = |d: f64| (0.0..=PI).contains(&d);
            if !ok(s.delta_az) || !ok(s.delta_el) {
                return Err(Error::InvalidArgument(format!(
                    "discrepancy outside [0, pi] at t = {}",
                    s.t
                )));
            }
        }
        Ok(Self { samples })
    }

    /// Samples `f` on `n` evenly spaced points of `[start, end)`.
    pub fn sample_fn(
        start: f64,
        end: f64,
        n: usize,
        mut f: impl FnMut(f64) -> (f64, f64),
    ) -> Result<Self> {
        let h = (end - start) / n as f64;
        let samples = (0..n)
            .map(|i| {
                let t = start + h * i as f64;
                let (delta_az, delta_el) = f(t);
                Sample {
                    t,
                    delta_az,
                    delta_el,
                }
            })
            .collect();
        Self::new(samples)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<&Sample> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// Largest per-cell gap in the discrepancy columns; `None` on length mismatch.
    pub fn max_delta_gap(&self, other: &ErrorSeries) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        Some(
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| {
                    (a.delta_az - b.delta_az)
                        .abs()
                        .max((a.delta_el - b.delta_el).abs())
                })
                .fold(0.0, f64::max),
        )
    }
}

/// `(delta_az, delta_el)` between two nonzero vectors.
pub fn delta_pair(w: CartesianVector, w_err: CartesianVector) -> Result<(f64, f64)> {
    let a = cartesian_to_spherical(w);
    let b = cartesian_to_spherical(w_err);
    if !(a.r > 0.0) || !(b.r > 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok((
        angle_distance(b.phi_az, a.phi_az),
        angle_distance(b.theta_el, a.theta_el),
    ))
}

/// Same as [`delta_pair`] for vectors already known to be unit length.
fn delta_unit(w: CartesianVector, w_err: CartesianVector) -> (f64, f64) {
    let a = cartesian_to_spherical(w);
    let b = cartesian_to_spherical(w_err);
    (
        angle_distance(b.phi_az, a.phi_az),
        angle_distance(b.theta_el, a.theta_el),
    )
}

/// Closed-form discrepancy model: base `v`, perturbed `v . S(eps)`, both
/// carried by the limit rotation `S_P(t)` at the given rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub base: CartesianVector,
    pub perturbed: CartesianVector,
    pub rates: EulerAngles,
}

impl ClosedForm {
    pub fn new(base: CartesianVector, err: ErrorAngles, rates: EulerAngles) -> Result<Self> {
        base.ensure_unit(crate::bloch::VALIDATION_TOL)?;
        if !rates.is_finite() || !err.as_euler().is_finite() {
            return Err(Error::NonFinite("closed-form parameters"));
        }
        Ok(Self {
            base,
            perturbed: err.perturb(base),
            rates,
        })
    }

    pub fn at(&self, t: f64) -> (f64, f64) {
        let s = sp_general(t, self.rates);
        delta_unit(s.apply_column(self.base), s.apply_column(self.perturbed))
    }

    pub fn target(&self, target: Target, t: f64) -> f64 {
        target.pick(self.at(t))
    }
}

/// `(delta_az, delta_el)` at time `t` for base vector `(1, 0, 0)`.
pub fn delta_closed_form(err: ErrorAngles, t: f64, rates: EulerAngles) -> (f64, f64) {
    delta_closed_form_from(CartesianVector::X, err, t, rates)
}

/// [`delta_closed_form`] with an explicit base vector, assumed unit length.
pub fn delta_closed_form_from(
    base: CartesianVector,
    err: ErrorAngles,
    t: f64,
    rates: EulerAngles,
) -> (f64, f64) {
    let perturbed = err.perturb(base);
    let s = sp_general(t, rates);
    delta_unit(s.apply_column(base), s.apply_column(perturbed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, TAU};

    #[test]
    fn delta_pair_examples() {
        let v = CartesianVector::new(0.3, -0.4, 0.866);
        assert_eq!(delta_pair(v, v).unwrap(), (0.0, 0.0));
        let (az, el) = delta_pair(CartesianVector::X, CartesianVector::Y).unwrap();
        assert!((az - FRAC_PI_2).abs() < 1e-15 && el == 0.0);
        let tilted = ErrorAngles::new(0.0, 0.2, 0.0).perturb(CartesianVector::X);
        let (az, el) = delta_pair(CartesianVector::X, tilted).unwrap();
        assert_eq!(az, 0.0);
        assert!((el - 0.2).abs() < 1e-15);
    }

    #[test]
    fn delta_pair_rejects_zero() {
        let zero = CartesianVector::new(0.0, 0.0, 0.0);
        assert_eq!(delta_pair(zero, CartesianVector::X), Err(Error::ZeroVector));
        assert_eq!(delta_pair(CartesianVector::X, zero), Err(Error::ZeroVector));
    }

    #[test]
    fn closed_form_zero_error_vanishes() {
        for t in [0.0, 0.4, 2.0, 7.5] {
            assert_eq!(
                delta_closed_form(ErrorAngles::ZERO, t, EulerAngles::uniform(1.0)),
                (0.0, 0.0)
            );
        }
    }

    #[test]
    fn closed_form_initial_value_is_initial_discrepancy() {
        let err = ErrorAngles::new(0.4, 1.1, 2.9);
        let rates = EulerAngles::new(0.3, 1.7, 0.5);
        let v = CartesianVector::X;
        let expected = delta_pair(v, err.perturb(v)).unwrap();
        assert_eq!(delta_closed_form(err, 0.0, rates), expected);
        let t = period(rates).unwrap();
        for k in 1..=5 {
            let (az, el) = delta_closed_form(err, k as f64 * t, rates);
            assert!((az - expected.0).abs() < 1e-9 && (el - expected.1).abs() < 1e-9);
        }
    }

    #[test]
    fn model_matches_free_function() {
        let err = ErrorAngles::new(1.0, 2.0, 3.0);
        let rates = EulerAngles::uniform(1.0);
        let m = ClosedForm::new(CartesianVector::Z, err, rates).unwrap();
        for t in [0.0, 1.3, 4.4] {
            assert_eq!(
                m.at(t),
                delta_closed_form_from(CartesianVector::Z, err, t, rates)
            );
        }
        assert!(ClosedForm::new(CartesianVector::new(2.0, 0.0, 0.0), err, rates).is_err());
    }

    #[test]
    fn series_validation() {
        let s = |t, az, el| Sample {
            t,
            delta_az: az,
            delta_el: el,
        };
        assert!(ErrorSeries::new(vec![s(0.0, 0.0, 0.0), s(1.0, 3.0, 0.1)]).is_ok());
        assert!(ErrorSeries::new(vec![s(0.0, 0.0, 0.0), s(0.0, 0.0, 0.0)]).is_err());
        assert!(ErrorSeries::new(vec![s(0.0, 3.5, 0.0)]).is_err());
        assert!(ErrorSeries::new(vec![s(0.0, 0.0, -0.1)]).is_err());
        let series = ErrorSeries::sample_fn(0.0, TAU, 10, |t| (t / 4.0, 0.0)).unwrap();
        assert_eq!(series.len(), 10);
        assert!((series.last().unwrap().t - 0.9 * TAU).abs() < 1e-12);
    }
}
