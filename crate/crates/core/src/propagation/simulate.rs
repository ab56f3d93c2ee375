use serde::{Deserialize, Serialize};

use super::{delta_unit, sp_general, ErrorSeries, Sample};
use crate::bloch::{CartesianVector, EulerAngles, VALIDATION_TOL};
use crate::error::{Error, Result};
use crate::rotations::{euler_matrix, rotate_euler, rotate_su2, su2_from_euler};

/// How the synchronous rotations are carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    /// Conjugate the Pauli-matrix form by `U(step)` at every step.
    Su2,
    /// Right-multiply the row vector by `S(step)` at every step.
    #[default]
    Euler,
    /// Evaluate the limit rotation at `t = i` with the rates returned by
    /// [`closed_form_step`].
    #[serde(rename = "closed")]
    ClosedForm,
}

/// Rates whose limit rotation after unit time equals one finite step.
///
/// One step `S(phi, theta, psi)` acts as the active rotation
/// `Rz(phi) Ry(theta) Rz(psi)` with quaternion
///
/// ```text
/// ( cos(theta/2) cos((phi+psi)/2),
///  -sin(theta/2) sin((phi-psi)/2),
///   sin(theta/2) cos((phi-psi)/2),
///   cos(theta/2) sin((phi+psi)/2) )
/// ```
///
/// The limit family only rotates about axes in the y-z plane, so the step
/// must have a vanishing x component: `theta = 0` or `phi = psi` (mod 2pi).
/// Then `sp_general(i, rates) = (S(step)^T)^i` exactly.
pub fn closed_form_step(step: EulerAngles) -> Result<EulerAngles> {
    if !step.is_finite() {
        return Err(Error::NonFinite("step angles"));
    }
    let (sh, ch) = (step.theta / 2.0).sin_cos();
    let sum = (step.phi + step.psi) / 2.0;
    let diff = (step.phi - step.psi) / 2.0;
    let w = ch * sum.cos();
    let x = -sh * diff.sin();
    let y = sh * diff.cos();
    let z = ch * sum.sin();
    if x.abs() > 1e-12 {
        return Err(Error::OutsideGeneratorFamily {
            phi: step.phi,
            theta: step.theta,
            psi: step.psi,
        });
    }
    let r = y.hypot(z);
    if r == 0.0 {
        return Ok(EulerAngles::ZERO);
    }
    let angle = 2.0 * r.atan2(w);
    let spin = angle * z / r;
    Ok(EulerAngles::new(spin / 2.0, angle * y / r, spin / 2.0))
}

/// Iterated Euler-matrix simulation; sample `i` follows `i` steps.
pub fn simulate(
    v: CartesianVector,
    v_err: CartesianVector,
    step: EulerAngles,
    steps: usize,
) -> Result<ErrorSeries> {
    simulate_with(Pipeline::Euler, v, v_err, step, steps)
}

pub fn simulate_with(
    pipeline: Pipeline,
    v: CartesianVector,
    v_err: CartesianVector,
    step: EulerAngles,
    steps: usize,
) -> Result<ErrorSeries> {
    v.ensure_unit(VALIDATION_TOL)?;
    v_err.ensure_unit(VALIDATION_TOL)?;
    if !step.is_finite() {
        return Err(Error::NonFinite("step angles"));
    }
    let mut samples = Vec::with_capacity(steps + 1);
    let mut push = |i: usize, w: CartesianVector, w_err: CartesianVector| {
        let (delta_az, delta_el) = delta_unit(w, w_err);
        samples.push(Sample {
            t: i as f64,
            delta_az,
            delta_el,
        });
    };
    match pipeline {
        Pipeline::Euler => {
            let s = euler_matrix(step);
            let (mut w, mut w_err) = (v, v_err);
            for i in 0..=steps {
                push(i, w, w_err);
                w = rotate_euler(w, &s);
                w_err = rotate_euler(w_err, &s);
            }
        }
        Pipeline::Su2 => {
            let u = su2_from_euler(step);
            let (mut w, mut w_err) = (v, v_err);
            for i in 0..=steps {
                push(i, w, w_err);
                if i < steps {
                    w = rotate_su2(w, &u)?;
                    w_err = rotate_su2(w_err, &u)?;
                }
            }
        }
        Pipeline::ClosedForm => {
            let rates = closed_form_step(step)?;
            for i in 0..=steps {
                let s = sp_general(i as f64, rates);
                push(i, s.apply_column(v), s.apply_column(v_err));
            }
        }
    }
    ErrorSeries::new(samples)
}
