//! Continuous-time limit of repeated small Euler rotations.
//!
//! For rates `(phi, theta, psi)` the limit `S_P(t)` is the one-parameter
//! rotation group `exp(t J)` with
//!
//! ```text
//!     [  0      -(phi+psi)  theta ]
//! J = [ phi+psi     0        0    ]
//!     [ -theta      0        0    ]
//! ```
//!
//! i.e. a rotation about `u = (0, theta, phi + psi)` at angular speed
//! `omega = |u|`. `S_P` is the limit of the column-action matrices
//! `S(a t / s)^T`, so it acts on column vectors: `w(t) = S_P(t) v`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::bloch::EulerAngles;
use crate::error::{Error, Result};
use crate::rotations::{euler_matrix, RotationMatrix3};

/// Antisymmetric 3x3 matrix generating a rotation group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator3(pub [[f64; 3]; 3]);

impl Generator3 {
    /// `v` such that `J x = v cross x`.
    pub fn axis_vector(&self) -> [f64; 3] {
        let m = &self.0;
        [m[2][1], m[0][2], m[1][0]]
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let m = &self.0;
        let mut r: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                r = r.max((m[i][j] + m[j][i]).abs());
            }
        }
        r
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }
}

/// Angular speed `sqrt(theta^2 + (phi + psi)^2)` of the limit rotation.
pub fn angular_speed(angles: EulerAngles) -> f64 {
    angles.theta.hypot(angles.phi + angles.psi)
}

pub fn generator(angles: EulerAngles) -> Generator3 {
    let p = angles.phi + angles.psi;
    let th = angles.theta;
    Generator3([[0.0, -p, th], [p, 0.0, 0.0], [-th, 0.0, 0.0]])
}

/// `{0, +i omega, -i omega}`.
pub fn generator_eigenvalues(angles: EulerAngles) -> [Complex64; 3] {
    let w = angular_speed(angles);
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, w),
        Complex64::new(0.0, -w),
    ]
}

/// Recurrence time `2 pi / omega` of the discrepancy curves.
pub fn period(angles: EulerAngles) -> Result<f64> {
    if !angles.is_finite() {
        return Err(Error::NonFinite("rotation angles"));
    }
    let w = angular_speed(angles);
    if w == 0.0 {
        return Err(Error::DegenerateRotation);
    }
    Ok(TAU / w)
}

/// `sin(x) / x`, accurate near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `(1 - cos x) / x^2`, accurate near zero.
fn versinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        0.5 - x2 / 24.0 + x2 * x2 / 720.0
    } else {
        let h = (x / 2.0).sin() / x;
        2.0 * h * h
    }
}

/// The limit matrix evaluated in real trigonometric form.
///
/// The hyperbolic functions of `t sqrt(-omega^2)` become `cos(omega t)` and
/// `sin(omega t) / omega`; the `1/omega` and `1/omega^2` factors are folded
/// into `sinc`-type helpers so that `omega -> 0` is continuous.
pub fn sp_general(t: f64, angles: EulerAngles) -> RotationMatrix3 {
    let p = angles.phi + angles.psi;
    let th = angles.theta;
    let w = th.hypot(p);
    if w == 0.0 {
        // J = 0
        return RotationMatrix3::IDENTITY;
    }
    let x = w * t;
    let c = x.cos();
    let f1 = t * sinc(x);
    let f2 = t * t * versinc(x);
    RotationMatrix3([
        [c, -p * f1, th * f1],
        [p * f1, 1.0 - p * p * f2, th * p * f2],
        [-th * f1, th * p * f2, 1.0 - th * th * f2],
    ])
}

/// The explicit rate-(1,1,1) limit matrix, `omega = sqrt(5)`.
pub fn sp_special(t: f64) -> RotationMatrix3 {
    let r5 = 5f64.sqrt();
    let (s, c) = (r5 * t).sin_cos();
    RotationMatrix3([
        [c, -2.0 * s / r5, s / r5],
        [2.0 * s / r5, (4.0 * c + 1.0) / 5.0, -2.0 / 5.0 * (c - 1.0)],
        [-s / r5, -2.0 / 5.0 * (c - 1.0), (c + 4.0) / 5.0],
    ])
}

/// Frobenius gap between `s` finite column-action steps of `angles t / s`
/// and the closed-form limit at `t`.
///
/// Returns `f64::NAN` for `s = 0`.
pub fn limit_convergence_check(t: f64, angles: EulerAngles, s: u64) -> f64 {
    if s == 0 {
        return f64::NAN;
    }
    let step = euler_matrix(angles.scaled(t / s as f64)).transpose();
    step.pow(s).frobenius_distance(&sp_general(t, angles))
}

/// `exp(t J)` by Rodrigues' formula on the axis read off `j`.
///
/// Only the antisymmetric part of `j` is used.
pub fn matrix_exp_generator(j: &Generator3, t: f64) -> RotationMatrix3 {
    let m = &j.0;
    let u = [
        0.5 * (m[2][1] - m[1][2]),
        0.5 * (m[0][2] - m[2][0]),
        0.5 * (m[1][0] - m[0][1]),
    ];
    let speed = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    if speed == 0.0 {
        return RotationMatrix3::IDENTITY;
    }
    let n = [u[0] / speed, u[1] / speed, u[2] / speed];
    let (s, c) = (speed * t).sin_cos();
    let k = 1.0 - c;
    let mut r = [[0.0; 3]; 3];
    for (a, row) in r.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = k * n[a] * n[b] + if a == b { c } else { 0.0 };
        }
    }
    r[0][1] -= s * n[2];
    r[1][0] += s * n[2];
    r[0][2] += s * n[1];
    r[2][0] -= s * n[1];
    r[1][2] -= s * n[0];
    r[2][1] += s * n[0];
    RotationMatrix3(r)
}
