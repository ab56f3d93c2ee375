//! Bloch-sphere coordinates, the Pauli-matrix form of a qubit, and wrapped
//! angle arithmetic.
//!
//! Spherical coordinates follow ISO 80000-2: `theta_el` is the polar angle
//! measured from +z in `[0, pi]`, `phi_az` the azimuth from +x in `(-pi, pi]`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for unit-norm and Hermiticity preconditions.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Below this `hypot(x, y)` a vector sits on the z axis and its azimuth is
/// pinned to 0.
pub const POLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CartesianVector {
    pub const X: Self = Self::new(1.0, 0.0, 0.0);
    pub const Y: Self = Self::new(0.0, 1.0, 0.0);
    pub const Z: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// Checks that the vector lies on the unit sphere within `tol`.
    pub fn ensure_unit(self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NormViolation {
                norm,
                tolerance: tol,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalCoords {
    pub r: f64,
    pub theta_el: f64,
    pub phi_az: f64,
}

/// A qubit written as `q . sigma`, a 2x2 Hermitian traceless matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl QubitMatrix {
    pub fn from_rows(rows: [[Complex64; 2]; 2]) -> Self {
        Self {
            m11: rows[0][0],
            m12: rows[0][1],
            m21: rows[1][0],
            m22: rows[1][1],
        }
    }

    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        [[self.m11, self.m12], [self.m21, self.m22]]
    }

    /// Largest violation of `m12 = conj(m21)`, real diagonal and zero trace.
    pub fn hermitian_traceless_residual(&self) -> f64 {
        (self.m12 - self.m21.conj())
            .norm()
            .max(self.m11.im.abs())
            .max(self.m22.im.abs())
            .max((self.m11 + self.m22).norm())
    }
}

/// Euler rotation triple `(phi, theta, psi)` in radians, z-y-z order.
///
/// No range is enforced; callers routinely use values anywhere in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

impl EulerAngles {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);

    pub const fn new(phi: f64, theta: f64, psi: f64) -> Self {
        Self { phi, theta, psi }
    }

    pub fn uniform(angle: f64) -> Self {
        Self::new(angle, angle, angle)
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self::new(self.phi * factor, self.theta * factor, self.psi * factor)
    }

    pub fn is_finite(self) -> bool {
        self.phi.is_finite() && self.theta.is_finite() && self.psi.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.phi, self.theta, self.psi]
    }
}

pub fn cartesian_to_spherical(v: CartesianVector) -> SphericalCoords {
    let hxy = v.x.hypot(v.y);
    let r = hxy.hypot(v.z);
    let theta_el = hxy.atan2(v.z);
    let phi_az = if hxy < POLE_EPS { 0.0 } else { v.y.atan2(v.x) };
    SphericalCoords {
        r,
        theta_el,
        phi_az,
    }
}

pub fn spherical_to_cartesian(s: SphericalCoords) -> CartesianVector {
    let (sin_t, cos_t) = s.theta_el.sin_cos();
    let (sin_p, cos_p) = s.phi_az.sin_cos();
    CartesianVector::new(s.r * sin_t * cos_p, s.r * sin_t * sin_p, s.r * cos_t)
}

/// `M = x sigma1 + y sigma2 + z sigma3 = [[z, x - iy], [x + iy, -z]]`.
pub fn qubit_to_matrix(v: CartesianVector) -> Result<QubitMatrix> {
    v.ensure_unit(VALIDATION_TOL)?;
    Ok(QubitMatrix {
        m11: Complex64::new(v.z, 0.0),
        m12: Complex64::new(v.x, -v.y),
        m21: Complex64::new(v.x, v.y),
        m22: Complex64::new(-v.z, 0.0),
    })
}

pub fn matrix_to_cartesian(m: &QubitMatrix) -> Result<CartesianVector> {
    let residual = m.hermitian_traceless_residual();
    if !(residual <= VALIDATION_TOL) {
        return Err(Error::NotHermitian { residual });
    }
    let two = Complex64::new(2.0, 0.0);
    let q1 = ((m.m12 + m.m21) / two).re;
    let q2 = ((m.m21 - m.m12) / Complex64::new(0.0, 2.0)).re;
    let q3 = m.m11.re;
    Ok(CartesianVector::new(q1, q2, q3))
}

/// Shorter arc between two angles on the circle, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(TAU);
    d.min(TAU - d).clamp(0.0, PI)
}
