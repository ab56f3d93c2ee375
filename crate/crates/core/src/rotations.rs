//! The two rotation pipelines.
//!
//! * SU(2): a qubit matrix `M = q . sigma` is conjugated, `M' = U M U^dagger`.
//! * Euler matrix: the Cartesian vector is right-multiplied as a row vector,
//!   `q' = q . S(phi, theta, psi)` with `S = S3(psi) S2(theta) S1(phi)`.
//!
//! Conjugation by `U(phi, theta, psi)` and right-multiplication by
//! `S(phi, theta, psi)` are the same map on the sphere. Equivalently, `S^T`
//! is the usual active rotation `Rz(phi) Ry(theta) Rz(psi)` acting on column
//! vectors.

use std::ops::Mul;

use num_complex::Complex64;

use crate::bloch::{
    matrix_to_cartesian, qubit_to_matrix, CartesianVector, EulerAngles, QubitMatrix, VALIDATION_TOL,
};
use crate::error::{Error, Result};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// A 2x2 special unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix(pub [[C; 2]; 2]);

impl Su2Matrix {
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> C {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Max of `|U^dagger U - I|` entries and `|det U - 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.adjoint() * *self;
        let mut r = (self.det() - ONE).norm();
        for (i, row) in p.0.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                r = r.max((z - target).norm());
            }
        }
        r
    }

    /// Largest entry gap after removing the best global phase.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        // <A, B> = tr(A^dagger B); the optimal phase aligns it to the real axis
        let inner = (self.adjoint() * *other).trace();
        let phase = if inner.norm() > 0.0 {
            inner / inner.norm()
        } else {
            ONE
        };
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] * phase - other.0[i][j]).norm());
            }
        }
        d
    }

    pub fn trace(&self) -> C {
        self.0[0][0] + self.0[1][1]
    }

    fn conjugate(&self, m: &QubitMatrix) -> QubitMatrix {
        let q = Su2Matrix(m.rows());
        let r = *self * q * self.adjoint();
        QubitMatrix::from_rows(r.0)
    }
}

impl Mul for Su2Matrix {
    type Output = Su2Matrix;

    fn mul(self, rhs: Su2Matrix) -> Su2Matrix {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Su2Matrix(out)
    }
}

/// A real 3x3 matrix; when produced by this crate it is a proper rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix3(pub [[f64; 3]; 3]);

impl RotationMatrix3 {
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m[j][i];
            }
        }
        Self(t)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Max of `|S^T S - I|` entries and `|det S - 1|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let p = self.transpose() * *self;
        let mut r = (self.det() - 1.0).abs();
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                r = r.max((p.0[i][j] - target).abs());
            }
        }
        r
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += (self.0[i][j] - other.0[i][j]).powi(2);
            }
        }
        s.sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        d
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Row-vector action `v . S`.
    pub fn apply_row(&self, v: CartesianVector) -> CartesianVector {
        let m = &self.0;
        CartesianVector::new(
            v.x * m[0][0] + v.y * m[1][0] + v.z * m[2][0],
            v.x * m[0][1] + v.y * m[1][1] + v.z * m[2][1],
            v.x * m[0][2] + v.y * m[1][2] + v.z * m[2][2],
        )
    }

    /// Column-vector action `S . v`.
    pub fn apply_column(&self, v: CartesianVector) -> CartesianVector {
        let m = &self.0;
        CartesianVector::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

impl Mul for RotationMatrix3 {
    type Output = RotationMatrix3;

    fn mul(self, rhs: RotationMatrix3) -> RotationMatrix3 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        RotationMatrix3(out)
    }
}

/// Unit rotation axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    nx: f64,
    ny: f64,
    nz: f64,
}

impl Axis {
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        CartesianVector::new(nx, ny, nz).ensure_unit(VALIDATION_TOL)?;
        Ok(Self { nx, ny, nz })
    }

    /// Scales a nonzero direction onto the unit sphere.
    pub fn normalized(v: CartesianVector) -> Result<Self> {
        let n = v.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            nx: v.x / n,
            ny: v.y / n,
            nz: v.z / n,
        })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.nx, self.ny, self.nz]
    }
}

/// `U = e^{-i phi sigma3/2} e^{-i theta sigma2/2} e^{-i psi sigma3/2}`.
pub fn su2_from_euler(angles: EulerAngles) -> Su2Matrix {
    let EulerAngles { phi, theta, psi } = angles;
    let (s, c) = (theta / 2.0).sin_cos();
    let sum = (phi + psi) / 2.0;
    let diff = (phi - psi) / 2.0;
    Su2Matrix([
        [C::from_polar(c, -sum), -C::from_polar(s, -diff)],
        [C::from_polar(s, diff), C::from_polar(c, sum)],
    ])
}

/// `U = sigma0 cos(angle/2) - i (n . sigma) sin(angle/2)`.
pub fn su2_from_axis(axis: Axis, angle: f64) -> Su2Matrix {
    let (s, c) = (angle / 2.0).sin_cos();
    let [nx, ny, nz] = axis.components();
    // -i (n . sigma) = [[-i nz, -i nx - ny], [-i nx + ny, i nz]]
    Su2Matrix([
        [C::new(c, -nz * s), C::new(-ny * s, -nx * s)],
        [C::new(ny * s, -nx * s), C::new(c, nz * s)],
    ])
}

pub fn rotate_su2(v: CartesianVector, u: &Su2Matrix) -> Result<CartesianVector> {
    let m = qubit_to_matrix(v)?;
    matrix_to_cartesian(&u.conjugate(&m))
}

fn s1(a: f64) -> RotationMatrix3 {
    let (s, c) = a.sin_cos();
    RotationMatrix3([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
}

fn s2(a: f64) -> RotationMatrix3 {
    let (s, c) = a.sin_cos();
    RotationMatrix3([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])
}

/// `S(phi, theta, psi) = S3(psi) S2(theta) S1(phi)`, meant for row vectors.
pub fn euler_matrix(angles: EulerAngles) -> RotationMatrix3 {
    // S3 has the same form as S1
    s1(angles.psi) * s2(angles.theta) * s1(angles.phi)
}

pub fn rotate_euler(v: CartesianVector, s: &RotationMatrix3) -> CartesianVector {
    s.apply_row(v)
}
