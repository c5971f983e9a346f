//! Real quaternions, screws, inner automorphisms and the complexification
//! maps onto SU(2) coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::QuatError;
use crate::Vec3;

/// Default absolute tolerance for unit-scale data.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Tolerance on `|axis| - 1` accepted by [`Quaternion::from_axis_angle`] and
/// on `|r| - 1` accepted by [`screw_apply`].
pub const AXIS_TOL: f64 = 1e-9;

/// A real quaternion `q0 + q1 i + q2 j + q3 k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    /// Pure imaginary quaternion carrying a 3-vector.
    pub const fn pure(x: Vec3) -> Self {
        Quaternion::new(0.0, x[0], x[1], x[2])
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    /// Imaginary part as a 3-vector.
    pub fn vector(self) -> Vec3 {
        [self.q1, self.q2, self.q3]
    }

    pub fn conjugate(self) -> Self {
        Quaternion::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Euclidean inner product in R⁴.
    pub fn dot(self, other: Quaternion) -> f64 {
        self.q0 * other.q0 + self.q1 * other.q1 + self.q2 * other.q2 + self.q3 * other.q3
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }

    /// `q* / |q|²`.
    pub fn inverse(self) -> Result<Self, QuatError> {
        let n2 = self.norm_squared();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(QuatError::ZeroQuaternion);
        }
        Ok(self.conjugate().scale(1.0 / n2))
    }

    pub fn normalized(self) -> Result<Self, QuatError> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(QuatError::ZeroQuaternion);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm_squared() - 1.0).abs() <= tol
    }

    /// Euclidean distance in R⁴.
    pub fn distance(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.q0.abs().max(d.q1.abs()).max(d.q2.abs()).max(d.q3.abs())
    }

    /// Integer power by repeated multiplication (`n >= 0`).
    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Quaternion::ONE, |acc, _| acc * self)
    }

    /// Rotation of angle `angle` (radians, SO(3) angle) about the unit `axis`.
    ///
    /// The stored quaternion is `cos(angle/2) + sin(angle/2) axis`, so a
    /// rotation angle θ lands as the half angle θ/2 in the components.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<Self, QuatError> {
        let n = norm3(axis);
        if (n - 1.0).abs() > AXIS_TOL {
            return Err(QuatError::NonUnitAxis { norm: n });
        }
        let (s, c) = (0.5 * angle).sin_cos();
        Ok(Quaternion::new(c, s * axis[0], s * axis[1], s * axis[2]))
    }

    /// `+` branch of the quaternion pair equivalent to the k-j-k Euler
    /// rotation `Rz(alpha) Ry(beta) Rz(gamma)`.
    pub fn from_euler_kjk(e: EulerAngles) -> Self {
        let (sb, cb) = (0.5 * e.beta).sin_cos();
        let (ss, cs) = (0.5 * (e.alpha + e.gamma)).sin_cos();
        let (sd, cd) = (0.5 * (e.gamma - e.alpha)).sin_cos();
        Quaternion::new(cb * cs, sb * sd, sb * cd, cb * ss)
    }

    /// Imaginary part of `r x r⁻¹`.
    pub fn rotate_vector(self, x: Vec3) -> Result<Vec3, QuatError> {
        let inv = self.inverse()?;
        Ok((self * Quaternion::pure(x) * inv).vector())
    }

    /// Rotation matrix whose columns are the images of the cartesian axes.
    pub fn rotation_matrix(self) -> Result<[[f64; 3]; 3], QuatError> {
        let cols = [
            self.rotate_vector([1.0, 0.0, 0.0])?,
            self.rotate_vector([0.0, 1.0, 0.0])?,
            self.rotate_vector([0.0, 0.0, 1.0])?,
        ];
        let mut m = [[0.0; 3]; 3];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..3 {
                m[r][c] = col[r];
            }
        }
        Ok(m)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {}; {})", self.q0, self.q1, self.q2, self.q3)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.q0 - o.q0, self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.q0 * q.q0 - (p.q1 * q.q1 + p.q2 * q.q2 + p.q3 * q.q3),
            p.q0 * q.q1 + q.q0 * p.q1 + (p.q2 * q.q3 - q.q2 * p.q3),
            p.q0 * q.q2 + q.q0 * p.q2 + (p.q3 * q.q1 - q.q3 * p.q1),
            p.q0 * q.q3 + q.q0 * p.q3 + (p.q1 * q.q2 - q.q1 * p.q2),
        )
    }
}

/// Free-function form of the Hamilton product.
pub fn multiply(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// Conjugate, norm and inverse of `q` in one call.
pub fn unary(q: Quaternion) -> Result<(Quaternion, f64, Quaternion), QuatError> {
    Ok((q.conjugate(), q.norm(), q.inverse()?))
}

/// Euler angles of successive rotations about k, j, k (radians, unreduced).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EulerAngles {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        EulerAngles { alpha, beta, gamma }
    }

    /// The rotation matrix `Rz(α) Ry(β) Rz(γ)`; columns are the frame axes.
    pub fn matrix(self) -> [[f64; 3]; 3] {
        let (sa, ca) = self.alpha.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        let (sg, cg) = self.gamma.sin_cos();
        [
            [-sa * sg + ca * cb * cg, -sa * cg - sg * ca * cb, sb * ca],
            [sa * cb * cg + sg * ca, -sa * sg * cb + ca * cg, sa * sb],
            [-sb * cg, sb * sg, cb],
        ]
    }
}

/// Right screw `p ↦ r p` or corrected left screw `p ↦ p r⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScrewKind {
    Right,
    LeftPrime,
}

pub fn screw_apply(kind: ScrewKind, r: Quaternion, p: Quaternion) -> Result<Quaternion, QuatError> {
    let n = r.norm();
    if (n - 1.0).abs() > AXIS_TOL {
        return Err(QuatError::NonUnit { norm: n });
    }
    Ok(match kind {
        ScrewKind::Right => r * p,
        ScrewKind::LeftPrime => p * r.inverse()?,
    })
}

/// A point `(u, v)` of C², the complex image of a quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SU2Coord {
    pub u: Complex64,
    pub v: Complex64,
}

impl SU2Coord {
    pub const fn new(u: Complex64, v: Complex64) -> Self {
        SU2Coord { u, v }
    }

    pub fn from_parts(ure: f64, uim: f64, vre: f64, vim: f64) -> Self {
        SU2Coord::new(Complex64::new(ure, uim), Complex64::new(vre, vim))
    }

    /// `|u|² + |v|²`.
    pub fn norm_squared(self) -> f64 {
        self.u.norm_sqr() + self.v.norm_sqr()
    }

    pub fn scale(self, s: Complex64) -> Self {
        SU2Coord::new(self.u * s, self.v * s)
    }

    /// `|u - u'| + |v - v'|`.
    pub fn distance(self, other: SU2Coord) -> f64 {
        (self.u - other.u).norm() + (self.v - other.v).norm()
    }

    /// The 2×2 quaternionic matrix `[[u, -v*], [v, u*]]`, row-major.
    pub fn quaternionic_matrix(self) -> [[Complex64; 2]; 2] {
        [[self.u, -self.v.conj()], [self.v, self.u.conj()]]
    }

    /// Left action of the quaternionic matrix of `self` on `x`.
    pub fn act_on(self, x: SU2Coord) -> SU2Coord {
        let m = self.quaternionic_matrix();
        SU2Coord::new(m[0][0] * x.u + m[0][1] * x.v, m[1][0] * x.u + m[1][1] * x.v)
    }
}

/// Which complexification turns a quaternion into frame coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrameMap {
    /// `q2c` applied to `q*`: `u = q0 - q3 i`, `v = q2 + q1 i`.
    #[default]
    Canonical,
    /// The variant `u = q0 - q1 i`, `v = q2 + q3 i`, kept for comparison
    /// only. It is not the image of `q*` under `q2c` and does not make the
    /// octahedral forms frame invariants.
    Printed,
}

/// `u = q0 + q3 i`, `v = -(q2 + q1 i)`; products map to quaternionic
/// matrix products: `q2c(p q) = M(p) q2c(q)`.
pub fn to_su2_q2c(q: Quaternion) -> SU2Coord {
    SU2Coord::new(Complex64::new(q.q0, q.q3), Complex64::new(-q.q2, -q.q1))
}

/// Frame coordinates of `q`: `q2c(q*)`, i.e. `u = q0 - q3 i`, `v = q2 + q1 i`.
///
/// Under this map `q` and `q ô` give the same octahedral forms for every
/// `ô` of the binary octahedral group, matching the frame equivalence of
/// [`Quaternion::rotate_vector`].
pub fn to_su2_frame(q: Quaternion) -> SU2Coord {
    to_su2_q2c(q.conjugate())
}

pub fn to_su2_frame_with(q: Quaternion, map: FrameMap) -> SU2Coord {
    match map {
        FrameMap::Canonical => to_su2_frame(q),
        FrameMap::Printed => {
            SU2Coord::new(Complex64::new(q.q0, -q.q1), Complex64::new(q.q2, q.q3))
        }
    }
}

/// Inverse of [`to_su2_frame`]: `q = (Re u, Im v, Re v, -Im u)`.
pub fn from_su2(c: SU2Coord) -> Quaternion {
    Quaternion::new(c.u.re, c.v.im, c.v.re, -c.u.im)
}

pub fn norm3(x: Vec3) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    fn cclose(a: SU2Coord, b: SU2Coord, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn basis_products() {
        use Quaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::I * Q::I, -Q::ONE);
        let q = Q::new(0.3, -1.2, 2.0, 0.5);
        assert_eq!(Q::ONE * q, q);
        assert_eq!(multiply(Q::ONE + Q::I, Q::ONE + Q::J), Q::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn unary_examples() {
        let (c, n, i) = unary(Quaternion::ONE).unwrap();
        assert_eq!((c, n, i), (Quaternion::ONE, 1.0, Quaternion::ONE));
        let (c, n, i) = unary(Quaternion::K).unwrap();
        assert_eq!((c, n, i), (-Quaternion::K, 1.0, -Quaternion::K));
        let (c, n, i) = unary(Quaternion::new(1.0, 1.0, 1.0, 1.0)).unwrap();
        assert_eq!(c, Quaternion::new(1.0, -1.0, -1.0, -1.0));
        assert_eq!(n, 2.0);
        assert_eq!(i, Quaternion::new(0.25, -0.25, -0.25, -0.25));
        assert_eq!(unary(Quaternion::ZERO), Err(QuatError::ZeroQuaternion));
    }

    #[test]
    fn axis_angle_examples() {
        let h = 2f64.sqrt() / 2.0;
        let q = Quaternion::from_axis_angle([0.0, 0.0, 1.0], FRAC_PI_2).unwrap();
        assert!(close(q, Quaternion::new(h, 0.0, 0.0, h), 1e-15));
        assert_eq!(Quaternion::from_axis_angle([1.0, 0.0, 0.0], 0.0).unwrap(), Quaternion::ONE);
        let q = Quaternion::from_axis_angle([1.0, 0.0, 0.0], PI).unwrap();
        assert!(close(q, Quaternion::I, 1e-15));
        assert!(matches!(
            Quaternion::from_axis_angle([1.0, 1.0, 0.0], 1.0),
            Err(QuatError::NonUnitAxis { .. })
        ));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(Quaternion::from_euler_kjk(EulerAngles::default()), Quaternion::ONE);
        let a = 0.7;
        let q = Quaternion::from_euler_kjk(EulerAngles::new(a, 0.0, 0.0));
        assert!(close(q, Quaternion::new((a / 2.0).cos(), 0.0, 0.0, (a / 2.0).sin()), 1e-15));
        let q = Quaternion::from_euler_kjk(EulerAngles::new(0.0, a, 0.0));
        assert!(close(q, Quaternion::new((a / 2.0).cos(), 0.0, (a / 2.0).sin(), 0.0), 1e-15));
    }

    #[test]
    fn euler_quaternion_reproduces_matrix_columns() {
        for &(a, b, g) in &[(0.3, 1.1, -0.7), (2.5, -0.4, 4.0), (-3.0, 2.9, 0.1)] {
            let e = EulerAngles::new(a, b, g);
            let q = Quaternion::from_euler_kjk(e);
            let m = e.matrix();
            let r = q.rotation_matrix().unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert_abs_diff_eq!(m[i][j], r[i][j], epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn rotate_vector_examples() {
        let r = Quaternion::new(FRAC_PI_4.cos(), 0.0, 0.0, FRAC_PI_4.sin());
        let y = r.rotate_vector([1.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(y[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(y[1], 1.0, epsilon = 1e-15);
        assert_eq!(Quaternion::ONE.rotate_vector([1.0, 2.0, 3.0]).unwrap(), [1.0, 2.0, 3.0]);
        assert_eq!(Quaternion::K.rotate_vector([1.0, 0.0, 0.0]).unwrap(), [-1.0, 0.0, 0.0]);
        assert!(Quaternion::ZERO.rotate_vector([1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn screw_examples() {
        assert_eq!(screw_apply(ScrewKind::Right, Quaternion::K, Quaternion::I).unwrap(), Quaternion::J);
        assert_eq!(
            screw_apply(ScrewKind::LeftPrime, Quaternion::K, Quaternion::I).unwrap(),
            Quaternion::J
        );
        let p = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(screw_apply(ScrewKind::Right, Quaternion::ONE, p).unwrap(), p);
        assert!(screw_apply(ScrewKind::Right, Quaternion::new(2.0, 0.0, 0.0, 0.0), p).is_err());
    }

    #[test]
    fn su2_examples() {
        let c = |a: f64, b: f64, x: f64, y: f64| SU2Coord::from_parts(a, b, x, y);
        assert_eq!(to_su2_q2c(Quaternion::ONE), c(1.0, 0.0, 0.0, 0.0));
        assert_eq!(to_su2_q2c(Quaternion::K), c(0.0, 1.0, 0.0, 0.0));
        assert_eq!(to_su2_q2c(Quaternion::I), c(0.0, 0.0, 0.0, -1.0));

        assert_eq!(to_su2_frame(Quaternion::ONE), c(1.0, 0.0, 0.0, 0.0));
        let qk = Quaternion::new(FRAC_PI_8.cos(), 0.0, 0.0, FRAC_PI_8.sin());
        let e = Complex64::from_polar(1.0, -FRAC_PI_8);
        assert!(cclose(to_su2_frame(qk), SU2Coord::new(e, Complex64::new(0.0, 0.0)), 1e-15));
        let qi = Quaternion::new(FRAC_PI_8.cos(), FRAC_PI_8.sin(), 0.0, 0.0);
        assert!(cclose(to_su2_frame(qi), c(FRAC_PI_8.cos(), 0.0, 0.0, FRAC_PI_8.sin()), 1e-15));

        assert_eq!(from_su2(c(1.0, 0.0, 0.0, 0.0)), Quaternion::ONE);
        assert_eq!(from_su2(c(0.0, -1.0, 0.0, 0.0)), Quaternion::K);
        assert_eq!(from_su2(c(0.0, 0.0, 1.0, 0.0)), Quaternion::J);

        let p = to_su2_frame_with(Quaternion::new(1.0, 2.0, 3.0, 4.0), FrameMap::Printed);
        assert_eq!(p, c(1.0, -2.0, 3.0, 4.0));
    }
}
