//! Frames sharing one axis with a given unit direction `n`.
//!
//! With `a = (n_x - i n_y)/2` and `w = (n_x - i n_y)/(n_z + 1) e^{iα}` the
//! octahedral forms of the frame obtained by rotating the cartesian frame
//! about `k` by `α` and then taking `k` to `n` become Laurent polynomials in
//! `w`. The products `a⁴w^{±4}` are evaluated in fused form so `n_z → 1` stays
//! regular.

use num_complex::Complex64;

use crate::error::AxisError;
use crate::forms::SurfacePoint;
use crate::quat::{norm3, Quaternion, SU2Coord, AXIS_TOL};
use crate::Vec3;

/// Margin kept away from the chart singularities `n_z = ±1`.
pub const CHART_MARGIN: f64 = 1e-9;

fn check_unit(n: Vec3) -> Result<(), AxisError> {
    let norm = norm3(n);
    if !((norm - 1.0).abs() <= AXIS_TOL) {
        return Err(AxisError::NonUnitAxis { norm });
    }
    Ok(())
}

fn check_chart(n: Vec3) -> Result<(), AxisError> {
    check_unit(n)?;
    if !(n[2] > -1.0 + CHART_MARGIN) {
        return Err(AxisError::AntipodalSingularity { nz: n[2] });
    }
    Ok(())
}

/// Quantities derived from `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisContext {
    pub n: Vec3,
    /// `(n_x - i n_y)/2`.
    pub a: Complex64,
    /// `atan2(-n_y, n_x)`.
    pub theta: f64,
    /// `|w| = √((1 - n_z)/(1 + n_z))`.
    pub m: f64,
    /// `m⁴`.
    pub p: f64,
}

impl AxisContext {
    pub fn new(n: Vec3) -> Result<Self, AxisError> {
        check_chart(n)?;
        let m = ((1.0 - n[2]) / (1.0 + n[2])).max(0.0).sqrt();
        Ok(AxisContext {
            n,
            a: Complex64::new(n[0], -n[1]) * 0.5,
            theta: (-n[1]).atan2(n[0]),
            m,
            p: m.powi(4),
        })
    }

    /// `w(α)`.
    pub fn w(&self, alpha: f64) -> Complex64 {
        Complex64::new(self.n[0], -self.n[1]) / (self.n[2] + 1.0) * Complex64::from_polar(1.0, alpha)
    }

    /// `(a⁴w⁴, a⁴w⁻⁴)`.
    pub fn fused_products(&self, alpha: f64) -> (Complex64, Complex64) {
        let n = self.n;
        let base = Complex64::new(n[0], -n[1]).powi(2) / (2.0 * (n[2] + 1.0));
        let a4w4 = base.powi(4) * Complex64::from_polar(1.0, 4.0 * alpha);
        let a4wm4 = Complex64::from_polar(((n[2] + 1.0) * 0.5).powi(4), -4.0 * alpha);
        (a4w4, a4wm4)
    }
}

/// Unit quaternion rotating `k` onto `n`.
pub fn align_z_to_n(n: Vec3) -> Result<Quaternion, AxisError> {
    check_chart(n)?;
    let s = (1.0 + n[2]).sqrt();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Ok(Quaternion::new(s * r, -n[1] / s * r, n[0] / s * r, 0.0))
}

/// `(û, v̂)` of the frame rotated by `α` about `k` and then aligned with `n`.
pub fn axis_su2(n: Vec3, alpha: f64) -> Result<SU2Coord, AxisError> {
    check_chart(n)?;
    let u = Complex64::from_polar(((1.0 + n[2]) * 0.5).sqrt(), -alpha * 0.5);
    let v = Complex64::new(n[0], -n[1]) / (2.0 * (1.0 + n[2])).sqrt() * Complex64::from_polar(1.0, alpha * 0.5);
    Ok(SU2Coord::new(u, v))
}

/// Octahedral forms of [`axis_su2`] in closed form.
pub fn axis_forms(n: Vec3, alpha: f64) -> Result<SurfacePoint, AxisError> {
    let ctx = AxisContext::new(n)?;
    let (aw, bw) = ctx.fused_products(alpha);
    let a = ctx.a;
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let h0 = aw + bw + 14.0 * a4;
    let h1 = a2 * (aw + bw) - 2.0 * a6;
    let h2 = -a * (aw - bw) * (aw + bw - 34.0 * a4);
    Ok(SurfacePoint::octa(h0, h1, h2))
}

/// Parameters of the ellipses traced by `H0 = h0/a⁴` and `H1 = h1/a⁶`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    pub p: f64,
    pub center0: Complex64,
    pub center1: Complex64,
    /// `a⁴`.
    pub scale0: Complex64,
    /// `a⁶`.
    pub scale1: Complex64,
    pub theta: f64,
}

impl EllipseParams {
    fn lobes(&self, alpha: f64) -> Complex64 {
        let t = 4.0 * (alpha + self.theta);
        Complex64::from_polar(self.p, t) + Complex64::from_polar(1.0 / self.p, -t)
    }

    /// `H0(α) = p e^{it} + e^{-it}/p + 14`.
    pub fn h0(&self, alpha: f64) -> Complex64 {
        self.lobes(alpha) + self.center0
    }

    /// `H1(α) = p e^{it} + e^{-it}/p - 2`.
    pub fn h1(&self, alpha: f64) -> Complex64 {
        self.lobes(alpha) + self.center1
    }

    /// Semi-axes `(p + 1/p, |p - 1/p|)`.
    pub fn semi_axes(&self) -> (f64, f64) {
        (self.p + 1.0 / self.p, (self.p - 1.0 / self.p).abs())
    }

    /// `(α, H0, H1)` for `samples` angles uniform on `[0, 2π)`.
    pub fn sample(&self, samples: usize) -> Vec<(f64, Complex64, Complex64)> {
        (0..samples)
            .map(|s| {
                let alpha = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
                (alpha, self.h0(alpha), self.h1(alpha))
            })
            .collect()
    }
}

pub fn ellipse_params(n: Vec3) -> Result<EllipseParams, AxisError> {
    check_unit(n)?;
    if !(n[2].abs() < 1.0 - CHART_MARGIN) {
        return Err(AxisError::DegenerateChart { nz: n[2] });
    }
    let ctx = AxisContext::new(n)?;
    let a2 = ctx.a * ctx.a;
    Ok(EllipseParams {
        p: ctx.p,
        center0: Complex64::new(14.0, 0.0),
        center1: Complex64::new(-2.0, 0.0),
        scale0: a2 * a2,
        scale1: a2 * a2 * a2,
        theta: ctx.theta,
    })
}
