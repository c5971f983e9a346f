//! Invariant forms of the vierer, binary tetrahedral and binary octahedral
//! groups, and the model surfaces they parameterize.

use num_complex::Complex64;

use crate::groups::GroupKind;
use crate::quat::SU2Coord;

/// Floor of the residual normalization.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

/// A point `(h0, h1, h2)` of C³ produced by one family of invariant forms.
///
/// For the octahedral family this is the frame coordinate; the vierer and
/// tetrahedral families store `(f0, f1, f2)` and `(g0, g1, g2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub h0: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
    pub family: GroupKind,
}

impl SurfacePoint {
    pub fn new(h0: Complex64, h1: Complex64, h2: Complex64, family: GroupKind) -> Self {
        SurfacePoint { h0, h1, h2, family }
    }

    /// Octahedral-family point.
    pub fn octa(h0: Complex64, h1: Complex64, h2: Complex64) -> Self {
        SurfacePoint::new(h0, h1, h2, GroupKind::BinaryOctahedral)
    }

    /// Octahedral-family point from real parts only.
    pub fn octa_real(h0: f64, h1: f64, h2: f64) -> Self {
        SurfacePoint::octa(h0.into(), h1.into(), h2.into())
    }

    pub fn components(&self) -> [Complex64; 3] {
        [self.h0, self.h1, self.h2]
    }

    /// Largest componentwise modulus of the difference.
    pub fn max_abs_diff(&self, other: &SurfacePoint) -> f64 {
        self.components()
            .iter()
            .zip(other.components().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Same point with `h2` negated.
    pub fn with_flipped_sign(&self) -> SurfacePoint {
        SurfacePoint { h2: -self.h2, ..*self }
    }
}

/// `f0 = (uv)²`, `f1 = u⁴ + v⁴`, `f2 = uv(u⁴ - v⁴)`.
pub fn vierer_forms(c: SU2Coord) -> SurfacePoint {
    let (u, v) = (c.u, c.v);
    let uv = u * v;
    let (u4, v4) = (u.powi(4), v.powi(4));
    SurfacePoint::new(uv * uv, u4 + v4, uv * (u4 - v4), GroupKind::Vierer)
}

/// `g0 = uv(u⁴ - v⁴)`, `g1 = u⁸ + v⁸ + 14(uv)⁴`,
/// `g2 = u¹² + v¹² - 33(uv)⁴(u⁴ + v⁴)`.
pub fn tetra_forms(c: SU2Coord) -> SurfacePoint {
    let (u, v) = (c.u, c.v);
    let uv4 = (u * v).powi(4);
    let (u4, v4) = (u.powi(4), v.powi(4));
    let g0 = u * v * (u4 - v4);
    let g1 = u4 * u4 + v4 * v4 + 14.0 * uv4;
    let g2 = u4 * u4 * u4 + v4 * v4 * v4 - 33.0 * uv4 * (u4 + v4);
    SurfacePoint::new(g0, g1, g2, GroupKind::BinaryTetrahedral)
}

/// `h0 = g1`, `h1 = g0²`, `h2 = g0 g2`.
pub fn octa_forms(c: SU2Coord) -> SurfacePoint {
    let g = tetra_forms(c);
    SurfacePoint::octa(g.h1, g.h0 * g.h0, g.h0 * g.h2)
}

pub fn forms(kind: GroupKind, c: SU2Coord) -> SurfacePoint {
    match kind {
        GroupKind::Vierer => vierer_forms(c),
        GroupKind::BinaryTetrahedral => tetra_forms(c),
        GroupKind::BinaryOctahedral => octa_forms(c),
    }
}

/// `f̃0, f̃1 = f1 ± 2√3 i f0`; `g1 = f̃0 f̃1` and `g2 = (f̃0³ + f̃1³)/2`.
pub fn tilde_forms(c: SU2Coord) -> (Complex64, Complex64) {
    let f = vierer_forms(c);
    let t = Complex64::new(0.0, 2.0 * 3f64.sqrt()) * f.h0;
    (f.h1 + t, f.h1 - t)
}

/// Normalized residual of the model-surface equation of `p.family`.
///
/// Octahedral: `|h2² - h1(h0³ - 108 h1²)| / max(|h2|², |h1||h0|³, 108|h1|³, ε)`.
pub fn surface_residual(p: &SurfacePoint) -> f64 {
    let (a, b, c) = (p.h0, p.h1, p.h2);
    let (num, scale) = match p.family {
        GroupKind::Vierer => {
            let num = c * c - a * (b * b - 4.0 * a * a);
            let scale = [c.norm_sqr(), a.norm() * b.norm_sqr(), 4.0 * a.norm().powi(3)];
            (num, scale)
        }
        GroupKind::BinaryTetrahedral => {
            let num = c * c - b.powi(3) + 108.0 * a.powi(4);
            let scale = [c.norm_sqr(), b.norm().powi(3), 108.0 * a.norm().powi(4)];
            (num, scale)
        }
        GroupKind::BinaryOctahedral => {
            let num = c * c - b * (a.powi(3) - 108.0 * b * b);
            let scale = [c.norm_sqr(), b.norm() * a.norm().powi(3), 108.0 * b.norm().powi(3)];
            (num, scale)
        }
    };
    let denom = scale.iter().copied().fold(RESIDUAL_FLOOR, f64::max);
    num.norm() / denom
}

/// `(u, v) ↦ (e^{iπ/4} u, -e^{-iπ/4} v)`: keeps `h0, h1` and negates `h2`.
pub fn sign_flip(c: SU2Coord) -> SU2Coord {
    let e = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    SU2Coord::new(e * c.u, -e.conj() * c.v)
}

/// Octahedral forms with their holomorphic first and second derivatives in
/// `(u, v)`. Index `i` of each array is `h_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OctaJet {
    pub h: [Complex64; 3],
    pub du: [Complex64; 3],
    pub dv: [Complex64; 3],
    pub duu: [Complex64; 3],
    pub duv: [Complex64; 3],
    pub dvv: [Complex64; 3],
}

pub fn octa_jet(c: SU2Coord) -> OctaJet {
    let (u, v) = (c.u, c.v);
    let p = |a: i32, b: i32| -> Complex64 {
        match (a, b) {
            (0, 0) => Complex64::new(1.0, 0.0),
            _ => u.powi(a) * v.powi(b),
        }
    };

    let h0 = p(8, 0) + p(0, 8) + 14.0 * p(4, 4);
    let h0u = 8.0 * p(7, 0) + 56.0 * p(3, 4);
    let h0v = 8.0 * p(0, 7) + 56.0 * p(4, 3);
    let h0uu = 56.0 * p(6, 0) + 168.0 * p(2, 4);
    let h0vv = 56.0 * p(0, 6) + 168.0 * p(4, 2);
    let h0uv = 224.0 * p(3, 3);

    let g0 = u * v * (p(4, 0) - p(0, 4));
    let g0u = 5.0 * p(4, 1) - p(0, 5);
    let g0v = p(5, 0) - 5.0 * p(1, 4);
    let g0uu = 20.0 * p(3, 1);
    let g0vv = -20.0 * p(1, 3);
    let g0uv = 5.0 * (p(4, 0) - p(0, 4));

    let g2 = p(12, 0) + p(0, 12) - 33.0 * p(4, 4) * (p(4, 0) + p(0, 4));
    let g2u = 12.0 * p(11, 0) - 33.0 * (8.0 * p(7, 4) + 4.0 * p(3, 8));
    let g2v = 12.0 * p(0, 11) - 33.0 * (4.0 * p(8, 3) + 8.0 * p(4, 7));
    let g2uu = 132.0 * p(10, 0) - 33.0 * (56.0 * p(6, 4) + 12.0 * p(2, 8));
    let g2vv = 132.0 * p(0, 10) - 33.0 * (12.0 * p(8, 2) + 56.0 * p(4, 6));
    let g2uv = -33.0 * 32.0 * (p(7, 3) + p(3, 7));

    let h1 = g0 * g0;
    let h1u = 2.0 * g0 * g0u;
    let h1v = 2.0 * g0 * g0v;
    let h1uu = 2.0 * (g0u * g0u + g0 * g0uu);
    let h1vv = 2.0 * (g0v * g0v + g0 * g0vv);
    let h1uv = 2.0 * (g0u * g0v + g0 * g0uv);

    let h2 = g0 * g2;
    let h2u = g0u * g2 + g0 * g2u;
    let h2v = g0v * g2 + g0 * g2v;
    let h2uu = g0uu * g2 + 2.0 * g0u * g2u + g0 * g2uu;
    let h2vv = g0vv * g2 + 2.0 * g0v * g2v + g0 * g2vv;
    let h2uv = g0uv * g2 + g0u * g2v + g0v * g2u + g0 * g2uv;

    OctaJet {
        h: [h0, h1, h2],
        du: [h0u, h1u, h2u],
        dv: [h0v, h1v, h2v],
        duu: [h0uu, h1uu, h2uu],
        duv: [h0uv, h1uv, h2uv],
        dvv: [h0vv, h1vv, h2vv],
    }
}
