//! Inversion of the octahedral forms.
//!
//! Starting from `(h0, h1, h2)` the tetrahedral forms are recovered up to a
//! sign (`k0`), then `f̃0, f̃1` up to a cube root of unity (`k1`), then `v⁴`
//! from a quadratic (`k2`), `v` up to a power of `i` (`k3`) and finally `u`
//! from `(uv)² = x★` up to a sign (`k4`). Off the degenerate locus this gives
//! 96 raw pairs: half of them reproduce `(h0, h1, h2)`, the other half
//! `(h0, h1, -h2)` and are mapped back with [`sign_flip`].

use num_complex::Complex64;

use crate::error::RecoverError;
use crate::forms::{octa_forms, octa_jet, sign_flip, surface_residual, SurfacePoint};
use crate::groups::GroupKind;
use crate::quat::SU2Coord;
use crate::roots::{cbrt, depressed_cubic_roots, i_pow, omega, root4, sqrt};

/// Tunables of [`recover_groupset_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoverOptions {
    /// Maximum [`surface_residual`] of the input.
    pub surface_tol: f64,
    /// Maximum normalized form residual of an accepted candidate.
    pub filter_tol: f64,
    /// Two candidates closer than this (`|Δu| + |Δv|`) are one.
    pub dedup_tol: f64,
    /// Candidates within this residual of `±h2` are kept and refined.
    pub classify_tol: f64,
    /// Gauss-Newton refinement steps applied to each kept candidate.
    pub polish_steps: usize,
}

impl Default for RecoverOptions {
    fn default() -> Self {
        RecoverOptions {
            surface_tol: 1e-8,
            filter_tol: 1e-8,
            dedup_tol: 1e-9,
            classify_tol: 1e-5,
            polish_steps: 3,
        }
    }
}

/// One raw branch combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawCandidate {
    pub coord: SU2Coord,
    /// `k0..k4`; `k4` is 0 on the degenerate branch.
    pub branch: [u8; 5],
    /// Produced by the `f̃0 = f̃1` (`uv = 0`) branch.
    pub degenerate: bool,
}

/// The `(u, v)` pairs that share one frame coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoverySet {
    pub candidates: Vec<SU2Coord>,
    pub source: SurfacePoint,
    /// Set for the zero point, whose groupset collapses onto `(0, 0)`.
    pub degenerate: bool,
    /// Number of raw branch combinations evaluated.
    pub raw_count: usize,
    /// Raw candidates reproducing `(h0, h1, h2)`.
    pub raw_matching: usize,
    /// Raw candidates reproducing `(h0, h1, -h2)` only.
    pub raw_flipped: usize,
}

impl RecoverySet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Distance from `c` to the closest candidate.
    pub fn distance_to(&self, c: SU2Coord) -> f64 {
        self.candidates.iter().map(|x| x.distance(c)).fold(f64::INFINITY, f64::min)
    }
}

/// All branch combinations, unfiltered.
pub fn raw_candidates(p: &SurfacePoint) -> Vec<RawCandidate> {
    let (h0, h1, h2) = (p.h0, p.h1, p.h2);
    let zero = Complex64::new(0.0, 0.0);
    let s3 = 3f64.sqrt();
    let six_root3_i = Complex64::new(0.0, 6.0 * s3);
    let four_root3_i = Complex64::new(0.0, 4.0 * s3);
    let mut out = Vec::with_capacity(96);

    let root_h1 = sqrt(h1);
    for k0 in 0..2u8 {
        let sign = if k0 == 0 { 1.0 } else { -1.0 };
        let g1 = h0;
        let g0 = root_h1 * sign;
        let g2 = if h1 != zero { h2 / root_h1 * sign } else { sqrt(h0 * h0 * h0) * sign };

        for k1 in 0..3u8 {
            let w = omega(k1 as u32);
            let ft0 = w * cbrt(g2 + six_root3_i * g0 * g0);
            let ft1 = if ft0 != zero { g1 / ft0 } else { w * cbrt(g2 - six_root3_i * g0 * g0) };

            let gap = (ft0 - ft1).norm();
            let scale = ft0.norm().max(ft1.norm());
            if gap <= 1e-12 * scale || scale == 0.0 {
                // uv = 0: one of u, v vanishes and the other is a fourth root.
                let r = root4((ft0 + ft1) * 0.5);
                for k2 in 0..2u8 {
                    for k3 in 0..4u8 {
                        let z = i_pow(k3 as u32) * r;
                        let coord = if k2 == 1 { SU2Coord::new(z, zero) } else { SU2Coord::new(zero, z) };
                        out.push(RawCandidate { coord, branch: [k0, k1, k2, k3, 0], degenerate: true });
                    }
                }
                continue;
            }

            let x_star = (ft0 - ft1) / four_root3_i;
            let root_x = sqrt(x_star);
            let disc = sqrt(ft0 * ft0 + ft0 * ft1 + ft1 * ft1);
            for k2 in 0..2u8 {
                let sign2 = if k2 == 0 { 1.0 } else { -1.0 };
                let v4 = (ft0 + ft1) * 0.25 + disc * (sign2 * s3 / 6.0);
                let r = root4(v4);
                for k3 in 0..4u8 {
                    let v = i_pow(k3 as u32) * r;
                    if v == zero {
                        continue;
                    }
                    for k4 in 0..2u8 {
                        let sign4 = if k4 == 0 { 1.0 } else { -1.0 };
                        let u = root_x / v * sign4;
                        out.push(RawCandidate {
                            coord: SU2Coord::new(u, v),
                            branch: [k0, k1, k2, k3, k4],
                            degenerate: false,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Componentwise form residual of `c` against `target`, each component
/// normalized by `|c|^{2·deg}` with degrees 4, 6, 9 in `|u|² + |v|²`.
pub fn form_residual(c: SU2Coord, target: &SurfacePoint) -> f64 {
    let h = octa_forms(c);
    let n = c.norm_squared().max(1e-300);
    let scales = [n.powi(4), n.powi(6), n.powi(9)];
    h.components()
        .iter()
        .zip(target.components().iter())
        .zip(scales.iter())
        .map(|((a, b), s)| (a - b).norm() / s)
        .fold(0.0, f64::max)
}

/// Gauss-Newton refinement of `c` towards `octa_forms(c) = target`.
fn polish(mut c: SU2Coord, target: &SurfacePoint, steps: usize) -> SU2Coord {
    let t = target.components();
    let mut best = form_residual(c, target);
    for _ in 0..steps {
        let jet = octa_jet(c);
        let n = c.norm_squared().max(1e-300);
        let w = [1.0 / n.powi(4), 1.0 / n.powi(6), 1.0 / n.powi(9)];
        // normal equations of the weighted 3x2 system
        let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
        let mut rhs = [Complex64::new(0.0, 0.0); 2];
        for i in 0..3 {
            let row = [jet.du[i] * w[i], jet.dv[i] * w[i]];
            let r = (t[i] - jet.h[i]) * w[i];
            for j in 0..2 {
                rhs[j] += row[j].conj() * r;
                for k in 0..2 {
                    a[j][k] += row[j].conj() * row[k];
                }
            }
        }
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.norm() <= 1e-300 || !det.is_finite() {
            break;
        }
        let du = (rhs[0] * a[1][1] - a[0][1] * rhs[1]) / det;
        let dv = (a[0][0] * rhs[1] - a[1][0] * rhs[0]) / det;
        let next = SU2Coord::new(c.u + du, c.v + dv);
        let r = form_residual(next, target);
        if !(r < best) {
            break;
        }
        best = r;
        c = next;
    }
    c
}

pub fn recover_groupset(p: &SurfacePoint) -> Result<RecoverySet, RecoverError> {
    recover_groupset_with(p, &RecoverOptions::default())
}

pub fn recover_groupset_with(p: &SurfacePoint, opts: &RecoverOptions) -> Result<RecoverySet, RecoverError> {
    if p.family != GroupKind::BinaryOctahedral {
        return Err(RecoverError::WrongFamily);
    }
    if !p.components().iter().all(|z| z.is_finite()) {
        return Err(RecoverError::NotOnSurface { residual: f64::NAN });
    }
    let residual = surface_residual(p);
    if !(residual <= opts.surface_tol) {
        return Err(RecoverError::NotOnSurface { residual });
    }
    if p.max_abs() == 0.0 {
        return Ok(RecoverySet {
            candidates: vec![SU2Coord::default(); GroupKind::BinaryOctahedral.order()],
            source: *p,
            degenerate: true,
            raw_count: 0,
            raw_matching: 0,
            raw_flipped: 0,
        });
    }

    let raw = raw_candidates(p);
    let flipped_target = p.with_flipped_sign();
    let mut kept = Vec::with_capacity(raw.len());
    let (mut matching, mut flipped) = (0, 0);
    for rc in &raw {
        let c = rc.coord;
        if !(c.u.is_finite() && c.v.is_finite()) {
            continue;
        }
        if form_residual(c, p) <= opts.classify_tol {
            matching += 1;
            kept.push(c);
        } else if form_residual(c, &flipped_target) <= opts.classify_tol {
            flipped += 1;
            kept.push(sign_flip(c));
        }
    }

    let mut candidates: Vec<SU2Coord> = Vec::with_capacity(48);
    for c in kept {
        let c = polish(c, p, opts.polish_steps);
        if form_residual(c, p) > opts.filter_tol {
            continue;
        }
        if candidates.iter().all(|d| d.distance(c) > opts.dedup_tol) {
            candidates.push(c);
        }
    }
    if candidates.is_empty() {
        return Err(RecoverError::NoCandidates);
    }
    Ok(RecoverySet {
        candidates,
        source: *p,
        degenerate: false,
        raw_count: raw.len(),
        raw_matching: matching,
        raw_flipped: flipped,
    })
}

/// Roots of `16x³ - h0 x + h1 = 0`; their values are `(uv)²` over the groupset.
pub fn uv2_roots(p: &SurfacePoint) -> [Complex64; 3] {
    depressed_cubic_roots(-p.h0 / 16.0, p.h1 / 16.0)
}

/// `|y₊|^{1/4} + |y₋|^{1/4}` for the roots of `y² - (h0 - 14x★²) y + x★⁴ = 0`,
/// which are `u⁸` and `v⁸` of a preimage with `(uv)² = x★`.
pub fn norm_from_root(p: &SurfacePoint, x_star: Complex64) -> f64 {
    let x2 = x_star * x_star;
    let b = p.h0 - 14.0 * x2;
    let delta = sqrt(p.h0 * p.h0 - 28.0 * p.h0 * x2 + 192.0 * x2 * x2);
    // larger root directly, smaller one from the product
    let big = if (b + delta).norm() >= (b - delta).norm() { (b + delta) * 0.5 } else { (b - delta) * 0.5 };
    let small = if big.norm() > 0.0 { x2 * x2 / big } else { big };
    big.norm().powf(0.25) + small.norm().powf(0.25)
}

/// `|u|² + |v|²` of every `(u, v)` mapping to `p`, from the cubic root
/// farthest from the other two.
pub fn norm_from_surface(p: &SurfacePoint) -> f64 {
    let r = uv2_roots(p);
    let sep = |i: usize| (0..3).filter(|&k| k != i).map(|k| (r[i] - r[k]).norm()).fold(f64::INFINITY, f64::min);
    let best = (0..3).fold(0, |b, i| if sep(i) > sep(b) { i } else { b });
    norm_from_root(p, r[best])
}

/// The norm evaluated through each of the three cubic roots.
pub fn norm_from_surface_branches(p: &SurfacePoint) -> [f64; 3] {
    uv2_roots(p).map(|x| norm_from_root(p, x))
}

/// True when `p` lies on the model surface and comes from a unit `(u, v)`.
pub fn is_unit_surface_point(p: &SurfacePoint, tol: f64) -> bool {
    (norm_from_surface(p) - 1.0).abs() <= tol && surface_residual(p) <= tol
}
