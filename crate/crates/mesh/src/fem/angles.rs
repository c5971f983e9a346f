//! Euler angles `(α, β, γ)` as coordinates on SU(2) and the chain rule
//! through the octahedral forms.

use su2frames::forms::{octa_forms, octa_jet};
use su2frames::quat::norm3;
use su2frames::{Complex64, EulerAngles, SU2Coord, Vec3};

/// `u = cos(β/2) e^{-i(α+γ)/2}`, `v = sin(β/2) e^{i(γ-α)/2}`.
pub fn euler_to_su2(e: EulerAngles) -> SU2Coord {
    let (sb, cb) = (e.beta * 0.5).sin_cos();
    SU2Coord::new(
        Complex64::from_polar(cb, -(e.alpha + e.gamma) * 0.5),
        Complex64::from_polar(sb, (e.gamma - e.alpha) * 0.5),
    )
}

/// `(h0, h1, h2)` at the given angles.
pub fn forms_at(e: EulerAngles) -> [Complex64; 3] {
    octa_forms(euler_to_su2(e)).components()
}

/// `(α, β)` whose rotation takes `k` to `n`: `α = atan2(n_y, n_x)`,
/// `β = atan2(√(n_x² + n_y²), n_z)`.
pub fn boundary_euler_angles(n: Vec3) -> (f64, f64) {
    let rho = n[0].hypot(n[1]);
    let alpha = if rho == 0.0 { 0.0 } else { n[1].atan2(n[0]) };
    (alpha, rho.atan2(n[2]))
}

/// `(u, v)` with first and second derivatives in `(α, β, γ)`.
#[derive(Debug, Clone, Copy)]
pub struct AngleJet {
    pub c: SU2Coord,
    /// `d[p] = (∂u/∂θ_p, ∂v/∂θ_p)`.
    pub d: [[Complex64; 2]; 3],
    /// `dd[p][q] = (∂²u/∂θ_p∂θ_q, ∂²v/∂θ_p∂θ_q)`.
    pub dd: [[[Complex64; 2]; 3]; 3],
}

pub fn angle_jet(e: EulerAngles) -> AngleJet {
    let c = euler_to_su2(e);
    let (u, v) = (c.u, c.v);
    let half_i = Complex64::new(0.0, 0.5);
    let (sb, cb) = (e.beta * 0.5).sin_cos();
    let ub = Complex64::from_polar(-0.5 * sb, -(e.alpha + e.gamma) * 0.5);
    let vb = Complex64::from_polar(0.5 * cb, (e.gamma - e.alpha) * 0.5);
    let d = [[-half_i * u, -half_i * v], [ub, vb], [-half_i * u, half_i * v]];
    let q = 0.25;
    let dd = [
        [[-q * u, -q * v], [-half_i * ub, -half_i * vb], [-q * u, q * v]],
        [[-half_i * ub, -half_i * vb], [-q * u, -q * v], [-half_i * ub, half_i * vb]],
        [[-q * u, q * v], [-half_i * ub, half_i * vb], [-q * u, -q * v]],
    ];
    AngleJet { c, d, dd }
}

/// `h(α, β, γ)` with first and second angle derivatives.
#[derive(Debug, Clone, Copy)]
pub struct FormsJet {
    pub h: [Complex64; 3],
    /// `d[p][i] = ∂h_i/∂θ_p`.
    pub d: [[Complex64; 3]; 3],
    /// `dd[p][q][i] = ∂²h_i/∂θ_p∂θ_q`.
    pub dd: [[[Complex64; 3]; 3]; 3],
}

pub fn forms_jet(e: EulerAngles) -> FormsJet {
    let a = angle_jet(e);
    let j = octa_jet(a.c);
    let zero = Complex64::new(0.0, 0.0);
    let mut d = [[zero; 3]; 3];
    let mut dd = [[[zero; 3]; 3]; 3];
    for i in 0..3 {
        for p in 0..3 {
            let [up, vp] = a.d[p];
            d[p][i] = j.du[i] * up + j.dv[i] * vp;
            for q in 0..3 {
                let [uq, vq] = a.d[q];
                let [upq, vpq] = a.dd[p][q];
                dd[p][q][i] = j.duu[i] * up * uq
                    + j.duv[i] * (up * vq + vp * uq)
                    + j.dvv[i] * vp * vq
                    + j.du[i] * upq
                    + j.dv[i] * vpq;
            }
        }
    }
    FormsJet { h: j.h, d, dd }
}

/// Third column of the k-j-k rotation matrix.
pub fn third_column(alpha: f64, beta: f64) -> Vec3 {
    [beta.sin() * alpha.cos(), alpha.sin() * beta.sin(), beta.cos()]
}

/// Angles of a unit vector, `None` when it is not unit to `1e-9`.
pub fn checked_boundary_angles(n: Vec3) -> Option<(f64, f64)> {
    ((norm3(n) - 1.0).abs() <= 1e-9).then(|| boundary_euler_angles(n))
}
