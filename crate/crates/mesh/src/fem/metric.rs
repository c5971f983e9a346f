//! Metric induced on the forms by the Jacobian of `(u, v) ↦ (h0, h1, h2)`.

use nalgebra::{Matrix2, Matrix2x3, Matrix3, Matrix3x2};
use su2frames::forms::octa_jet;
use su2frames::{Complex64, SU2Coord};

use crate::error::FemError;

/// Relative cut-off of singular values in the pseudo-inverse.
pub const SVD_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricAt {
    /// `J[i] = (∂h_i/∂u, ∂h_i/∂v)`.
    pub j: Matrix3x2<Complex64>,
    pub j_pinv: Matrix2x3<Complex64>,
    /// `J⁺ J⁺ᴴ`.
    pub m: Matrix2<Complex64>,
    /// `J⁺ᴴ J⁺`, the pull-back of the `(u, v)` inner product to `dh`.
    pub g: Matrix3<Complex64>,
}

pub fn metric_at(c: SU2Coord) -> Result<MetricAt, FemError> {
    if c.u == Complex64::new(0.0, 0.0) && c.v == Complex64::new(0.0, 0.0) {
        return Err(FemError::ZeroPoint);
    }
    let jet = octa_jet(c);
    let j = Matrix3x2::from_fn(|r, col| if col == 0 { jet.du[r] } else { jet.dv[r] });
    let svd = j.svd(true, true);
    let sigma_max = svd.singular_values.max();
    if !(sigma_max > 0.0) || !sigma_max.is_finite() {
        return Err(FemError::ZeroPoint);
    }
    let j_pinv = svd.pseudo_inverse(SVD_CUTOFF * sigma_max).map_err(|e| FemError::Solver(e.to_string()))?;
    let m = j_pinv * j_pinv.adjoint();
    let g = j_pinv.adjoint() * j_pinv;
    Ok(MetricAt { j, j_pinv, m, g })
}

/// `G` as a plain array block.
pub fn g_block(m: &MetricAt) -> [[Complex64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|l| m.g[(i, l)]))
}
