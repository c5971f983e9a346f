//! P1 discretization and the three frame-field schemes: a linear Laplace
//! solve on the forms, collocation in Euler angles, and the metric-weighted
//! variant of the collocation energy.

pub mod angles;
pub mod energy;
pub mod metric;
pub mod newton;
pub mod stiffness;

use sprs::{CsMat, TriMat};
use su2frames::dist::r4_frame_distance;
use su2frames::forms::{surface_residual, SurfacePoint};
use su2frames::{Complex64, EulerAngles, Quaternion};

use crate::error::FemError;
use crate::mesh::TetMesh;
use crate::sparse::SpdSolver;

pub use angles::{boundary_euler_angles, euler_to_su2};
pub use energy::{AngleLayout, AngleObjective, Coupling};
pub use metric::{metric_at, MetricAt};
pub use newton::{damped_newton, NewtonOptions, NewtonReport, Objective, TraceRow};
pub use stiffness::assemble_stiffness;

/// Per-vertex solution of one of the schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    /// Euler angles for the angle-based schemes.
    pub angles: Option<Vec<EulerAngles>>,
    pub forms: Vec<SurfacePoint>,
    /// [`surface_residual`] of each vertex value.
    pub residuals: Vec<f64>,
    /// `Σ_i Re(h_iᴴ K h_i)`.
    pub dirichlet_energy: f64,
    /// Final value of the scheme's own objective.
    pub objective: f64,
    pub report: Option<NewtonReport>,
}

impl FrameField {
    fn from_forms(k: &CsMat<f64>, forms: Vec<SurfacePoint>, angles: Option<Vec<EulerAngles>>) -> Self {
        let h: Vec<_> = forms.iter().map(|p| p.components()).collect();
        let dirichlet_energy = Coupling::from_stiffness(k).energy(&h);
        let residuals = forms.iter().map(surface_residual).collect();
        FrameField { angles, forms, residuals, dirichlet_energy, objective: dirichlet_energy, report: None }
    }

    /// Quaternions of the angle states.
    pub fn quaternions(&self) -> Option<Vec<Quaternion>> {
        self.angles.as_ref().map(|a| a.iter().map(|e| Quaternion::from_euler_kjk(*e)).collect())
    }
}

fn interior_split(mesh: &TetMesh) -> (Vec<usize>, Vec<Option<usize>>) {
    let interior = mesh.interior_vertices();
    let mut pos = vec![None; mesh.vertices.len()];
    for (p, &v) in interior.iter().enumerate() {
        pos[v] = Some(p);
    }
    (interior, pos)
}

/// Harmonic extension of the boundary values, componentwise. `boundary[j]`
/// must be set for every boundary vertex and is ignored elsewhere.
pub fn solve_linear(mesh: &TetMesh, boundary: &[Option<SurfacePoint>]) -> Result<FrameField, FemError> {
    let n = mesh.vertices.len();
    if boundary.len() != n {
        return Err(FemError::BoundaryMismatch { expected: n, got: boundary.len() });
    }
    let b_count = mesh.on_boundary.iter().filter(|&&b| b).count();
    if b_count == 0 {
        return Err(FemError::NoBoundary);
    }
    let missing = (0..n).filter(|&j| mesh.on_boundary[j] && boundary[j].is_none()).count();
    if missing > 0 {
        return Err(FemError::BoundaryMismatch { expected: b_count, got: b_count - missing });
    }
    let k = assemble_stiffness(mesh)?;
    let (interior, pos) = interior_split(mesh);
    let zero = SurfacePoint::octa_real(0.0, 0.0, 0.0);
    let mut values: Vec<[Complex64; 3]> =
        (0..n).map(|j| if mesh.on_boundary[j] { boundary[j].unwrap_or(zero).components() } else { [Complex64::new(0.0, 0.0); 3] }).collect();

    if !interior.is_empty() {
        let m = interior.len();
        let mut kii = TriMat::new((m, m));
        let mut rhs = vec![vec![0.0; m]; 6];
        for (v, (i, j)) in k.iter() {
            let Some(pi) = pos[i] else { continue };
            match pos[j] {
                Some(pj) => kii.add_triplet(pi, pj, *v),
                None => {
                    for c in 0..3 {
                        rhs[2 * c][pi] -= v * values[j][c].re;
                        rhs[2 * c + 1][pi] -= v * values[j][c].im;
                    }
                }
            }
        }
        let solver = SpdSolver::new(&kii.to_csc())?;
        let sol: Vec<Vec<f64>> = rhs.iter().map(|r| solver.solve(r)).collect::<Result<_, _>>()?;
        for (p, &v) in interior.iter().enumerate() {
            for c in 0..3 {
                values[v][c] = Complex64::new(sol[2 * c][p], sol[2 * c + 1][p]);
            }
        }
    }
    let forms = values.iter().map(|h| SurfacePoint::octa(h[0], h[1], h[2])).collect();
    Ok(FrameField::from_forms(&k, forms, None))
}

/// `(α, β)` of the vertex normals at boundary vertices.
pub fn normal_aligned_boundary(mesh: &TetMesh) -> Vec<Option<(f64, f64)>> {
    mesh.vertex_normals().into_iter().map(|n| n.map(boundary_euler_angles)).collect()
}

/// Forms of the normal-aligned frames with `γ = 0` at boundary vertices.
pub fn normal_aligned_forms(mesh: &TetMesh) -> Vec<Option<SurfacePoint>> {
    normal_aligned_boundary(mesh)
        .into_iter()
        .map(|b| b.map(|(a, be)| su2frames::forms::octa_forms(euler_to_su2(EulerAngles::new(a, be, 0.0)))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub newton: NewtonOptions,
    /// Metric re-evaluations of the metric scheme.
    pub max_outer: usize,
    /// Outer stop when no angle moves more than this.
    pub outer_tol: f64,
    /// Replace the metric by the identity.
    pub identity_metric: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { newton: NewtonOptions::default(), max_outer: 20, outer_tol: 1e-8, identity_metric: false }
    }
}

fn check_angle_boundary(mesh: &TetMesh, boundary: &[Option<(f64, f64)>]) -> Result<(), FemError> {
    let n = mesh.vertices.len();
    if boundary.len() != n {
        return Err(FemError::BoundaryMismatch { expected: n, got: boundary.len() });
    }
    let b_count = mesh.on_boundary.iter().filter(|&&b| b).count();
    let given = (0..n).filter(|&j| mesh.on_boundary[j] && boundary[j].is_some()).count();
    if given != b_count {
        return Err(FemError::BoundaryMismatch { expected: b_count, got: given });
    }
    if boundary.iter().flatten().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(FemError::NonFiniteEnergy);
    }
    Ok(())
}

/// Boundary angles fixed, all other angles zero.
pub fn initial_angles(boundary: &[Option<(f64, f64)>]) -> Vec<EulerAngles> {
    boundary
        .iter()
        .map(|b| match b {
            Some((a, be)) => EulerAngles::new(*a, *be, 0.0),
            None => EulerAngles::new(0.0, 0.0, 0.0),
        })
        .collect()
}

fn field_from_angles(k: &CsMat<f64>, angles: Vec<EulerAngles>, objective: f64, report: NewtonReport) -> FrameField {
    let forms = angles.iter().map(|e| su2frames::forms::octa_forms(euler_to_su2(*e))).collect();
    let mut f = FrameField::from_forms(k, forms, Some(angles));
    f.objective = objective;
    f.report = Some(report);
    f
}

/// Minimizes `Σ_i Re(h_iᴴ K h_i)` over Euler angles; `(α, β)` are fixed where
/// `boundary` is set (always on boundary vertices) and `γ` is free everywhere.
pub fn solve_collocation(mesh: &TetMesh, boundary: &[Option<(f64, f64)>], opts: &SolveOptions) -> Result<FrameField, FemError> {
    check_angle_boundary(mesh, boundary)?;
    let k = assemble_stiffness(mesh)?;
    let coupling = Coupling::from_stiffness(&k);
    let layout = AngleLayout::new(boundary);
    let base = initial_angles(boundary);
    let obj = AngleObjective { coupling: &coupling, layout: &layout, base: &base };
    let (x, report) = damped_newton(&obj, layout.gather(&base), &opts.newton)?;
    debug_assert!(report.is_monotone());
    let energy = obj.energy(&x);
    Ok(field_from_angles(&k, layout.scatter(&base, &x), energy, report))
}

/// Per-element metric blocks: the average of `G` over the element vertices.
pub fn element_metrics(mesh: &TetMesh, angles: &[EulerAngles], identity: bool) -> Result<Vec<energy::Block>, FemError> {
    if identity {
        return Ok(vec![energy::scalar_block(1.0); mesh.tets.len()]);
    }
    let g: Vec<_> = angles
        .iter()
        .map(|e| metric_at(euler_to_su2(*e)).map(|m| metric::g_block(&m)))
        .collect::<Result<_, _>>()?;
    Ok(mesh
        .tets
        .iter()
        .map(|t| {
            let mut b = [[Complex64::new(0.0, 0.0); 3]; 3];
            for &v in t {
                for i in 0..3 {
                    for l in 0..3 {
                        b[i][l] += g[v][i][l] * 0.25;
                    }
                }
            }
            b
        })
        .collect())
}

/// The metric-weighted coupling at the given state.
pub fn metric_coupling(mesh: &TetMesh, angles: &[EulerAngles], identity: bool) -> Result<Coupling, FemError> {
    let ke = stiffness::element_matrices(mesh)?;
    let ge = element_metrics(mesh, angles, identity)?;
    Ok(Coupling::from_elements(mesh.vertices.len(), &mesh.tets, &ke, &ge))
}

/// Minimizes `Σ_e ∫ ∇hᴴ G_e ∇h` with `G_e` frozen per outer iteration.
/// The trace concatenates the inner Newton traces; energies are monotone
/// within each frozen-metric phase.
pub fn solve_metric(mesh: &TetMesh, boundary: &[Option<(f64, f64)>], opts: &SolveOptions) -> Result<(FrameField, Vec<usize>), FemError> {
    check_angle_boundary(mesh, boundary)?;
    let k = assemble_stiffness(mesh)?;
    let layout = AngleLayout::new(boundary);
    let base = initial_angles(boundary);
    let mut x = layout.gather(&base);
    let mut report = NewtonReport::default();
    let mut phase_starts = Vec::new();
    let mut objective = 0.0;
    let mut converged = false;
    for _ in 0..opts.max_outer.max(1) {
        let angles = layout.scatter(&base, &x);
        let coupling = metric_coupling(mesh, &angles, opts.identity_metric)?;
        let obj = AngleObjective { coupling: &coupling, layout: &layout, base: &base };
        let (next, inner) = damped_newton(&obj, x.clone(), &opts.newton)?;
        debug_assert!(inner.is_monotone());
        phase_starts.push(report.trace.len());
        let offset = report.iterations;
        report.trace.extend(inner.trace.iter().map(|r| TraceRow { iter: r.iter + offset, ..*r }));
        report.iterations += inner.iterations;
        report.stalled |= inner.stalled;
        objective = obj.energy(&next);
        let moved = x.iter().zip(&next).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        x = next;
        if inner.converged && (moved <= opts.outer_tol || opts.identity_metric) {
            converged = true;
            break;
        }
    }
    report.converged = converged;
    Ok((field_from_angles(&k, layout.scatter(&base, &x), objective, report), phase_starts))
}

/// Mean `d_r4` between the frames at the ends of each edge.
pub fn edge_r4_smoothness(mesh: &TetMesh, field: &FrameField) -> Option<f64> {
    let q = field.quaternions()?;
    let edges = mesh.edges();
    if edges.is_empty() {
        return Some(0.0);
    }
    let total: f64 = edges.iter().map(|[a, b]| r4_frame_distance(q[*a], q[*b]).unwrap_or(f64::NAN)).sum();
    Some(total / edges.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_boundary_linear() {
        let m = TetMesh::box_grid([3, 3, 3], [1.0, 1.0, 1.0]);
        let b: Vec<_> = (0..m.vertices.len()).map(|_| Some(SurfacePoint::octa_real(1.0, 0.0, 0.0))).collect();
        let f = solve_linear(&m, &b).unwrap();
        for p in &f.forms {
            assert!(p.max_abs_diff(&SurfacePoint::octa_real(1.0, 0.0, 0.0)) <= 1e-12);
        }
        assert!(f.dirichlet_energy.abs() < 1e-12);
    }

    #[test]
    fn linear_needs_a_boundary() {
        let m = TetMesh::box_grid([2, 2, 2], [1.0, 1.0, 1.0]);
        let b = vec![None; m.vertices.len()];
        assert!(matches!(solve_linear(&m, &b), Err(FemError::BoundaryMismatch { .. })));
    }

    #[test]
    fn cartesian_boundary_collocation() {
        let m = TetMesh::box_grid([2, 2, 2], [1.0, 1.0, 1.0]);
        let b: Vec<_> = m.on_boundary.iter().map(|&on| on.then_some((0.0, 0.0))).collect();
        let f = solve_collocation(&m, &b, &SolveOptions::default()).unwrap();
        assert!(f.dirichlet_energy.abs() < 1e-12);
        assert!(f.report.as_ref().unwrap().converged);
        for e in f.angles.unwrap() {
            assert!(e.alpha.abs() < 1e-9 && e.beta.abs() < 1e-9 && e.gamma.abs() < 1e-9, "{e:?}");
        }
    }
}
