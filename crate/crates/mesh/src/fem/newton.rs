//! Damped Newton iteration with a shifted Hessian and backtracking.

use sprs::CsMat;

use crate::error::FemError;
use crate::sparse::{shifted, SpdSolver};

pub trait Objective {
    fn dim(&self) -> usize;
    fn energy(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
    fn hessian(&self, x: &[f64]) -> CsMat<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Stop when `‖∇E‖∞` falls to this value.
    pub grad_tol: f64,
    pub max_iter: usize,
    /// Step halvings before the iteration is declared stalled.
    pub max_halvings: u32,
    /// Growth factor of the Hessian shift on indefiniteness.
    pub shift_growth: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { grad_tol: 1e-8, max_iter: 200, max_halvings: 30, shift_growth: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub energy: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NewtonReport {
    pub trace: Vec<TraceRow>,
    pub converged: bool,
    /// The line search found no decrease.
    pub stalled: bool,
    pub iterations: usize,
}

impl NewtonReport {
    pub fn is_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1].energy <= w[0].energy)
    }
}

fn inf_norm(g: &[f64]) -> f64 {
    g.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Minimizes `obj` from `x0`. Energies of accepted iterates never increase.
pub fn damped_newton(obj: &dyn Objective, x0: Vec<f64>, opts: &NewtonOptions) -> Result<(Vec<f64>, NewtonReport), FemError> {
    let mut x = x0;
    let mut report = NewtonReport::default();
    let mut energy = obj.energy(&x);
    if !energy.is_finite() {
        return Err(FemError::NonFiniteEnergy);
    }
    let mut iter = 0;
    loop {
        let g = obj.gradient(&x);
        let grad_norm = inf_norm(&g);
        if !grad_norm.is_finite() {
            return Err(FemError::NonFiniteEnergy);
        }
        report.trace.push(TraceRow { iter, energy, grad_norm });
        if grad_norm <= opts.grad_tol {
            report.converged = true;
            break;
        }
        if iter >= opts.max_iter {
            break;
        }
        let step = newton_step(obj, &x, &g, opts)?;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<f64> = x.iter().zip(&step).map(|(a, p)| a + t * p).collect();
            let e = obj.energy(&trial);
            if e.is_finite() && (e < energy || (e == energy && inf_norm(&obj.gradient(&trial)) < grad_norm)) {
                x = trial;
                energy = e;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        iter += 1;
        if !accepted {
            report.stalled = true;
            break;
        }
    }
    report.iterations = iter;
    Ok((x, report))
}

/// Solves `(H + μI) p = -g` with the smallest tried `μ ≥ 0` making the
/// system positive definite; falls back to steepest descent.
fn newton_step(obj: &dyn Objective, x: &[f64], g: &[f64], opts: &NewtonOptions) -> Result<Vec<f64>, FemError> {
    let h = obj.hessian(x);
    let rhs: Vec<f64> = g.iter().map(|v| -v).collect();
    let scale = h.diag_iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut mu = 0.0;
    loop {
        let m = if mu == 0.0 { h.clone() } else { shifted(&h, mu) };
        if let Ok(solver) = SpdSolver::new(&m) {
            if let Ok(p) = solver.solve(&rhs) {
                return Ok(p);
            }
        }
        mu = if mu == 0.0 { 1e-10 * scale } else { mu * opts.shift_growth };
        if mu > 1e12 * scale {
            return Ok(rhs.iter().map(|v| v / scale).collect());
        }
    }
}
