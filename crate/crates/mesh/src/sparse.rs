//! Symmetric positive definite solves: sparse LDLᵀ up to
//! [`DIRECT_LIMIT`] unknowns, Jacobi-preconditioned CG above.

use sprs::{CsMat, FillInReduction, SymmetryCheck, TriMat};
use sprs_ldl::{Ldl, LdlNumeric};

use crate::error::FemError;

/// Largest system handed to the direct factorization.
pub const DIRECT_LIMIT: usize = 100_000;

pub enum SpdSolver {
    Direct(LdlNumeric<f64, usize>),
    Iterative { mat: CsMat<f64>, inv_diag: Vec<f64> },
}

impl SpdSolver {
    /// Factors `mat`, failing when it is not numerically positive definite.
    pub fn new(mat: &CsMat<f64>) -> Result<Self, FemError> {
        Self::with_limit(mat, DIRECT_LIMIT)
    }

    pub fn with_limit(mat: &CsMat<f64>, direct_limit: usize) -> Result<Self, FemError> {
        let n = mat.rows();
        // the symbolic factorization requires at least two unknowns
        if n > 1 && n <= direct_limit {
            let f = Ldl::new()
                .fill_in_reduction(FillInReduction::ReverseCuthillMcKee)
                .check_symmetry(SymmetryCheck::DontCheckSymmetry)
                .numeric(mat.view())
                .map_err(|e| FemError::Solver(format!("{e:?}")))?;
            if f.d().iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
                return Err(FemError::Solver("matrix is not positive definite".into()));
            }
            Ok(SpdSolver::Direct(f))
        } else {
            let mut inv_diag = vec![0.0; n];
            for (v, (i, j)) in mat.iter() {
                if i == j {
                    inv_diag[i] += *v;
                }
            }
            for d in inv_diag.iter_mut() {
                if !(*d > 0.0) {
                    return Err(FemError::Solver("non-positive diagonal entry".into()));
                }
                *d = 1.0 / *d;
            }
            Ok(SpdSolver::Iterative { mat: mat.to_csr(), inv_diag })
        }
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, FemError> {
        match self {
            SpdSolver::Direct(f) => {
                let x = f.solve(&rhs.to_vec());
                if x.iter().all(|v| v.is_finite()) {
                    Ok(x)
                } else {
                    Err(FemError::Solver("non-finite solution".into()))
                }
            }
            SpdSolver::Iterative { mat, inv_diag } => pcg(mat, inv_diag, rhs, 1e-13, 20 * rhs.len().max(100)),
        }
    }
}

fn mat_vec(a: &CsMat<f64>, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; a.rows()];
    for (v, (i, j)) in a.iter() {
        y[i] += v * x[j];
    }
    y
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Jacobi-preconditioned conjugate gradient, relative residual `tol`.
pub fn pcg(a: &CsMat<f64>, inv_diag: &[f64], b: &[f64], tol: f64, max_iter: usize) -> Result<Vec<f64>, FemError> {
    let n = b.len();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let bnorm = dot(b, b).sqrt();
    if bnorm == 0.0 {
        return Ok(x);
    }
    let mut z: Vec<f64> = r.iter().zip(inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for _ in 0..max_iter {
        let ap = mat_vec(a, &p);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(FemError::Solver("matrix is not positive definite".into()));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if dot(&r, &r).sqrt() <= tol * bnorm {
            return Ok(x);
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(FemError::Solver("conjugate gradient did not converge".into()))
}

/// `a + shift·I`.
pub fn shifted(a: &CsMat<f64>, shift: f64) -> CsMat<f64> {
    let n = a.rows();
    let mut t = TriMat::with_capacity((n, n), a.nnz() + n);
    for (v, (i, j)) in a.iter() {
        t.add_triplet(i, j, *v);
    }
    for i in 0..n {
        t.add_triplet(i, i, shift);
    }
    t.to_csc()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace_1d(n: usize) -> CsMat<f64> {
        let mut t = TriMat::new((n, n));
        for i in 0..n {
            t.add_triplet(i, i, 2.0);
            if i + 1 < n {
                t.add_triplet(i, i + 1, -1.0);
                t.add_triplet(i + 1, i, -1.0);
            }
        }
        t.to_csc()
    }

    #[test]
    fn direct_and_iterative_agree() {
        let a = laplace_1d(50);
        let b: Vec<f64> = (0..50).map(|i| (i as f64).sin()).collect();
        let x = SpdSolver::new(&a).unwrap().solve(&b).unwrap();
        let y = SpdSolver::with_limit(&a, 0).unwrap().solve(&b).unwrap();
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() < 1e-9);
        }
        let r = mat_vec(&a, &x);
        for (p, q) in r.iter().zip(&b) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn indefinite_is_rejected() {
        let a = shifted(&laplace_1d(5), -3.0);
        assert!(SpdSolver::new(&a).is_err());
    }
}
