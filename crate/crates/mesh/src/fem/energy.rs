//! Quadratic Dirichlet-type energies `E = Σ_jk Re(h_jᴴ W_jk h_k)` of
//! per-vertex form values, and their gradient and Hessian in Euler angles.

use sprs::{CsMat, TriMat};
use su2frames::{Complex64, EulerAngles};

use super::angles::{forms_jet, FormsJet};

pub type Block = [[Complex64; 3]; 3];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn scalar_block(s: f64) -> Block {
    let mut b = [[ZERO; 3]; 3];
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = Complex64::new(s, 0.0);
    }
    b
}

fn apply(b: &Block, x: &[Complex64; 3]) -> [Complex64; 3] {
    std::array::from_fn(|i| b[i][0] * x[0] + b[i][1] * x[1] + b[i][2] * x[2])
}

/// Hermitian block-sparse coupling `W` with `W_kj = W_jkᴴ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    pub rows: Vec<Vec<(usize, Block)>>,
}

impl Coupling {
    /// `W_jk = K_jk I`.
    pub fn from_stiffness(k: &CsMat<f64>) -> Self {
        let mut rows = vec![Vec::new(); k.rows()];
        for (v, (i, j)) in k.iter() {
            rows[i].push((j, scalar_block(*v)));
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
        }
        Coupling { rows }
    }

    /// `W_jk = Σ_e K^e_jk G_e`.
    pub fn from_elements(n: usize, tets: &[[usize; 4]], ke: &[[[f64; 4]; 4]], ge: &[Block]) -> Self {
        let mut map: Vec<std::collections::BTreeMap<usize, Block>> = vec![Default::default(); n];
        for ((t, k), g) in tets.iter().zip(ke).zip(ge) {
            for a in 0..4 {
                for b in 0..4 {
                    let e = map[t[a]].entry(t[b]).or_insert([[ZERO; 3]; 3]);
                    for i in 0..3 {
                        for l in 0..3 {
                            e[i][l] += g[i][l] * k[a][b];
                        }
                    }
                }
            }
        }
        Coupling { rows: map.into_iter().map(|m| m.into_iter().collect()).collect() }
    }

    /// `w_j = Σ_k W_jk h_k`.
    pub fn apply(&self, h: &[[Complex64; 3]]) -> Vec<[Complex64; 3]> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = [ZERO; 3];
                for (k, b) in row {
                    let y = apply(b, &h[*k]);
                    for i in 0..3 {
                        acc[i] += y[i];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn energy(&self, h: &[[Complex64; 3]]) -> f64 {
        let w = self.apply(h);
        h.iter()
            .zip(&w)
            .map(|(a, b)| (0..3).map(|i| (a[i].conj() * b[i]).re).sum::<f64>())
            .sum()
    }
}

/// Which angles of a vertex are unknowns: `index[j][p]` is the position of
/// angle `p` of vertex `j` in the unknown vector.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleLayout {
    pub index: Vec<[Option<usize>; 3]>,
    pub len: usize,
}

impl AngleLayout {
    /// All angles free except `(α, β)` where `fixed[j]` is set.
    pub fn new(fixed: &[Option<(f64, f64)>]) -> Self {
        let mut len = 0;
        let index = fixed
            .iter()
            .map(|f| {
                let free = if f.is_some() { [false, false, true] } else { [true, true, true] };
                free.map(|b| {
                    b.then(|| {
                        len += 1;
                        len - 1
                    })
                })
            })
            .collect();
        AngleLayout { index, len }
    }

    pub fn scatter(&self, base: &[EulerAngles], x: &[f64]) -> Vec<EulerAngles> {
        base.iter()
            .zip(&self.index)
            .map(|(e, idx)| {
                let mut a = [e.alpha, e.beta, e.gamma];
                for p in 0..3 {
                    if let Some(i) = idx[p] {
                        a[p] = x[i];
                    }
                }
                EulerAngles::new(a[0], a[1], a[2])
            })
            .collect()
    }

    pub fn gather(&self, angles: &[EulerAngles]) -> Vec<f64> {
        let mut x = vec![0.0; self.len];
        for (e, idx) in angles.iter().zip(&self.index) {
            let a = [e.alpha, e.beta, e.gamma];
            for p in 0..3 {
                if let Some(i) = idx[p] {
                    x[i] = a[p];
                }
            }
        }
        x
    }
}

/// The energy as a function of the free angles.
pub struct AngleObjective<'a> {
    pub coupling: &'a Coupling,
    pub layout: &'a AngleLayout,
    pub base: &'a [EulerAngles],
}

impl AngleObjective<'_> {
    fn forms(&self, x: &[f64]) -> Vec<[Complex64; 3]> {
        self.layout
            .scatter(self.base, x)
            .iter()
            .map(|e| super::angles::forms_at(*e))
            .collect()
    }

    fn jets(&self, x: &[f64]) -> Vec<FormsJet> {
        self.layout.scatter(self.base, x).iter().map(|e| forms_jet(*e)).collect()
    }
}

impl super::newton::Objective for AngleObjective<'_> {
    fn dim(&self) -> usize {
        self.layout.len
    }

    fn energy(&self, x: &[f64]) -> f64 {
        self.coupling.energy(&self.forms(x))
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let jets = self.jets(x);
        let h: Vec<_> = jets.iter().map(|j| j.h).collect();
        let w = self.coupling.apply(&h);
        let mut g = vec![0.0; self.layout.len];
        for (j, idx) in self.layout.index.iter().enumerate() {
            for p in 0..3 {
                if let Some(a) = idx[p] {
                    g[a] = 2.0 * (0..3).map(|i| (jets[j].d[p][i].conj() * w[j][i]).re).sum::<f64>();
                }
            }
        }
        g
    }

    fn hessian(&self, x: &[f64]) -> CsMat<f64> {
        let jets = self.jets(x);
        let h: Vec<_> = jets.iter().map(|j| j.h).collect();
        let w = self.coupling.apply(&h);
        let n = self.layout.len;
        let mut t = TriMat::with_capacity((n, n), 9 * self.coupling.rows.iter().map(|r| r.len()).sum::<usize>());
        for (j, row) in self.coupling.rows.iter().enumerate() {
            let ij = self.layout.index[j];
            for (k, b) in row {
                let ik = self.layout.index[*k];
                for q in 0..3 {
                    let Some(col) = ik[q] else { continue };
                    let y = apply(b, &jets[*k].d[q]);
                    for p in 0..3 {
                        let Some(r) = ij[p] else { continue };
                        let v: f64 = (0..3).map(|i| (jets[j].d[p][i].conj() * y[i]).re).sum();
                        t.add_triplet(r, col, 2.0 * v);
                    }
                }
            }
            for p in 0..3 {
                let Some(r) = ij[p] else { continue };
                for q in 0..3 {
                    let Some(col) = ij[q] else { continue };
                    let v: f64 = (0..3).map(|i| (jets[j].dd[p][q][i].conj() * w[j][i]).re).sum();
                    t.add_triplet(r, col, 2.0 * v);
                }
            }
        }
        t.to_csc()
    }
}
