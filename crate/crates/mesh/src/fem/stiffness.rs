//! P1 stiffness matrix.

use nalgebra::Matrix3;
use sprs::{CsMat, TriMat};
use su2frames::Vec3;

use crate::error::{FemError, MeshError};
use crate::mesh::TetMesh;

/// Gradients of the four barycentric functions and the volume.
pub fn element_gradients(p: [Vec3; 4]) -> Option<([Vec3; 4], f64)> {
    let d = Matrix3::from_fn(|r, c| p[c + 1][r] - p[0][r]);
    let volume = d.determinant() / 6.0;
    if !(volume > 0.0) {
        return None;
    }
    let inv = d.try_inverse()?;
    let mut g = [[0.0; 3]; 4];
    for i in 0..3 {
        for k in 0..3 {
            g[i + 1][k] = inv[(i, k)];
            g[0][k] -= inv[(i, k)];
        }
    }
    Some((g, volume))
}

/// `∫ ∇φ_j · ∇φ_k` over one tetrahedron.
pub fn element_stiffness(p: [Vec3; 4]) -> Option<[[f64; 4]; 4]> {
    let (g, volume) = element_gradients(p)?;
    let mut k = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            k[i][j] = volume * (g[i][0] * g[j][0] + g[i][1] * g[j][1] + g[i][2] * g[j][2]);
        }
    }
    Some(k)
}

/// Element matrices in mesh order.
pub fn element_matrices(mesh: &TetMesh) -> Result<Vec<[[f64; 4]; 4]>, FemError> {
    mesh.tets
        .iter()
        .enumerate()
        .map(|(index, t)| {
            element_stiffness(t.map(|i| mesh.vertices[i]))
                .ok_or(FemError::Mesh(MeshError::DegenerateTet { index, volume: mesh.volume(index) }))
        })
        .collect()
}

/// Global stiffness matrix in CSC form.
pub fn assemble_stiffness(mesh: &TetMesh) -> Result<CsMat<f64>, FemError> {
    let n = mesh.vertices.len();
    let mut t = TriMat::with_capacity((n, n), 16 * mesh.tets.len());
    for (tet, k) in mesh.tets.iter().zip(element_matrices(mesh)?) {
        for a in 0..4 {
            for b in 0..4 {
                t.add_triplet(tet[a], tet[b], k[a][b]);
            }
        }
    }
    Ok(t.to_csc())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_tet_entries() {
        let k = assemble_stiffness(&TetMesh::reference_tet()).unwrap();
        assert!((k.get(0, 0).unwrap() - 0.5).abs() < 1e-15);
        assert!((k.get(1, 1).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!((k.get(0, 1).unwrap() + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn rows_sum_to_zero_and_matrix_is_symmetric() {
        let m = TetMesh::box_grid([3, 2, 2], [1.0, 2.0, 0.5]);
        let k = assemble_stiffness(&m).unwrap();
        let mut sums = vec![0.0; m.vertices.len()];
        for (v, (i, j)) in k.iter() {
            sums[i] += v;
            assert!((v - k.get(j, i).copied().unwrap_or(0.0)).abs() < 1e-12);
        }
        assert!(sums.iter().all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn two_tets_is_the_sum_of_elements() {
        let m = TetMesh::two_tets();
        let k = assemble_stiffness(&m).unwrap();
        let mut dense = [[0.0; 5]; 5];
        for (t, e) in m.tets.iter().zip(element_matrices(&m).unwrap()) {
            for a in 0..4 {
                for b in 0..4 {
                    dense[t[a]][t[b]] += e[a][b];
                }
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                assert!((k.get(i, j).copied().unwrap_or(0.0) - dense[i][j]).abs() < 1e-15);
            }
        }
    }
}
