//! Tetrahedral meshes and a few structured generators.

use std::collections::HashMap;

use su2frames::quat::{cross, norm3};
use su2frames::Vec3;

use crate::error::MeshError;

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Six times the signed volume of `(a, b, c, d)`.
pub fn signed_volume6(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> f64 {
    dot(sub(b, a), cross(sub(c, a), sub(d, a)))
}

/// A conforming mesh of positively oriented tetrahedra.
#[derive(Debug, Clone, PartialEq)]
pub struct TetMesh {
    pub vertices: Vec<Vec3>,
    pub tets: Vec<[usize; 4]>,
    /// Faces owned by a single tetrahedron, oriented outward.
    pub boundary_tris: Vec<[usize; 3]>,
    /// Unit outward normal of each boundary triangle.
    pub boundary_normals: Vec<Vec3>,
    pub on_boundary: Vec<bool>,
}

impl TetMesh {
    /// Validates the tetrahedra and derives the boundary.
    pub fn new(vertices: Vec<Vec3>, tets: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        if tets.is_empty() {
            return Err(MeshError::NoTets);
        }
        for (index, v) in vertices.iter().enumerate() {
            if !v.iter().all(|x| x.is_finite()) {
                return Err(MeshError::NonFiniteVertex { index });
            }
        }
        for (index, t) in tets.iter().enumerate() {
            for &vertex in t {
                if vertex >= vertices.len() {
                    return Err(MeshError::IndexOutOfRange { index, vertex, count: vertices.len() });
                }
            }
            let p = t.map(|i| vertices[i]);
            let volume = signed_volume6(p[0], p[1], p[2], p[3]) / 6.0;
            let mut h: f64 = 0.0;
            for i in 0..4 {
                for j in i + 1..4 {
                    h = h.max(norm3(sub(p[i], p[j])));
                }
            }
            if volume.abs() <= 1e-14 * h * h * h || t.iter().enumerate().any(|(i, a)| t[i + 1..].contains(a)) {
                return Err(MeshError::DegenerateTet { index, volume });
            }
            if volume < 0.0 {
                return Err(MeshError::InvertedTet { index, volume });
            }
        }

        let mut faces: HashMap<[usize; 3], (usize, [usize; 3], usize)> = HashMap::new();
        for t in &tets {
            for (face, opposite) in local_faces(*t) {
                let mut key = face;
                key.sort_unstable();
                faces.entry(key).and_modify(|e| e.0 += 1).or_insert((1, face, opposite));
            }
        }
        let mut boundary: Vec<([usize; 3], [usize; 3], usize)> = Vec::new();
        for (key, (count, face, opposite)) in &faces {
            match count {
                1 => boundary.push((*key, *face, *opposite)),
                2 => {}
                _ => {
                    return Err(MeshError::NonManifold(format!("face {key:?} is shared by {count} tetrahedra")));
                }
            }
        }
        boundary.sort_unstable_by_key(|b| b.0);

        let mut boundary_tris = Vec::with_capacity(boundary.len());
        let mut boundary_normals = Vec::with_capacity(boundary.len());
        let mut on_boundary = vec![false; vertices.len()];
        for (_, mut f, opposite) in boundary {
            let [a, b, c] = f.map(|i| vertices[i]);
            let mut n = cross(sub(b, a), sub(c, a));
            let centroid = [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0, (a[2] + b[2] + c[2]) / 3.0];
            if dot(n, sub(centroid, vertices[opposite])) < 0.0 {
                f.swap(1, 2);
                n = [-n[0], -n[1], -n[2]];
            }
            let len = norm3(n);
            boundary_normals.push([n[0] / len, n[1] / len, n[2] / len]);
            for i in f {
                on_boundary[i] = true;
            }
            boundary_tris.push(f);
        }
        Ok(TetMesh { vertices, tets, boundary_tris, boundary_normals, on_boundary })
    }

    /// Like [`TetMesh::new`] but flips negatively oriented tetrahedra first.
    pub fn new_reoriented(vertices: Vec<Vec3>, mut tets: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        for t in tets.iter_mut() {
            if t.iter().all(|&i| i < vertices.len()) {
                let p = t.map(|i| vertices[i]);
                if signed_volume6(p[0], p[1], p[2], p[3]) < 0.0 {
                    t.swap(2, 3);
                }
            }
        }
        TetMesh::new(vertices, tets)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.on_boundary[i]).collect()
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| !self.on_boundary[i]).collect()
    }

    pub fn volume(&self, tet: usize) -> f64 {
        let p = self.tets[tet].map(|i| self.vertices[i]);
        signed_volume6(p[0], p[1], p[2], p[3]) / 6.0
    }

    /// Area-weighted outward normals at boundary vertices, `None` inside.
    pub fn vertex_normals(&self) -> Vec<Option<Vec3>> {
        let mut acc = vec![[0.0; 3]; self.vertices.len()];
        for (f, n) in self.boundary_tris.iter().zip(&self.boundary_normals) {
            let [a, b, c] = f.map(|i| self.vertices[i]);
            let area = 0.5 * norm3(cross(sub(b, a), sub(c, a)));
            for &i in f {
                for k in 0..3 {
                    acc[i][k] += area * n[k];
                }
            }
        }
        acc.iter()
            .enumerate()
            .map(|(i, a)| {
                if !self.on_boundary[i] {
                    return None;
                }
                let len = norm3(*a);
                if len > 0.0 {
                    Some([a[0] / len, a[1] / len, a[2] / len])
                } else {
                    let k = self.boundary_tris.iter().position(|f| f.contains(&i))?;
                    Some(self.boundary_normals[k])
                }
            })
            .collect()
    }

    /// Sorted unique edges.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut e: Vec<[usize; 2]> = self
            .tets
            .iter()
            .flat_map(|t| {
                let mut out = Vec::with_capacity(6);
                for i in 0..4 {
                    for j in i + 1..4 {
                        out.push(if t[i] < t[j] { [t[i], t[j]] } else { [t[j], t[i]] });
                    }
                }
                out
            })
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Sorted unique triangular faces.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        let mut f: Vec<[usize; 3]> = self
            .tets
            .iter()
            .flat_map(|t| {
                local_faces(*t).map(|(mut f, _)| {
                    f.sort_unstable();
                    f
                })
            })
            .collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    /// Reference tetrahedron `(0,0,0), (1,0,0), (0,1,0), (0,0,1)`.
    pub fn reference_tet() -> Self {
        TetMesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            vec![[0, 1, 2, 3]],
        )
        .expect("reference tetrahedron is valid")
    }

    /// Two tetrahedra glued along the face `(1, 2, 3)`.
    pub fn two_tets() -> Self {
        TetMesh::new_reoriented(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]],
            vec![[0, 1, 2, 3], [1, 2, 3, 4]],
        )
        .expect("two-tet mesh is valid")
    }

    /// The unit cube split into six tetrahedra around its main diagonal.
    pub fn unit_box() -> Self {
        TetMesh::box_grid([1, 1, 1], [1.0, 1.0, 1.0])
    }

    /// `[0, extent]` boxes split into `cells` cubes of six tetrahedra each.
    pub fn box_grid(cells: [usize; 3], extent: [f64; 3]) -> Self {
        let [nx, ny, nz] = cells.map(|c| c.max(1));
        let id = |i: usize, j: usize, k: usize| (k * (ny + 1) + j) * (nx + 1) + i;
        let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
        for k in 0..=nz {
            for j in 0..=ny {
                for i in 0..=nx {
                    vertices.push([
                        extent[0] * i as f64 / nx as f64,
                        extent[1] * j as f64 / ny as f64,
                        extent[2] * k as f64 / nz as f64,
                    ]);
                }
            }
        }
        let mut tets = Vec::with_capacity(6 * nx * ny * nz);
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    let corner = |b: usize| id(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1));
                    tets.extend(kuhn_split(corner));
                }
            }
        }
        TetMesh::new_reoriented(vertices, tets).expect("box grid is valid")
    }

    /// A solid torus: a square cross-section of half-width `minor` centred at
    /// radius `major`, swept over `segments` slices and split into Kuhn tets.
    pub fn solid_torus(major: f64, minor: f64, segments: usize, cross_cells: usize) -> Result<Self, MeshError> {
        let s_count = segments.max(3);
        let m = cross_cells.max(1);
        let per_slice = (m + 1) * (m + 1);
        let mut vertices = Vec::with_capacity(s_count * per_slice);
        for s in 0..s_count {
            let phi = 2.0 * std::f64::consts::PI * s as f64 / s_count as f64;
            for i in 0..=m {
                for j in 0..=m {
                    let rho = major + minor * (2.0 * i as f64 / m as f64 - 1.0);
                    let z = minor * (2.0 * j as f64 / m as f64 - 1.0);
                    vertices.push([rho * phi.cos(), rho * phi.sin(), z]);
                }
            }
        }
        let id = |s: usize, i: usize, j: usize| (s % s_count) * per_slice + i * (m + 1) + j;
        let mut tets = Vec::with_capacity(6 * s_count * m * m);
        for s in 0..s_count {
            for i in 0..m {
                for j in 0..m {
                    let corner = |b: usize| id(s + ((b >> 2) & 1), i + (b & 1), j + ((b >> 1) & 1));
                    tets.extend(kuhn_split(corner));
                }
            }
        }
        TetMesh::new_reoriented(vertices, tets)
    }
}

/// The four faces of `t`, each with the opposite vertex.
pub(crate) fn local_faces(t: [usize; 4]) -> [([usize; 3], usize); 4] {
    [([t[1], t[2], t[3]], t[0]), ([t[0], t[3], t[2]], t[1]), ([t[0], t[1], t[3]], t[2]), ([t[0], t[2], t[1]], t[3])]
}

/// Six tetrahedra of a cube whose corner `b` (bits x, y, z) is `corner(b)`,
/// all sharing the diagonal from corner 0 to corner 7.
fn kuhn_split(corner: impl Fn(usize) -> usize) -> [[usize; 4]; 6] {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS.map(|p| {
        let b1 = 1 << p[0];
        let b2 = b1 | (1 << p[1]);
        [corner(0), corner(b1), corner(b2), corner(7)]
    })
}

/// Hexahedral cells of the periodic `n × n × n` grid (a 3-torus); corner `b`
/// of a cell has offsets given by the bits of `b`.
pub fn periodic_hex_grid(n: usize) -> Vec<[usize; 8]> {
    let n = n.max(1);
    let id = |i: usize, j: usize, k: usize| ((k % n) * n + (j % n)) * n + (i % n);
    let mut cells = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                cells.push(std::array::from_fn(|b| id(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1))));
            }
        }
    }
    cells
}

/// Hexahedral cells of the `n × n × n` block, same corner convention.
pub fn hex_block_grid(n: usize) -> Vec<[usize; 8]> {
    let n = n.max(1);
    let id = |i: usize, j: usize, k: usize| (k * (n + 1) + j) * (n + 1) + i;
    let mut cells = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                cells.push(std::array::from_fn(|b| id(i + (b & 1), j + ((b >> 1) & 1), k + ((b >> 2) & 1))));
            }
        }
    }
    cells
}
