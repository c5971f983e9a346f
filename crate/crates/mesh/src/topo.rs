//! Euler characteristics and the counting identities of regular hex meshes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::TopoError;
use crate::mesh::TetMesh;

/// Cell counts of a 3D complex and of its boundary surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CellComplexCounts {
    /// `N`
    pub vertices: u64,
    /// `N_E`
    pub edges: u64,
    /// `N_F`
    pub faces: u64,
    /// `N_C`
    pub cells: u64,
    /// `n`
    pub boundary_vertices: u64,
    /// `n_e`
    pub boundary_edges: u64,
    /// `n_f`
    pub boundary_faces: u64,
    /// `k`, number of singular inner loops.
    pub loops: u64,
    /// `L`, edges per loop.
    pub loop_edges: u64,
}

impl CellComplexCounts {
    pub fn validate(&self) -> Result<(), TopoError> {
        let pairs = [
            (self.boundary_vertices, self.vertices, "n > N"),
            (self.boundary_edges, self.edges, "n_e > N_E"),
            (self.boundary_faces, self.faces, "n_f > N_F"),
        ];
        for (b, v, msg) in pairs {
            if b > v {
                return Err(TopoError::InconsistentCounts(msg.into()));
            }
        }
        let singular = self.loops.checked_mul(self.loop_edges);
        match singular {
            Some(s) if s.checked_add(self.boundary_vertices).is_some_and(|t| t <= self.vertices) => Ok(()),
            _ => Err(TopoError::InconsistentCounts("n + kL > N".into())),
        }
    }

    /// `χ(R) = N - N_E + N_F - N_C`.
    pub fn euler(&self) -> i128 {
        self.vertices as i128 - self.edges as i128 + self.faces as i128 - self.cells as i128
    }

    /// `χ(∂R) = n - n_e + n_f`.
    pub fn boundary_euler(&self) -> i128 {
        self.boundary_vertices as i128 - self.boundary_edges as i128 + self.boundary_faces as i128
    }

    /// Counts of a tetrahedral mesh, sub-simplices enumerated from the cells.
    pub fn from_tets(mesh: &TetMesh) -> Self {
        let edges = mesh.edges().len() as u64;
        let faces = mesh.faces().len() as u64;
        let (bv, be) = boundary_vertex_edge_counts(mesh.boundary_tris.iter().map(|f| f.to_vec()));
        CellComplexCounts {
            vertices: used_vertices(mesh.tets.iter().flatten().copied()),
            edges,
            faces,
            cells: mesh.tets.len() as u64,
            boundary_vertices: bv,
            boundary_edges: be,
            boundary_faces: mesh.boundary_tris.len() as u64,
            loops: 0,
            loop_edges: 0,
        }
    }

    /// Counts of a hexahedral complex with corner `b` at bit offsets `b`.
    pub fn from_hexes(cells: &[[usize; 8]]) -> Self {
        let mut edges = BTreeSet::new();
        let mut faces: BTreeMap<[usize; 4], (u32, [usize; 4])> = BTreeMap::new();
        for c in cells {
            for a in 0..8usize {
                for bit in [1usize, 2, 4] {
                    if a & bit == 0 {
                        let (x, y) = (c[a], c[a | bit]);
                        edges.insert(if x < y { [x, y] } else { [y, x] });
                    }
                }
            }
            for bit in [1usize, 2, 4] {
                for side in [0, bit] {
                    let corners: Vec<usize> = (0..8).filter(|b| b & bit == side).collect();
                    // cyclic order around the face
                    let cyc = [corners[0], corners[1], corners[3], corners[2]].map(|b| c[b]);
                    let mut key = cyc;
                    key.sort_unstable();
                    faces.entry(key).and_modify(|e| e.0 += 1).or_insert((1, cyc));
                }
            }
        }
        let boundary: Vec<Vec<usize>> = faces.values().filter(|(n, _)| *n == 1).map(|(_, f)| f.to_vec()).collect();
        let (bv, be) = boundary_vertex_edge_counts(boundary.iter().cloned());
        CellComplexCounts {
            vertices: used_vertices(cells.iter().flatten().copied()),
            edges: edges.len() as u64,
            faces: faces.len() as u64,
            cells: cells.len() as u64,
            boundary_vertices: bv,
            boundary_edges: be,
            boundary_faces: boundary.len() as u64,
            loops: 0,
            loop_edges: 0,
        }
    }
}

fn used_vertices(ids: impl Iterator<Item = usize>) -> u64 {
    ids.collect::<BTreeSet<_>>().len() as u64
}

/// Distinct vertices and edges of a polygon soup given by cyclic vertex lists.
fn boundary_vertex_edge_counts(polys: impl Iterator<Item = Vec<usize>>) -> (u64, u64) {
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for p in polys {
        for i in 0..p.len() {
            let (a, b) = (p[i], p[(i + 1) % p.len()]);
            verts.insert(a);
            edges.insert(if a < b { [a, b] } else { [b, a] });
        }
    }
    (verts.len() as u64, edges.len() as u64)
}

/// `N - N_E + N_F - N_C` of a tetrahedral mesh.
pub fn euler_3d(mesh: &TetMesh) -> i128 {
    CellComplexCounts::from_tets(mesh).euler()
}

/// `N - N_E + N_F - N_C` of explicit counts.
pub fn euler_3d_counts(c: &CellComplexCounts) -> Result<i128, TopoError> {
    c.validate()?;
    Ok(c.euler())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryRelation {
    pub chi_volume: i128,
    pub chi_boundary: i128,
    /// `χ(R) = χ(∂R)/2`.
    pub consistent: bool,
}

/// Compares the Euler characteristic of the mesh with that of its boundary.
/// The boundary must be a closed 2-manifold.
pub fn boundary_euler_relation(mesh: &TetMesh) -> Result<BoundaryRelation, TopoError> {
    check_boundary_manifold(mesh)?;
    let c = CellComplexCounts::from_tets(mesh);
    let (chi_volume, chi_boundary) = (c.euler(), c.boundary_euler());
    Ok(BoundaryRelation { chi_volume, chi_boundary, consistent: 2 * chi_volume == chi_boundary })
}

fn check_boundary_manifold(mesh: &TetMesh) -> Result<(), TopoError> {
    use crate::error::MeshError::NonManifold;
    let mut edge_use: HashMap<[usize; 2], u32> = HashMap::new();
    let mut links: HashMap<usize, Vec<[usize; 2]>> = HashMap::new();
    for f in &mesh.boundary_tris {
        for i in 0..3 {
            let (a, b, c) = (f[i], f[(i + 1) % 3], f[(i + 2) % 3]);
            *edge_use.entry(if a < b { [a, b] } else { [b, a] }).or_default() += 1;
            links.entry(a).or_default().push([b, c]);
        }
    }
    if let Some((e, n)) = edge_use.iter().find(|(_, &n)| n != 2) {
        return Err(NonManifold(format!("boundary edge {e:?} is used by {n} triangles")).into());
    }
    for (v, link) in &links {
        // the link of a manifold vertex is one cycle
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for [b, c] in link {
            adj.entry(*b).or_default().push(*c);
            adj.entry(*c).or_default().push(*b);
        }
        let start = link[0][0];
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in &adj[&x] {
                if seen.insert(*y) {
                    stack.push(*y);
                }
            }
        }
        if seen.len() != adj.len() {
            return Err(NonManifold(format!("boundary vertex {v} has a disconnected link")).into());
        }
    }
    Ok(())
}

/// Outcome of [`hex_regularity_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HexRegularity {
    /// `8χ` after substituting the regularity identities into `χ`.
    pub chi_times_8: i128,
    /// `8χ` from the actual counts.
    pub actual_chi_times_8: i128,
    /// Whether each of the cell, edge and face identities holds.
    pub identities: [bool; 3],
    pub regular_consistent: bool,
}

/// Right-hand sides of the identities for `8 N_C`, `2 N_E`, `4 N_F`.
pub fn regularity_rhs(c: &CellComplexCounts) -> [i128; 3] {
    let (nn, nb) = (c.vertices as i128, c.boundary_vertices as i128);
    let kl = c.loops as i128 * c.loop_edges as i128;
    let inner = nn - nb - kl;
    [8 * inner + 4 * nb + 6 * kl, 6 * inner + 5 * nb + 5 * kl, 12 * inner + 8 * nb + 9 * kl]
}

/// Substitutes the regular-hex identities (with `k` loops of `L` singular
/// edges when `kL > 0`) into `χ` and checks them against the actual counts.
pub fn hex_regularity_check(c: &CellComplexCounts) -> Result<HexRegularity, TopoError> {
    c.validate()?;
    let [cells8, edges2, faces4] = regularity_rhs(c);
    let chi_times_8 = 8 * c.vertices as i128 - 4 * edges2 + 2 * faces4 - cells8;
    let identities = [
        8 * c.cells as i128 == cells8,
        2 * c.edges as i128 == edges2,
        4 * c.faces as i128 == faces4,
    ];
    let actual = 8 * c.euler();
    Ok(HexRegularity {
        chi_times_8,
        actual_chi_times_8: actual,
        identities,
        regular_consistent: identities.iter().all(|&b| b) && actual == 0,
    })
}
