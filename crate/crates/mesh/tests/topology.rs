use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use su2frames_mesh::mesh::{hex_block_grid, periodic_hex_grid};
use su2frames_mesh::topo::{
    boundary_euler_relation, euler_3d, euler_3d_counts, hex_regularity_check, CellComplexCounts,
};
use su2frames_mesh::{load_mesh, TetMesh};

fn corpus() -> Vec<(String, TetMesh)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "msh"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), load_mesh(&p).unwrap()))
        .collect()
}

#[test]
fn corpus_meshes_satisfy_the_boundary_relation() {
    let meshes = corpus();
    assert!(meshes.len() >= 6);
    for (name, m) in &meshes {
        let r = boundary_euler_relation(m).unwrap();
        assert!(r.consistent, "{name}: {r:?}");
        assert_eq!(2 * r.chi_volume, r.chi_boundary, "{name}");
    }
}

#[test]
fn corpus_characteristics() {
    let expected = [
        ("grid3.msh", 1),
        ("grid3_jitter.msh", 1),
        ("hollow_cube.msh", 2),
        ("l_shape.msh", 1),
        ("tet.msh", 1),
        ("torus.msh", 0),
        ("two_tets.msh", 1),
        ("unit_box.msh", 1),
    ];
    let meshes = corpus();
    for (name, chi) in expected {
        let (_, m) = meshes.iter().find(|(n, _)| n == name).unwrap();
        assert_eq!(euler_3d(m), chi, "{name}");
    }
}

#[test]
fn generated_torus_has_zero_characteristic() {
    for (segments, cells) in [(3, 1), (6, 2), (12, 3)] {
        let t = TetMesh::solid_torus(4.0, 1.0, segments, cells).unwrap();
        assert_eq!(euler_3d(&t), 0);
        let r = boundary_euler_relation(&t).unwrap();
        assert_eq!((r.chi_volume, r.chi_boundary, r.consistent), (0, 0, true));
    }
}

#[test]
fn box_relation() {
    let r = boundary_euler_relation(&TetMesh::unit_box()).unwrap();
    assert_eq!((r.chi_volume, r.chi_boundary, r.consistent), (1, 2, true));
}

#[test]
fn hex_substitution_is_identically_zero() {
    // Symbolic in the sense that every admissible count tuple gives 0.
    for n in 0..40u64 {
        for nb in 0..=n {
            for (k, l) in [(0, 0), (1, 3), (2, 5), (3, 1)] {
                let c = CellComplexCounts { vertices: n + 20, boundary_vertices: nb, loops: k, loop_edges: l, ..Default::default() };
                assert_eq!(hex_regularity_check(&c).unwrap().chi_times_8, 0);
            }
        }
    }
}

#[test]
fn periodic_grids() {
    for n in 3..7 {
        let c = CellComplexCounts::from_hexes(&periodic_hex_grid(n));
        let n3 = (n * n * n) as u64;
        assert_eq!((c.vertices, c.edges, c.faces, c.cells), (n3, 3 * n3, 3 * n3, n3));
        let r = hex_regularity_check(&c).unwrap();
        assert_eq!((r.chi_times_8, r.regular_consistent), (0, true));
        let looped = CellComplexCounts { loops: 1, loop_edges: n as u64, ..c };
        assert_eq!(hex_regularity_check(&looped).unwrap().chi_times_8, 0);
    }
}

#[test]
fn block_grid_is_not_regular() {
    let c = CellComplexCounts::from_hexes(&hex_block_grid(3));
    assert_eq!(c.euler(), 1);
    let r = hex_regularity_check(&c).unwrap();
    assert_eq!(r.chi_times_8, 0);
    assert_eq!(r.actual_chi_times_8, 8);
    assert!(!r.regular_consistent);
}

fn reenumerate(tets: &[[usize; 4]]) -> i128 {
    let mut v = BTreeSet::new();
    let mut e = BTreeSet::new();
    let mut f = BTreeSet::new();
    for t in tets {
        for a in 0..4 {
            v.insert(t[a]);
            for b in a + 1..4 {
                let mut x = [t[a], t[b]];
                x.sort();
                e.insert(x);
                for c in b + 1..4 {
                    let mut y = [t[a], t[b], t[c]];
                    y.sort();
                    f.insert(y);
                }
            }
        }
    }
    v.len() as i128 - e.len() as i128 + f.len() as i128 - tets.len() as i128
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_matches_reenumeration(nx in 1usize..4, ny in 1usize..4, nz in 1usize..3, mask in proptest::collection::vec(any::<bool>(), 108)) {
        let g = TetMesh::box_grid([nx, ny, nz], [1.0, 1.0, 1.0]);
        let mut tets: Vec<_> = g.tets.iter().zip(mask.iter().cycle()).filter(|(_, &keep)| keep).map(|(t, _)| *t).collect();
        if tets.is_empty() {
            tets.push(g.tets[0]);
        }
        let used: BTreeSet<usize> = tets.iter().flatten().copied().collect();
        let remap: std::collections::HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let verts = used.iter().map(|&v| g.vertices[v]).collect();
        let tets: Vec<[usize; 4]> = tets.iter().map(|t| t.map(|v| remap[&v])).collect();
        let m = TetMesh::new(verts, tets.clone()).unwrap();
        let counts = CellComplexCounts::from_tets(&m);
        prop_assert_eq!(euler_3d(&m), reenumerate(&tets));
        prop_assert_eq!(euler_3d_counts(&counts).unwrap(), counts.euler());
    }

    #[test]
    fn grids_are_balls(nx in 1usize..5, ny in 1usize..5, nz in 1usize..5) {
        let g = TetMesh::box_grid([nx, ny, nz], [1.0, 2.0, 0.5]);
        let r = boundary_euler_relation(&g).unwrap();
        prop_assert_eq!((r.chi_volume, r.chi_boundary, r.consistent), (1, 2, true));
    }
}
