//! Tetrahedral meshes, Euler-characteristic bookkeeping and finite element
//! frame-field solvers built on the SU(2) frame coordinates of `su2frames`.

pub mod error;
pub mod fem;
pub mod mesh;
pub mod msh;
pub mod sparse;
pub mod topo;

pub use error::{FemError, MeshError, TopoError};
pub use fem::{FrameField, SolveOptions};
pub use mesh::TetMesh;
pub use msh::{load_mesh, parse_msh, write_msh};
