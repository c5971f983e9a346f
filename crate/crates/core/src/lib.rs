//! SU(2) parameterization of 3D octahedral frames.
//!
//! A 3D frame is an unordered orthonormal triple of axes. It is represented
//! by a unit quaternion up to right multiplication by the 48 elements of the
//! binary octahedral group. Mapping the quaternion to `(u, v) ∈ C²` and
//! evaluating three invariant polynomials gives a point `(h0, h1, h2)` of a
//! model surface in C³ that identifies the frame.
//!
//! Modules:
//! - [`quat`]: quaternion algebra and the complexification maps,
//! - [`groups`]: vierer, binary tetrahedral and binary octahedral groups,
//! - [`forms`]: the invariant forms and their model surfaces,
//! - [`recover`]: from a surface point back to the 48 `(u, v)` of a frame,
//! - [`axisforms`]: closed forms for frames sharing an axis,
//! - [`dist`]: frame distances and the two distance experiments.

pub mod axisforms;
pub mod dist;
pub mod error;
pub mod forms;
pub mod groups;
mod roots;
pub mod quat;
pub mod recover;

pub use error::{AxisError, DistError, QuatError, RecoverError};
pub use forms::SurfacePoint;
pub use groups::{GroupKind, Groupset};
pub use quat::{EulerAngles, FrameMap, Quaternion, SU2Coord};

pub use num_complex::Complex64;

/// A point or vector of R³.
pub type Vec3 = [f64; 3];
