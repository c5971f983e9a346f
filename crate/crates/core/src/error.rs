use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuatError {
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,
    #[error("rotation axis is not unit (|axis| = {norm})")]
    NonUnitAxis { norm: f64 },
    #[error("quaternion is not unit (|q| = {norm})")]
    NonUnit { norm: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecoverError {
    #[error("not on model surface (normalized residual {residual:e})")]
    NotOnSurface { residual: f64 },
    #[error("recovery is implemented for the octahedral family only")]
    WrongFamily,
    #[error("no candidates after filtering")]
    NoCandidates,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AxisError {
    #[error("axis is not unit (|n| = {norm})")]
    NonUnitAxis { norm: f64 },
    #[error("antipodal singularity: n_z = {nz} is too close to -1")]
    AntipodalSingularity { nz: f64 },
    #[error("degenerate chart: h0/a⁴ undefined for n_z = {nz}")]
    DegenerateChart { nz: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
