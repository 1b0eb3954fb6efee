use thiserror::Error;

use crate::quat::EigenSphere;

/// Errors produced by the spectral toolkit.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("quaternion has zero norm and no inverse")]
    ZeroDivisor,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {0} outside supported range 1..=64")]
    DimensionOutOfRange(usize),

    #[error("matrix is not in the image of chi: symmetry residual {residual:.3e} exceeds {tol:.3e}")]
    NotInChiImage { residual: f64, tol: f64 },

    #[error("matrix is numerically singular (condition estimate {cond_estimate:.3e})")]
    NearSingular { cond_estimate: f64 },

    #[error("point lies on the S-spectrum: sphere (u={:.6}, v={:.6}) at distance {dist:.3e}", sphere.u, sphere.v)]
    OnSpectrum { sphere: EigenSphere, dist: f64 },

    #[error("Cauchy kernel singular: q belongs to the sphere [s]")]
    KernelSingular,

    #[error("contour touches the S-spectrum: node {node_index} on loop {loop_index} at distance {dist:.3e} from sphere (u={:.6}, v={:.6})", sphere.u, sphere.v)]
    ContourTouchesSpectrum {
        loop_index: usize,
        node_index: usize,
        dist: f64,
        sphere: EigenSphere,
    },

    #[error("contour geometry failure: {0}")]
    ContourGeometry(String),

    #[error("contour specification invalid: {0}")]
    InvalidContour(String),

    #[error("matrix is not unitary: residual {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("eigensolver failed: {0}")]
    EigenSolver(String),

    #[error("sequence is not Hermitian: residual {residual:.3e}")]
    NonHermitianSequence { residual: f64 },

    #[error("function is not slice continuous: worst residual {residual:.3e} at (u={u:.6}, v={v:.6})")]
    NotSliceContinuous { residual: f64, u: f64, v: f64 },

    #[error("selection not axially symmetric: angle index {0} has no mirror in the selection")]
    SelectionNotSymmetric(usize),

    #[error("invalid index {index}: only {count} available")]
    BadIndex { index: usize, count: usize },

    #[error("functional calculus inconsistency: intrinsic pullback symmetry residual {residual:.3e}")]
    CalculusInconsistency { residual: f64 },

    #[error("the units I and J do not anticommute: |<I,J>| = {0:.3e}")]
    UnitsNotOrthogonal(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
