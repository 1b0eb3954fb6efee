//! Spectral theory of quaternionic matrices built on the S-spectrum.
//!
//! The crate computes S-spectra and S-resolvents, contour-integral Riesz
//! projectors, spectral decompositions of quaternionic unitary matrices,
//! q-positive atomic spectral measures and a slice-continuous functional
//! calculus, all at finite dimension (n up to 64). Everything reduces to
//! dense complex linear algebra through the chi embedding
//! `A = A1 + A2 j  ->  [[A1, A2], [-conj(A2), conj(A1)]]`.
//!
//! Data-parallel sweeps (quadrature nodes, verification instances) run on
//! rayon under the default `parallel` feature and fall back to sequential
//! loops without it; results are identical either way.

pub mod cmatrix;
pub mod contour;
pub mod eig;
pub mod error;
pub mod exec;
pub mod qmatrix;
pub mod quat;
pub mod random;
pub mod slicefun;
pub mod spectral;
pub mod sspectrum;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use qmatrix::{QMatrix, QVector};
pub use quat::{EigenSphere, Quaternion, UnitImaginary};
