//! Default tolerances shared across the crate.

/// Quadrature accuracy target for contour integrals.
pub const EPS_Q: f64 = 1e-7;
/// Positive-semidefiniteness slack for measure checks.
pub const EPS_PSD: f64 = 1e-10;
/// chi-symmetry residual allowed when pulling complex matrices back to
/// quaternionic form.
pub const EPS_SYM: f64 = 1e-10;
/// Eigenvalue clustering radius in the (u, v) half-plane (scaled by
/// `1 + ||A||_F` where noted).
pub const EPS_CLUSTER: f64 = 1e-8;
/// Guard distance from quadrature/resolvent points to the S-spectrum.
pub const EPS_SPEC: f64 = 1e-8;
/// Slice-continuity residual on the sampling grid.
pub const EPS_SLICE: f64 = 1e-9;
/// Relative singularity threshold for matrix inversion.
pub const EPS_SING: f64 = 1e-12;
/// Points below this imaginary magnitude count as real.
pub const EPS_REAL: f64 = 1e-12;
