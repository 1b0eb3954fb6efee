//! The S-spectrum of a quaternionic matrix, the two S-resolvent operators,
//! the scalar Cauchy kernels and the S-resolvent equation.
//!
//! The S-spectrum is the set of `s` for which the characteristic operator
//! `Q_s(A) = A² - 2 Re(s) A + |s|² I` fails to be invertible. For matrices
//! it coincides with the set of right eigenvalues, so it is computed from
//! the eigenvalues of `chi(A)`: conjugate pairs `u ± iv` collapse onto the
//! sphere `(u, v)`, and each pair contributes one to the multiplicity.

use crate::eig;
use crate::error::{Error, Result};
use crate::qmatrix::{chi, invert, QMatrix};
use crate::quat::{sphere_of, EigenSphere, Quaternion};
use crate::tol;

/// The S-spectrum as a finite set of eigenspheres.
#[derive(Debug, Clone, PartialEq)]
pub struct SSpectrum {
    pub spheres: Vec<EigenSphere>,
    pub source_dim: usize,
}

impl SSpectrum {
    /// Half-plane distance from the sphere of `s` to the nearest
    /// spectral sphere, together with that sphere.
    pub fn distance_to(&self, s: &Quaternion) -> (f64, EigenSphere) {
        let probe = sphere_of(s);
        let mut best = (f64::INFINITY, probe);
        for sp in &self.spheres {
            let d = probe.distance(sp);
            if d < best.0 {
                best = (d, *sp);
            }
        }
        best
    }

    pub fn total_multiplicity(&self) -> usize {
        self.spheres.iter().map(|s| s.multiplicity).sum()
    }
}

/// Greedy single-linkage clustering of half-plane points.
fn cluster_points(points: &[(f64, f64)], radius: f64) -> Vec<Vec<usize>> {
    let m = points.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for a in 0..m {
        for b in a + 1..m {
            let d = (points[a].0 - points[b].0).hypot(points[a].1 - points[b].1);
            if d <= radius {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Computes the S-spectrum of `a` from the eigenvalues of `chi(a)`.
///
/// Every reported sphere is audited: the characteristic operator at the
/// sphere point must have a near-zero eigenvalue in its chi image.
pub fn s_spectrum(a: &QMatrix) -> Result<SSpectrum> {
    let n = a.dim();
    let eigs = eig::eigenvalues(&chi(a))?;
    let radius = tol::EPS_CLUSTER * (1.0 + a.frobenius());
    let points: Vec<(f64, f64)> = eigs.iter().map(|l| (l.re, l.im.abs())).collect();
    let groups = cluster_points(&points, radius);
    let mut spheres = Vec::with_capacity(groups.len());
    for group in groups {
        if group.len() % 2 != 0 {
            return Err(Error::EigenSolver(format!(
                "eigenvalue cluster of odd size {}: conjugate pairing broke down",
                group.len()
            )));
        }
        let u = group.iter().map(|&i| points[i].0).sum::<f64>() / group.len() as f64;
        let mut v = group.iter().map(|&i| points[i].1).sum::<f64>() / group.len() as f64;
        if v <= radius {
            v = 0.0;
        }
        spheres.push(EigenSphere::new(u, v, group.len() / 2));
    }
    spheres.sort_by(|a, b| (a.u, a.v).partial_cmp(&(b.u, b.v)).expect("finite"));
    let spectrum = SSpectrum { spheres, source_dim: n };
    if spectrum.total_multiplicity() != n {
        return Err(Error::EigenSolver(format!(
            "sphere multiplicities sum to {} instead of {n}",
            spectrum.total_multiplicity()
        )));
    }
    // Audit: Q_s(A) must be singular at each sphere point.
    let scale = 1.0 + a.frobenius();
    for sp in &spectrum.spheres {
        let q_s = characteristic_operator(a, sp.u, (sp.u * sp.u + sp.v * sp.v).sqrt());
        let vals = eig::eigenvalues(&chi(&q_s))?;
        let min = vals.iter().map(|l| l.norm()).fold(f64::INFINITY, f64::min);
        if min > tol::EPS_SPEC * scale * scale {
            return Err(Error::EigenSolver(format!(
                "audit failed: sphere (u={:.6}, v={:.6}) leaves Q_s nonsingular (min |eig| {min:.3e})",
                sp.u, sp.v
            )));
        }
    }
    Ok(spectrum)
}

/// `Q_s(A) = A² - 2 s0 A + |s|² I` given `s0 = Re(s)` and `|s|`.
fn characteristic_operator(a: &QMatrix, s0: f64, s_norm: f64) -> QMatrix {
    let n = a.dim();
    a.mul(a)
        .sub(&a.scale(2.0 * s0))
        .add(&QMatrix::identity(n).scale(s_norm * s_norm))
}

pub fn q_s(a: &QMatrix, s: &Quaternion) -> QMatrix {
    characteristic_operator(a, s.re(), s.norm())
}

fn guard_off_spectrum(spectrum: &SSpectrum, s: &Quaternion) -> Result<()> {
    let (dist, sphere) = spectrum.distance_to(s);
    if dist <= tol::EPS_SPEC {
        return Err(Error::OnSpectrum { sphere, dist });
    }
    Ok(())
}

/// Left S-resolvent `S_L^{-1}(s, A) = -Q_s(A)^{-1} (A - s̄ I)`, skipping the
/// spectral-distance guard. Inversion failures still surface as errors.
pub fn s_resolvent_left_unchecked(s: &Quaternion, a: &QMatrix) -> Result<QMatrix> {
    let n = a.dim();
    let q_inv = invert(&q_s(a, s))?;
    let shifted = a.sub(&QMatrix::identity(n).scale_right(s.conj()));
    Ok(q_inv.mul(&shifted).neg())
}

/// Right S-resolvent `S_R^{-1}(s, A) = -(A - s̄ I) Q_s(A)^{-1}`, unguarded.
pub fn s_resolvent_right_unchecked(s: &Quaternion, a: &QMatrix) -> Result<QMatrix> {
    let n = a.dim();
    let q_inv = invert(&q_s(a, s))?;
    let shifted = a.sub(&QMatrix::identity(n).scale_right(s.conj()));
    Ok(shifted.mul(&q_inv).neg())
}

/// Left S-resolvent with the spectral-distance precondition enforced.
pub fn s_resolvent_left(s: &Quaternion, a: &QMatrix) -> Result<QMatrix> {
    guard_off_spectrum(&s_spectrum(a)?, s)?;
    s_resolvent_left_unchecked(s, a)
}

/// Right S-resolvent with the spectral-distance precondition enforced.
pub fn s_resolvent_right(s: &Quaternion, a: &QMatrix) -> Result<QMatrix> {
    guard_off_spectrum(&s_spectrum(a)?, s)?;
    s_resolvent_right_unchecked(s, a)
}

/// Both resolvents at one point, with their defining-product residuals.
#[derive(Debug, Clone)]
pub struct ResolventSample {
    pub s: Quaternion,
    pub left: QMatrix,
    pub right: QMatrix,
}

impl ResolventSample {
    pub fn new(s: Quaternion, a: &QMatrix) -> Result<Self> {
        Ok(Self {
            s,
            left: s_resolvent_left(&s, a)?,
            right: s_resolvent_right(&s, a)?,
        })
    }

    /// Residuals of `Q_s(A)(-S_L) = A - s̄I` and `(-S_R) Q_s(A) = A - s̄I`.
    pub fn defining_residuals(&self, a: &QMatrix) -> (f64, f64) {
        let n = a.dim();
        let q = q_s(a, &self.s);
        let shifted = a.sub(&QMatrix::identity(n).scale_right(self.s.conj()));
        let left = q.mul(&self.left.neg()).sub(&shifted).frobenius();
        let right = self.right.neg().mul(&q).sub(&shifted).frobenius();
        (left, right)
    }
}

/// Scalar left Cauchy kernel `-(q² - 2 q Re(s) + |s|²)^{-1} (q - s̄)`.
pub fn cauchy_kernel_left(s: &Quaternion, q: &Quaternion) -> Result<Quaternion> {
    let denom = *q * *q - q.scale(2.0 * s.re()) + Quaternion::real(s.norm_sqr());
    if denom.norm() <= tol::EPS_SPEC {
        return Err(Error::KernelSingular);
    }
    Ok(-(denom.inverse()? * (*q - s.conj())))
}

/// Scalar right Cauchy kernel `-(q - s̄)(q² - 2 Re(s) q + |s|²)^{-1}`.
pub fn cauchy_kernel_right(s: &Quaternion, q: &Quaternion) -> Result<Quaternion> {
    let denom = *q * *q - q.scale(2.0 * s.re()) + Quaternion::real(s.norm_sqr());
    if denom.norm() <= tol::EPS_SPEC {
        return Err(Error::KernelSingular);
    }
    Ok(-((*q - s.conj()) * denom.inverse()?))
}

/// Residuals of both forms of the S-resolvent equation at `(s, p)`:
///
/// ```text
/// S_R(s) S_L(p) = ((S_R(s) - S_L(p)) p - s̄ (S_R(s) - S_L(p))) (p² - 2 s0 p + |s|²)^{-1}
/// S_R(s) S_L(p) = (s² - 2 p0 s + |p|²)^{-1} ((S_R(s) - S_L(p)) p̄ - s (S_R(s) - S_L(p)))
/// ```
pub fn check_resolvent_equation(s: &Quaternion, p: &Quaternion, a: &QMatrix) -> Result<(f64, f64)> {
    let spectrum = s_spectrum(a)?;
    guard_off_spectrum(&spectrum, s)?;
    guard_off_spectrum(&spectrum, p)?;
    if sphere_of(s).distance(&sphere_of(p)) <= tol::EPS_SPEC {
        return Err(Error::KernelSingular);
    }
    let s_r = s_resolvent_right_unchecked(s, a)?;
    let s_l = s_resolvent_left_unchecked(p, a)?;
    let lhs = s_r.mul(&s_l);
    let diff = s_r.sub(&s_l);

    let denom1 = *p * *p - p.scale(2.0 * s.re()) + Quaternion::real(s.norm_sqr());
    let rhs1 = diff
        .scale_right(*p)
        .sub(&diff.scale_left(s.conj()))
        .scale_right(denom1.inverse()?);

    let denom2 = *s * *s - s.scale(2.0 * p.re()) + Quaternion::real(p.norm_sqr());
    let rhs2 = diff
        .scale_right(p.conj())
        .sub(&diff.scale_left(*s))
        .scale_left(denom2.inverse()?);

    Ok((lhs.sub(&rhs1).frobenius(), lhs.sub(&rhs2).frobenius()))
}
