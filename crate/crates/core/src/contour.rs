//! Contour quadrature over `∂(Ω ∩ ℂ_I)` for axially symmetric domains:
//! Riesz projectors, the Lemma-2.4 scalar identities, the Cauchy formula
//! and the contour form of the functional calculus.
//!
//! Axial symmetry forces the loop set in a slice to be closed under
//! conjugation, so contours are unions of circles, each one mirrored across
//! the real axis unless centered on it. Circles are traversed
//! counterclockwise and integrated with the composite trapezoid rule, which
//! converges geometrically for the analytic integrands occurring here. With
//! `ds_I = -ds I` and `s(t) = c + r e^{It}` the quadrature increment is
//! `r e^{It} dt`, a quaternion in the slice plane.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::exec;
use crate::qmatrix::QMatrix;
use crate::quat::{exp_unit, sphere_of, Quaternion, UnitImaginary, UNIT_I};
use crate::sspectrum::{
    s_resolvent_left_unchecked, s_resolvent_right_unchecked, s_spectrum, SSpectrum,
};
use crate::tol;

/// One circle of a slice contour, in `(re, im)` coordinates of `ℂ_I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourLoop {
    pub center_re: f64,
    pub center_im: f64,
    pub radius: f64,
}

impl ContourLoop {
    pub fn new(center_re: f64, center_im: f64, radius: f64) -> Self {
        Self { center_re, center_im, radius }
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        (re - self.center_re).hypot(im - self.center_im) < self.radius
    }
}

/// A quadrature node: the point `s` on the contour and its increment
/// `ds_I dt` weight.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureNode {
    pub s: Quaternion,
    pub weight: Quaternion,
    pub loop_index: usize,
    pub node_index: usize,
}

/// Quadrature specification for `∂(Ω ∩ ℂ_I)`.
#[derive(Debug, Clone)]
pub struct ContourSpec {
    plane: UnitImaginary,
    loops: Vec<ContourLoop>,
    nodes_per_loop: usize,
}

const MIRROR_TOL: f64 = 1e-9;

impl ContourSpec {
    /// Validates loop geometry: at least 16 nodes per loop, pairwise
    /// disjoint circles, and closure under conjugation in `ℂ_I`.
    pub fn new(plane: UnitImaginary, loops: Vec<ContourLoop>, nodes_per_loop: usize) -> Result<Self> {
        if nodes_per_loop < 16 {
            return Err(Error::InvalidContour(format!(
                "nodes_per_loop {nodes_per_loop} below the minimum of 16"
            )));
        }
        for lp in &loops {
            if !lp.radius.is_finite() || lp.radius <= 0.0 {
                return Err(Error::InvalidContour(format!("radius {} not positive", lp.radius)));
            }
        }
        for (a, la) in loops.iter().enumerate() {
            for lb in loops.iter().skip(a + 1) {
                let d = (la.center_re - lb.center_re).hypot(la.center_im - lb.center_im);
                if d <= la.radius + lb.radius {
                    return Err(Error::InvalidContour(format!(
                        "loops at ({:.4},{:.4}) and ({:.4},{:.4}) intersect",
                        la.center_re, la.center_im, lb.center_re, lb.center_im
                    )));
                }
            }
        }
        for la in &loops {
            if la.center_im.abs() <= MIRROR_TOL {
                continue;
            }
            let mirrored = loops.iter().any(|lb| {
                (la.center_re - lb.center_re).abs() <= MIRROR_TOL
                    && (la.center_im + lb.center_im).abs() <= MIRROR_TOL
                    && (la.radius - lb.radius).abs() <= MIRROR_TOL
            });
            if !mirrored {
                return Err(Error::InvalidContour(format!(
                    "loop at ({:.4},{:.4}) has no conjugate mirror",
                    la.center_re, la.center_im
                )));
            }
        }
        Ok(Self { plane, loops, nodes_per_loop })
    }

    /// A single conjugation-symmetric circle centered on the real axis.
    pub fn real_circle(plane: UnitImaginary, center: f64, radius: f64, nodes: usize) -> Result<Self> {
        Self::new(plane, vec![ContourLoop::new(center, 0.0, radius)], nodes)
    }

    /// A mirrored pair of circles around `(re, ±im)`.
    pub fn mirrored_pair(plane: UnitImaginary, re: f64, im: f64, radius: f64, nodes: usize) -> Result<Self> {
        Self::new(
            plane,
            vec![ContourLoop::new(re, im, radius), ContourLoop::new(re, -im, radius)],
            nodes,
        )
    }

    pub fn plane(&self) -> &UnitImaginary {
        &self.plane
    }

    pub fn loops(&self) -> &[ContourLoop] {
        &self.loops
    }

    pub fn nodes_per_loop(&self) -> usize {
        self.nodes_per_loop
    }

    /// True iff `(re, im)` lies strictly inside one of the loops.
    pub fn encloses(&self, re: f64, im: f64) -> bool {
        self.loops.iter().any(|lp| lp.contains(re, im))
    }

    /// Both points of `[sphere] ∩ ℂ_I` lie inside the contour.
    pub fn encloses_sphere(&self, u: f64, v: f64) -> bool {
        self.encloses(u, v) && self.encloses(u, -v)
    }

    /// All quadrature nodes, counterclockwise per loop, in a fixed order.
    pub fn nodes(&self) -> Vec<QuadratureNode> {
        let m = self.nodes_per_loop;
        let dt = TAU / m as f64;
        let mut out = Vec::with_capacity(self.loops.len() * m);
        for (li, lp) in self.loops.iter().enumerate() {
            for k in 0..m {
                let t = dt * k as f64;
                let phase = exp_unit(&self.plane, t);
                let s = Quaternion::real(lp.center_re)
                    + self.plane.as_quaternion().scale(lp.center_im)
                    + phase.scale(lp.radius);
                // ds_I = -ds I with ds = r I e^{It} dt, so ds_I = r e^{It} dt
                let weight = phase.scale(lp.radius * dt);
                out.push(QuadratureNode { s, weight, loop_index: li, node_index: k });
            }
        }
        out
    }

    fn guard_nodes(&self, spectrum: &SSpectrum, eps_spec: f64) -> Result<Vec<QuadratureNode>> {
        let nodes = self.nodes();
        for node in &nodes {
            let (dist, sphere) = spectrum.distance_to(&node.s);
            if dist <= eps_spec {
                return Err(Error::ContourTouchesSpectrum {
                    loop_index: node.loop_index,
                    node_index: node.node_index,
                    dist,
                    sphere,
                });
            }
        }
        Ok(nodes)
    }
}

fn sum_terms(terms: Vec<Result<QMatrix>>, n: usize) -> Result<QMatrix> {
    let mut acc = QMatrix::zeros(n);
    for t in terms {
        acc = acc.add(&t?);
    }
    Ok(acc.scale(1.0 / TAU))
}

/// `(1/2π) ∮ S_L^{-1}(s, A) ds_I`, the left-resolvent contour integral.
pub fn integrate_left(c: &ContourSpec, a: &QMatrix) -> Result<QMatrix> {
    let spectrum = s_spectrum(a)?;
    let nodes = c.guard_nodes(&spectrum, tol::EPS_SPEC)?;
    let terms = exec::map_indexed(nodes.len(), |m| {
        let node = &nodes[m];
        Ok(s_resolvent_left_unchecked(&node.s, a)?.scale_right(node.weight))
    });
    sum_terms(terms, a.dim())
}

/// `(1/2π) ∮ ds_I S_R^{-1}(s, A)`, the right-resolvent variant.
pub fn integrate_right(c: &ContourSpec, a: &QMatrix) -> Result<QMatrix> {
    let spectrum = s_spectrum(a)?;
    let nodes = c.guard_nodes(&spectrum, tol::EPS_SPEC)?;
    let terms = exec::map_indexed(nodes.len(), |m| {
        let node = &nodes[m];
        Ok(s_resolvent_right_unchecked(&node.s, a)?.scale_left(node.weight))
    });
    sum_terms(terms, a.dim())
}

/// Knobs for automatic Riesz-projector contours.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub nodes_per_loop: usize,
    pub plane: UnitImaginary,
    /// Cap on automatic loop radii.
    pub max_radius: f64,
    /// Smallest tolerated gap between a contour and anything it must avoid.
    pub min_clearance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes_per_loop: 256, plane: UNIT_I, max_radius: 0.25, min_clearance: 1e-3 }
    }
}

impl QuadratureConfig {
    pub fn with_nodes(nodes_per_loop: usize) -> Self {
        Self { nodes_per_loop, ..Self::default() }
    }

    pub fn with_plane(plane: UnitImaginary) -> Self {
        Self { plane, ..Self::default() }
    }
}

/// Builds the conjugation-symmetric loop set around the selected spheres.
///
/// A sphere `(u, v)` gets two mirrored circles of radius
/// `r = min(max_radius, gap/2)` when `v > r`, otherwise one circle centered
/// at `u` on the real axis covering both sphere points. Radii shrink by a
/// hair below gap/2 so circles of adjacent selected spheres stay disjoint.
pub fn selection_contour(
    spectrum: &SSpectrum,
    selection: &[usize],
    cfg: &QuadratureConfig,
) -> Result<ContourSpec> {
    for &idx in selection {
        if idx >= spectrum.spheres.len() {
            return Err(Error::BadIndex { index: idx, count: spectrum.spheres.len() });
        }
    }
    let mut loops = Vec::new();
    for &idx in selection {
        let sp = spectrum.spheres[idx];
        let mut gap = f64::INFINITY;
        let mut blocker = None;
        for (other_idx, other) in spectrum.spheres.iter().enumerate() {
            if other_idx == idx {
                continue;
            }
            let d = sp.distance(other);
            if d < gap {
                gap = d;
                blocker = Some(other_idx);
            }
        }
        let r_auto = cfg.max_radius.min(0.5 * gap * (1.0 - 1e-6));
        if sp.v > r_auto {
            if r_auto < cfg.min_clearance || gap - r_auto < cfg.min_clearance {
                return Err(Error::ContourGeometry(format!(
                    "sphere {idx} (u={:.4}, v={:.4}) cannot be separated from sphere {:?} (gap {gap:.4})",
                    sp.u, sp.v, blocker
                )));
            }
            loops.push(ContourLoop::new(sp.u, sp.v, r_auto));
            loops.push(ContourLoop::new(sp.u, -sp.v, r_auto));
        } else {
            // distance from the real-axis center to every other spectral point
            let mut d_min = f64::INFINITY;
            for (other_idx, other) in spectrum.spheres.iter().enumerate() {
                if other_idx == idx {
                    continue;
                }
                d_min = d_min.min((sp.u - other.u).hypot(other.v));
            }
            let radius = if d_min.is_finite() {
                (sp.v + r_auto).min(0.5 * (sp.v + d_min))
            } else {
                sp.v + r_auto
            };
            if radius - sp.v < cfg.min_clearance || d_min - radius < cfg.min_clearance {
                return Err(Error::ContourGeometry(format!(
                    "sphere {idx} (u={:.4}, v={:.4}) cannot be separated from sphere {:?} (gap {gap:.4})",
                    sp.u, sp.v, blocker
                )));
            }
            loops.push(ContourLoop::new(sp.u, 0.0, radius));
        }
    }
    ContourSpec::new(cfg.plane, loops, cfg.nodes_per_loop)
}

/// Riesz projector `P(σ)` for the selected spheres of `σ_S(A)`.
pub fn riesz_projector(a: &QMatrix, selection: &[usize], cfg: &QuadratureConfig) -> Result<QMatrix> {
    if selection.is_empty() {
        return Ok(QMatrix::zeros(a.dim()));
    }
    let spectrum = s_spectrum(a)?;
    let contour = selection_contour(&spectrum, selection, cfg)?;
    integrate_left(&contour, a)
}

/// `(1/2π) ∮ ds_I (s̄ B - B p)(p² - 2 s0 p + |s|²)^{-1}`: equals `B` when
/// `[p] ∩ ℂ_I` lies inside the loops and `0` when outside.
pub fn check_lemma_identity(b: &QMatrix, p: &Quaternion, c: &ContourSpec) -> Result<QMatrix> {
    let p_sphere = sphere_of(p);
    let nodes = c.nodes();
    for node in &nodes {
        let dist = sphere_of(&node.s).distance(&p_sphere);
        if dist <= tol::EPS_SPEC {
            return Err(Error::ContourTouchesSpectrum {
                loop_index: node.loop_index,
                node_index: node.node_index,
                dist,
                sphere: p_sphere,
            });
        }
    }
    let terms = exec::map_indexed(nodes.len(), |m| {
        let node = &nodes[m];
        let s = node.s;
        let denom = *p * *p - p.scale(2.0 * s.re()) + Quaternion::real(s.norm_sqr());
        let core = b.scale_left(s.conj()).sub(&b.scale_right(*p));
        Ok(core.scale_left(node.weight).scale_right(denom.inverse()?))
    });
    sum_terms(terms, b.dim())
}

/// A polynomial `Σ q^m a_m` with quaternion coefficients on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct RightPoly {
    coeffs: Vec<Quaternion>,
}

/// Largest supported polynomial degree for contour evaluation.
pub const MAX_POLY_DEGREE: usize = 32;

impl RightPoly {
    pub fn new(coeffs: Vec<Quaternion>) -> Result<Self> {
        if coeffs.len() > MAX_POLY_DEGREE + 1 {
            return Err(Error::InvalidConfig(format!(
                "polynomial degree {} exceeds {MAX_POLY_DEGREE}",
                coeffs.len().saturating_sub(1)
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn constant(a: Quaternion) -> Self {
        Self { coeffs: vec![a] }
    }

    /// The monomial `q^m a`.
    pub fn monomial(m: usize, a: Quaternion) -> Result<Self> {
        let mut coeffs = vec![Quaternion::zero(); m + 1];
        coeffs[m] = a;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// Pointwise value by Horner: `a_0 + q (a_1 + q (a_2 + ...))`.
    pub fn eval(&self, q: &Quaternion) -> Quaternion {
        let mut acc = Quaternion::zero();
        for a in self.coeffs.iter().rev() {
            acc = *q * acc + *a;
        }
        acc
    }

    /// Matrix value `Σ A^m a_m` by the same scheme.
    pub fn eval_matrix(&self, a: &QMatrix) -> QMatrix {
        let n = a.dim();
        let mut acc = QMatrix::zeros(n);
        for coeff in self.coeffs.iter().rev() {
            acc = a.mul(&acc).add(&QMatrix::identity(n).scale_right(*coeff));
        }
        acc
    }
}

/// Scalar Cauchy integral `(1/2π) ∮ S_L^{-1}(s, q) ds_I f(s)` reproducing
/// `f(q)` for the right-coefficient polynomial `f`.
pub fn cauchy_eval(poly: &RightPoly, q: &Quaternion, c: &ContourSpec) -> Result<Quaternion> {
    let sp = sphere_of(q);
    if !c.encloses_sphere(sp.u, sp.v) {
        return Err(Error::ContourGeometry(format!(
            "[q] with (u={:.4}, v={:.4}) is not enclosed by the contour",
            sp.u, sp.v
        )));
    }
    let nodes = c.nodes();
    let mut acc = Quaternion::zero();
    for node in &nodes {
        let kernel = crate::sspectrum::cauchy_kernel_left(&node.s, q)?;
        acc += kernel * node.weight * poly.eval(&node.s);
    }
    Ok(acc.scale(1.0 / TAU))
}

/// Contour functional calculus `f(A) = (1/2π) ∮ S_L^{-1}(s, A) ds_I f(s)`.
///
/// The contour must enclose all of `σ_S(A)`.
pub fn funcalc_contour(poly: &RightPoly, a: &QMatrix, c: &ContourSpec) -> Result<QMatrix> {
    let spectrum = s_spectrum(a)?;
    for sp in &spectrum.spheres {
        if !c.encloses_sphere(sp.u, sp.v) {
            return Err(Error::ContourGeometry(format!(
                "sphere (u={:.4}, v={:.4}) of the S-spectrum is not enclosed",
                sp.u, sp.v
            )));
        }
    }
    let nodes = c.guard_nodes(&spectrum, tol::EPS_SPEC)?;
    let terms = exec::map_indexed(nodes.len(), |m| {
        let node = &nodes[m];
        let value = node.weight * poly.eval(&node.s);
        Ok(s_resolvent_left_unchecked(&node.s, a)?.scale_right(value))
    });
    sum_terms(terms, a.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{I, J, K, ONE, UNIT_J};
    use crate::random;

    fn diag(entries: &[Quaternion]) -> QMatrix {
        QMatrix::diagonal(entries)
    }

    #[test]
    fn spec_validation() {
        assert!(ContourSpec::real_circle(UNIT_I, 0.0, 1.0, 8).is_err());
        // intersecting loops rejected
        assert!(ContourSpec::new(
            UNIT_I,
            vec![ContourLoop::new(0.0, 0.0, 1.0), ContourLoop::new(1.0, 0.0, 1.0)],
            64
        )
        .is_err());
        // missing mirror rejected
        assert!(ContourSpec::new(UNIT_I, vec![ContourLoop::new(0.0, 1.0, 0.2)], 64).is_err());
        // mirrored pair accepted
        assert!(ContourSpec::mirrored_pair(UNIT_I, 0.0, 1.0, 0.2, 64).is_ok());
    }

    #[test]
    fn full_circle_gives_identity() {
        let a = diag(&[Quaternion::real(2.0), Quaternion::real(3.0)]);
        let c = ContourSpec::real_circle(UNIT_I, 2.5, 1.0, 256).unwrap();
        let p = integrate_left(&c, &a).unwrap();
        assert!(p.approx_eq(&QMatrix::identity(2), 1e-8));
    }

    #[test]
    fn empty_region_gives_zero() {
        let a = diag(&[Quaternion::real(2.0), Quaternion::real(3.0)]);
        let c = ContourSpec::real_circle(UNIT_I, 10.0, 1.0, 256).unwrap();
        let p = integrate_left(&c, &a).unwrap();
        assert!(p.frobenius() < 1e-8);
    }

    #[test]
    fn partial_circle_gives_idempotent() {
        let a = diag(&[Quaternion::real(2.0), Quaternion::real(3.0)]);
        let c = ContourSpec::real_circle(UNIT_I, 2.0, 0.4, 256).unwrap();
        let p = integrate_left(&c, &a).unwrap();
        let expect = diag(&[Quaternion::real(1.0), Quaternion::zero()]);
        assert!(p.approx_eq(&expect, 1e-8));
        assert!(p.mul(&p).approx_eq(&p, 1e-8));
        assert!(p.mul(&a).approx_eq(&a.mul(&p), 1e-8));
    }

    #[test]
    fn node_on_spectrum_rejected() {
        let a = diag(&[Quaternion::real(2.0), Quaternion::real(3.0)]);
        // node at angle 0 lands exactly on the real point 3
        let c = ContourSpec::real_circle(UNIT_I, 2.9, 0.1, 64).unwrap();
        assert!(matches!(
            integrate_left(&c, &a),
            Err(Error::ContourTouchesSpectrum { .. })
        ));
    }

    #[test]
    fn riesz_projector_examples() {
        let a = diag(&[I, Quaternion::real(3.0)]);
        let cfg = QuadratureConfig::default();
        // full selection reproduces the identity
        let full = riesz_projector(&a, &[0, 1], &cfg).unwrap();
        assert!(full.approx_eq(&QMatrix::identity(2), 1e-7));
        // sphere (0, 1) alone projects onto the i-eigencomponent
        let p = riesz_projector(&a, &[0], &cfg).unwrap();
        let expect = diag(&[Quaternion::real(1.0), Quaternion::zero()]);
        assert!(p.approx_eq(&expect, 1e-7));
        // additivity over the disjoint selections
        let q = riesz_projector(&a, &[1], &cfg).unwrap();
        assert!(p.add(&q).approx_eq(&full, 2e-7));
        // empty selection
        let empty = riesz_projector(&a, &[], &cfg).unwrap();
        assert!(empty.frobenius() == 0.0);
        assert!(riesz_projector(&a, &[7], &cfg).is_err());
    }

    #[test]
    fn auto_geometry_rejects_tight_gaps() {
        // spheres 5e-4 apart cannot be separated within min_clearance
        let a = diag(&[Quaternion::real(2.0), Quaternion::real(2.0005)]);
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            riesz_projector(&a, &[0], &cfg),
            Err(Error::ContourGeometry(_))
        ));
    }

    #[test]
    fn riesz_projector_in_other_plane() {
        let a = diag(&[I, Quaternion::real(3.0)]);
        let base = riesz_projector(&a, &[0], &QuadratureConfig::default()).unwrap();
        let rotated = riesz_projector(&a, &[0], &QuadratureConfig::with_plane(UNIT_J)).unwrap();
        assert!(base.approx_eq(&rotated, 2e-7));
    }

    #[test]
    fn right_resolvent_variant_agrees() {
        let a = random::random_unitary(3, 17).unwrap();
        let spectrum = s_spectrum(&a).unwrap();
        let cfg = QuadratureConfig::default();
        let selection: Vec<usize> = (0..spectrum.spheres.len()).collect();
        let contour = selection_contour(&spectrum, &selection, &cfg).unwrap();
        let left = integrate_left(&contour, &a).unwrap();
        let right = integrate_right(&contour, &a).unwrap();
        assert!(left.approx_eq(&right, 2e-7));
    }

    #[test]
    fn quadrature_doubling_converges() {
        let a = diag(&[I, Quaternion::real(3.0)]);
        let p256 = riesz_projector(&a, &[0], &QuadratureConfig::default()).unwrap();
        let p512 = riesz_projector(&a, &[0], &QuadratureConfig::with_nodes(512)).unwrap();
        assert!(p256.sub(&p512).frobenius() <= tol::EPS_Q / 10.0);
    }

    #[test]
    fn lemma_identity_inside_outside() {
        let b = random::random_qmatrix(2, 31);
        let c = ContourSpec::mirrored_pair(UNIT_I, 0.0, 0.5, 0.25, 256).unwrap();
        let p_inside = Quaternion::new(0.0, 0.5, 0.0, 0.0);
        let got = check_lemma_identity(&b, &p_inside, &c).unwrap();
        assert!(got.approx_eq(&b, 1e-8), "residual {}", got.sub(&b).frobenius());

        let p_outside = Quaternion::new(3.0, 1.0, 0.0, 0.0);
        let got = check_lemma_identity(&b, &p_outside, &c).unwrap();
        assert!(got.frobenius() < 1e-8);

        let zero = QMatrix::zeros(2);
        let got = check_lemma_identity(&zero, &p_inside, &c).unwrap();
        assert!(got.frobenius() == 0.0);
    }

    #[test]
    fn lemma_identity_quaternionic_point() {
        // p with [p] meeting the plane of the contour away from its own axis
        let b = random::random_qmatrix(2, 77);
        let c = ContourSpec::mirrored_pair(UNIT_I, 0.1, 0.6, 0.25, 256).unwrap();
        let p = Quaternion::new(0.1, 0.0, 0.6, 0.0); // 0.1 + 0.6 j
        let got = check_lemma_identity(&b, &p, &c).unwrap();
        assert!(got.approx_eq(&b, 1e-8));
    }

    #[test]
    fn cauchy_eval_examples() {
        let c = ContourSpec::real_circle(UNIT_I, 0.0, 3.0, 256).unwrap();
        // f(s) = s² at q = 1 + i gives 2i
        let sq = RightPoly::monomial(2, ONE).unwrap();
        let q = ONE + I;
        let got = cauchy_eval(&sq, &q, &c).unwrap();
        assert!(got.approx_eq(&(I + I), 1e-10));
        // constants reproduce
        let one = RightPoly::constant(ONE);
        assert!(cauchy_eval(&one, &q, &c).unwrap().approx_eq(&ONE, 1e-10));
        // right coefficient: f(s) = s j at q = i gives k
        let sj = RightPoly::monomial(1, J).unwrap();
        assert!(cauchy_eval(&sj, &I, &c).unwrap().approx_eq(&K, 1e-10));
        // outside the contour
        let far = Quaternion::real(5.0);
        assert!(cauchy_eval(&one, &far, &c).is_err());
    }

    #[test]
    fn funcalc_contour_examples() {
        let c = ContourSpec::real_circle(UNIT_I, 0.0, 3.0, 256).unwrap();
        let a = random::random_unitary(2, 5).unwrap();
        // f(s) = s reproduces A
        let id = RightPoly::monomial(1, ONE).unwrap();
        assert!(funcalc_contour(&id, &a, &c).unwrap().approx_eq(&a, tol::EPS_Q));
        // f(s) = s² on diag(i, j) is -I
        let b = diag(&[I, J]);
        let sq = RightPoly::monomial(2, ONE).unwrap();
        let got = funcalc_contour(&sq, &b, &c).unwrap();
        assert!(got.approx_eq(&QMatrix::identity(2).scale(-1.0), tol::EPS_Q));
        // constant right coefficient k on [i]
        let ik = RightPoly::constant(K);
        let got = funcalc_contour(&ik, &QMatrix::scalar(I), &c).unwrap();
        assert!(got.approx_eq(&QMatrix::scalar(K), tol::EPS_Q));
        // matches the direct Horner evaluation
        let poly = RightPoly::new(vec![ONE, I, J, Quaternion::new(0.5, 0.0, 0.0, -1.0)]).unwrap();
        let got = funcalc_contour(&poly, &a, &c).unwrap();
        assert!(got.approx_eq(&poly.eval_matrix(&a), tol::EPS_Q));
    }

    #[test]
    fn funcalc_requires_enclosed_spectrum() {
        let a = diag(&[Quaternion::real(2.0), Quaternion::real(5.0)]);
        let c = ContourSpec::real_circle(UNIT_I, 2.0, 1.0, 64).unwrap();
        let id = RightPoly::monomial(1, ONE).unwrap();
        assert!(matches!(funcalc_contour(&id, &a, &c), Err(Error::ContourGeometry(_))));
    }
}
