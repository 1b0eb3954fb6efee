//! Slice continuous functions, intrinsic decomposition, trigonometric
//! polynomials, Fejér/Weierstrass approximation and the spectral-theorem
//! functional calculus `f(U)`.
//!
//! A slice function `f(u + Iv) = α(u, v) + I β(u, v)` needs `α` even and
//! `β` odd in `v`; it is intrinsic when both are real-valued. Intrinsic
//! functions act on a spectral decomposition through
//! `Σ_k f(e^{iλ_k}) P_k`, which stays in the image of chi; a general slice
//! function splits as `f = f0 + f1 i + f2 j + f3 k` with intrinsic pieces
//! and the unit factors multiply the assembled matrices entrywise on the
//! right.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmatrix::QMatrix;
use crate::quat::{exp_unit, Quaternion, UnitImaginary};
use crate::spectral::{decompose, SpectralDecomposition};
use crate::tol;

type Field = Arc<dyn Fn(f64, f64) -> Quaternion + Send + Sync>;

/// `f(u + Iv) = α(u, v) + I β(u, v)` with quaternion-valued components.
#[derive(Clone)]
pub struct SliceFunction {
    alpha: Field,
    beta: Field,
    declared_intrinsic: bool,
}

impl std::fmt::Debug for SliceFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SliceFunction")
            .field("declared_intrinsic", &self.declared_intrinsic)
            .finish()
    }
}

/// Grid size for slice-continuity and symmetry checks on the circle.
const GRID: usize = 257;

impl SliceFunction {
    pub fn new<A, B>(alpha: A, beta: B) -> Self
    where
        A: Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
        B: Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
    {
        Self { alpha: Arc::new(alpha), beta: Arc::new(beta), declared_intrinsic: false }
    }

    /// An intrinsic function from real-valued components.
    pub fn intrinsic<A, B>(alpha: A, beta: B) -> Self
    where
        A: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        B: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            alpha: Arc::new(move |u, v| Quaternion::real(alpha(u, v))),
            beta: Arc::new(move |u, v| Quaternion::real(beta(u, v))),
            declared_intrinsic: true,
        }
    }

    pub fn declared_intrinsic(&self) -> bool {
        self.declared_intrinsic
    }

    pub fn alpha(&self, u: f64, v: f64) -> Quaternion {
        (self.alpha)(u, v)
    }

    pub fn beta(&self, u: f64, v: f64) -> Quaternion {
        (self.beta)(u, v)
    }

    /// Value `α + I β` at the slice point `u + I v`.
    pub fn eval(&self, u: f64, v: f64, unit: &UnitImaginary) -> Quaternion {
        self.alpha(u, v) + unit.as_quaternion() * self.beta(u, v)
    }

    /// Value of an intrinsic function on the circle as an element of `ℂ_i`.
    pub fn eval_circle_complex(&self, t: f64) -> Complex64 {
        Complex64::new(self.alpha(t.cos(), t.sin()).w, self.beta(t.cos(), t.sin()).w)
    }

    /// Checks the slice symmetries `α(u,v) = α(u,-v)`, `β(u,v) = -β(u,-v)`
    /// on the circle grid; intrinsic declarations additionally require real
    /// component values.
    pub fn validate_on_circle(&self, eps_slice: f64) -> Result<()> {
        let mut worst = (0.0f64, 0.0f64, 0.0f64);
        for m in 0..GRID {
            let t = TAU * m as f64 / GRID as f64;
            let (u, v) = (t.cos(), t.sin());
            let mut res = (self.alpha(u, v) - self.alpha(u, -v)).norm();
            res = res.max((self.beta(u, v) + self.beta(u, -v)).norm());
            if self.declared_intrinsic {
                res = res.max(self.alpha(u, v).im_norm()).max(self.beta(u, v).im_norm());
            }
            if res > worst.0 {
                worst = (res, u, v);
            }
        }
        if worst.0 > eps_slice {
            return Err(Error::NotSliceContinuous { residual: worst.0, u: worst.1, v: worst.2 });
        }
        Ok(())
    }

    /// Splits into the four intrinsic components of `f = f0 + f1 i + f2 j + f3 k`.
    pub fn intrinsic_split(&self) -> Result<[SliceFunction; 4]> {
        self.validate_on_circle(tol::EPS_SLICE)?;
        let comps = [
            |q: Quaternion| q.w,
            |q: Quaternion| q.x,
            |q: Quaternion| q.y,
            |q: Quaternion| q.z,
        ];
        Ok(comps.map(|proj| {
            let a = Arc::clone(&self.alpha);
            let b = Arc::clone(&self.beta);
            SliceFunction {
                alpha: Arc::new(move |u, v| Quaternion::real(proj(a(u, v)))),
                beta: Arc::new(move |u, v| Quaternion::real(proj(b(u, v)))),
                declared_intrinsic: true,
            }
        }))
    }

    /// Pointwise product of intrinsic functions (again intrinsic):
    /// `(α1 + Iβ1)(α2 + Iβ2) = (α1α2 - β1β2) + I(α1β2 + β1α2)`.
    pub fn product_intrinsic(f: &SliceFunction, g: &SliceFunction) -> SliceFunction {
        let (fa, fb) = (Arc::clone(&f.alpha), Arc::clone(&f.beta));
        let (ga, gb) = (Arc::clone(&g.alpha), Arc::clone(&g.beta));
        let (fa2, fb2) = (Arc::clone(&f.alpha), Arc::clone(&f.beta));
        let (ga2, gb2) = (Arc::clone(&g.alpha), Arc::clone(&g.beta));
        SliceFunction {
            alpha: Arc::new(move |u, v| {
                Quaternion::real(fa(u, v).w * ga(u, v).w - fb(u, v).w * gb(u, v).w)
            }),
            beta: Arc::new(move |u, v| {
                Quaternion::real(fa2(u, v).w * gb2(u, v).w + fb2(u, v).w * ga2(u, v).w)
            }),
            declared_intrinsic: true,
        }
    }

    /// Built-in functions reachable from the command line.
    pub fn builtin(name: &str) -> Option<SliceFunction> {
        match name {
            "identity" => Some(SliceFunction::intrinsic(|u, _| u, |_, v| v)),
            "inverse" => Some(SliceFunction::intrinsic(
                |u, v| u / (u * u + v * v),
                |u, v| -v / (u * u + v * v),
            )),
            "square" => Some(SliceFunction::intrinsic(|u, v| u * u - v * v, |u, v| 2.0 * u * v)),
            "cosine_part" => Some(SliceFunction::intrinsic(|u, _| u, |_, _| 0.0)),
            "abs_cos" => Some(SliceFunction::intrinsic(|u, _| u.abs(), |_, _| 0.0)),
            "exp_scaled" => Some(SliceFunction::intrinsic(
                |u, v| (0.5 * u).exp() * (0.5 * v).cos(),
                |u, v| (0.5 * u).exp() * (0.5 * v).sin(),
            )),
            _ => None,
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["identity", "inverse", "square", "cosine_part", "abs_cos", "exp_scaled"]
    }
}

/// Even/odd restoration of approximants:
/// `a(u,v) = (ã(u,v) + ã(u,-v))/2`, `b(u,v) = (b̃(u,-v) - b̃(u,v))/2`.
pub fn symmetrize<A, B>(
    a_tilde: A,
    b_tilde: B,
) -> (impl Fn(f64, f64) -> f64, impl Fn(f64, f64) -> f64)
where
    A: Fn(f64, f64) -> f64,
    B: Fn(f64, f64) -> f64,
{
    (
        move |u: f64, v: f64| 0.5 * (a_tilde(u, v) + a_tilde(u, -v)),
        move |u: f64, v: f64| 0.5 * (b_tilde(u, -v) - b_tilde(u, v)),
    )
}

/// A trigonometric polynomial `P(e^{It}) = Σ_{m=-n..n} e^{Imt} a_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<Quaternion>,
}

impl TrigPoly {
    /// Coefficients for `m = -n..=n`; the length must be odd.
    pub fn new(coeffs: Vec<Quaternion>) -> Result<Self> {
        if coeffs.len() % 2 != 1 {
            return Err(Error::InvalidConfig("coefficient list must have odd length 2n+1".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_terms(degree: usize, terms: &[(i64, Quaternion)]) -> Result<Self> {
        let mut coeffs = vec![Quaternion::zero(); 2 * degree + 1];
        for (m, a) in terms {
            let idx = m + degree as i64;
            if idx < 0 || idx >= coeffs.len() as i64 {
                return Err(Error::InvalidConfig(format!("index {m} outside degree {degree}")));
            }
            coeffs[idx as usize] += *a;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, m: i64) -> Quaternion {
        let idx = m + self.degree() as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Quaternion::zero()
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn has_real_coeffs(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|a| a.im_norm() <= tol)
    }

    /// `Σ e^{Imt} a_m` with the exponential on the left.
    pub fn eval_at(&self, t: f64, unit: &UnitImaginary) -> Quaternion {
        let n = self.degree() as i64;
        let mut acc = Quaternion::zero();
        for m in -n..=n {
            acc += exp_unit(unit, m as f64 * t) * self.coeff(m);
        }
        acc
    }

    /// Value in `ℂ_i` for real-coefficient polynomials.
    pub fn eval_complex(&self, t: f64) -> Complex64 {
        let n = self.degree() as i64;
        let mut acc = Complex64::new(0.0, 0.0);
        for m in -n..=n {
            acc += Complex64::from_polar(1.0, m as f64 * t) * Complex64::new(self.coeff(m).w, self.coeff(m).x);
        }
        acc
    }

    /// The slice function of a real-coefficient polynomial on the unit
    /// circle: `α = Σ a_m cos(mt)`, `β = Σ a_m sin(mt)` with `t = atan2(v, u)`.
    pub fn as_slice_function(&self) -> SliceFunction {
        let coeffs: Vec<f64> = self.coeffs.iter().map(|a| a.w).collect();
        let degree = self.degree() as i64;
        let c2 = coeffs.clone();
        SliceFunction::intrinsic(
            move |u: f64, v: f64| {
                let t = v.atan2(u);
                (-degree..=degree)
                    .map(|m| coeffs[(m + degree) as usize] * (m as f64 * t).cos())
                    .sum()
            },
            move |u: f64, v: f64| {
                let t = v.atan2(u);
                (-degree..=degree)
                    .map(|m| c2[(m + degree) as usize] * (m as f64 * t).sin())
                    .sum()
            },
        )
    }
}

/// Fejér (Cesàro) approximation of an intrinsic function on the circle,
/// then symmetrization back into the slice class; the result has real
/// coefficients.
///
/// In coefficient space the symmetrization formulas collapse to
/// `a_m = Re(d_{-m})` where `d` are the Fejér-damped Fourier coefficients.
pub fn weierstrass_approx(f: &SliceFunction, degree: usize) -> Result<TrigPoly> {
    f.validate_on_circle(tol::EPS_SLICE)?;
    let grid = 1024usize.max(4 * (degree + 1));
    let samples: Vec<Complex64> = (0..grid)
        .map(|k| f.eval_circle_complex(TAU * k as f64 / grid as f64))
        .collect();
    let n = degree as i64;
    let mut coeffs = vec![Quaternion::zero(); 2 * degree + 1];
    for m in -n..=n {
        let mut c = Complex64::new(0.0, 0.0);
        for (k, g) in samples.iter().enumerate() {
            let t = TAU * k as f64 / grid as f64;
            c += g * Complex64::from_polar(1.0, -(m as f64) * t);
        }
        c /= grid as f64;
        let damped = c * (1.0 - m.unsigned_abs() as f64 / (degree as f64 + 1.0));
        // a_{-m} receives Re(d_m)
        coeffs[(-m + n) as usize] = Quaternion::real(damped.re);
    }
    TrigPoly::new(coeffs)
}

/// Largest deviation `|P(e^{it}) - f(e^{it})|` over a uniform grid.
pub fn sup_error_on_grid(p: &TrigPoly, f: &SliceFunction, grid: usize) -> f64 {
    (0..grid)
        .map(|k| {
            let t = TAU * k as f64 / grid as f64;
            (p.eval_complex(t) - f.eval_circle_complex(t)).norm()
        })
        .fold(0.0, f64::max)
}

/// Direct evaluation `Σ_m U^m a_m` with negative powers through `U*`.
pub fn funcalc_trigpoly(p: &TrigPoly, u: &QMatrix) -> Result<QMatrix> {
    let residual = u.adjoint().mul(u).sub(&QMatrix::identity(u.dim())).frobenius();
    if residual > 1e-10 {
        return Err(Error::NotUnitary { residual });
    }
    let n = u.dim();
    let ustar = u.adjoint();
    let mut acc = QMatrix::identity(n).scale_right(p.coeff(0));
    let mut fwd = QMatrix::identity(n);
    let mut bwd = QMatrix::identity(n);
    for m in 1..=p.degree() as i64 {
        fwd = fwd.mul(u);
        bwd = bwd.mul(&ustar);
        acc = acc.add(&fwd.scale_right(p.coeff(m)));
        acc = acc.add(&bwd.scale_right(p.coeff(-m)));
    }
    Ok(acc)
}

/// Spectral functional calculus `f(U) = Σ_k f(e^{Iλ_k}) P_k` through the
/// intrinsic decomposition of `f`.
pub fn funcalc_spectral(f: &SliceFunction, d: &SpectralDecomposition) -> Result<QMatrix> {
    f.validate_on_circle(tol::EPS_SLICE)?;
    let frame = d.frame().clone();
    let n = d.dim();
    let units = {
        let (i, j, k) = frame.units();
        [None, Some(*i), Some(*j), Some(*k)]
    };
    let mut result = QMatrix::zeros(n);
    for (ell, unit) in units.iter().enumerate() {
        let values: Vec<Complex64> = d
            .distinct_angles()
            .iter()
            .map(|t| {
                let (u, v) = (t.cos(), t.sin());
                let ac = frame.to_coords(&(f.alpha)(u, v));
                let bc = frame.to_coords(&(f.beta)(u, v));
                let pick = |q: &Quaternion| match ell {
                    0 => q.w,
                    1 => q.x,
                    2 => q.y,
                    _ => q.z,
                };
                Complex64::new(pick(&ac), pick(&bc))
            })
            .collect();
        let piece = d.assemble(&values, tol::EPS_SYM).map_err(|e| match e {
            Error::NotInChiImage { residual, .. } => Error::CalculusInconsistency { residual },
            other => other,
        })?;
        result = match unit {
            None => result.add(&piece),
            Some(unit) => result.add(&piece.scale_right(unit.as_quaternion())),
        };
    }
    Ok(result)
}

/// One row of a Weierstrass convergence table.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub degree: usize,
    /// `||R_n(U) - f(U)||` in the operator 2-norm.
    pub operator_error: f64,
    /// `max_k |R_n(e^{iλ_k}) - f(e^{iλ_k})|` over the eigen-angles.
    pub sup_error_at_angles: f64,
    /// Sup error against `f` on a 1024-point circle grid.
    pub sup_error_on_grid: f64,
}

/// Builds `R_n = weierstrass_approx(f, n)` per degree and compares
/// `R_n(U)` with the spectral value `f(U)`; the operator error is bounded
/// by the eigen-angle sup error.
pub fn funcalc_converge(
    f: &SliceFunction,
    u: &QMatrix,
    degrees: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    let d = decompose(u)?;
    let reference = funcalc_spectral(f, &d)?;
    let mut rows = Vec::with_capacity(degrees.len());
    for &degree in degrees {
        let poly = weierstrass_approx(f, degree)?;
        let approx = funcalc_trigpoly(&poly, u)?;
        let operator_error = approx.sub(&reference).two_norm();
        let sup_angles = d
            .distinct_angles()
            .iter()
            .map(|t| (poly.eval_complex(*t) - f.eval_circle_complex(*t)).norm())
            .fold(0.0, f64::max);
        rows.push(ConvergenceRow {
            degree,
            operator_error,
            sup_error_at_angles: sup_angles,
            sup_error_on_grid: sup_error_on_grid(&poly, f, 1024),
        });
    }
    Ok(rows)
}

/// Shared entry used by the CLI: `f(U)` for a built-in or explicit
/// trigonometric polynomial, always through the spectral route.
pub fn funcalc_named(name: &str, u: &QMatrix) -> Result<QMatrix> {
    let f = SliceFunction::builtin(name)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown built-in function '{name}'")))?;
    let d = decompose(u)?;
    funcalc_spectral(&f, &d)
}
