//! Dense complex Schur decomposition by Householder reduction to Hessenberg
//! form followed by Wilkinson-shifted QR iteration with deflation.
//!
//! A single complex shift suffices here (there is no real-arithmetic double
//! shift to emulate), and for normal inputs the triangular factor collapses
//! to a diagonal, which is how unitary matrices get their eigenvectors: the
//! accumulated Q columns. General inputs only ever need eigenvalues.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Unitary `Q` and upper-triangular `T` with `A = Q T Q*`.
pub struct Schur {
    pub q: CMatrix,
    pub t: CMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.dim()).map(|i| self.t[(i, i)]).collect()
    }

    /// Frobenius departure of `T` from diagonal form; tiny for normal inputs.
    pub fn off_diagonal_norm(&self) -> f64 {
        let m = self.t.dim();
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    acc += self.t[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn reconstruction_residual(&self, a: &CMatrix) -> f64 {
        self.q.mul(&self.t).mul(&self.q.adjoint()).sub(a).frobenius()
    }
}

/// Reduces `a` to Hessenberg form `h = q* a q`, returning `(h, q)`.
fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let m = a.dim();
    let mut h = a.clone();
    let mut q = CMatrix::identity(m);
    if m < 3 {
        return (h, q);
    }
    let mut u = vec![ZERO; m];
    for col in 0..m - 2 {
        let tail = m - col - 1;
        let mut norm_sq = 0.0;
        for r in 0..tail {
            norm_sq += h[(col + 1 + r, col)].norm_sqr();
        }
        let norm_x = norm_sq.sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let a0 = h[(col + 1, col)];
        let phase = if a0 == ZERO { Complex64::new(1.0, 0.0) } else { a0 / a0.norm() };
        let alpha = -phase * norm_x;
        u[0] = a0 - alpha;
        for r in 1..tail {
            u[r] = h[(col + 1 + r, col)];
        }
        let u_norm_sq: f64 = u[..tail].iter().map(|c| c.norm_sqr()).sum();
        if u_norm_sq <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / u_norm_sq;
        // H <- P H on rows col+1.., P = I - beta u u*
        for j in col..m {
            let mut s = ZERO;
            for r in 0..tail {
                s += u[r].conj() * h[(col + 1 + r, j)];
            }
            s *= beta;
            for r in 0..tail {
                let d = u[r] * s;
                h[(col + 1 + r, j)] -= d;
            }
        }
        // H <- H P on columns col+1..
        for i in 0..m {
            let mut s = ZERO;
            for r in 0..tail {
                s += h[(i, col + 1 + r)] * u[r];
            }
            s *= beta;
            for r in 0..tail {
                let d = s * u[r].conj();
                h[(i, col + 1 + r)] -= d;
            }
        }
        // Q <- Q P
        for i in 0..m {
            let mut s = ZERO;
            for r in 0..tail {
                s += q[(i, col + 1 + r)] * u[r];
            }
            s *= beta;
            for r in 0..tail {
                let d = s * u[r].conj();
                q[(i, col + 1 + r)] -= d;
            }
        }
        h[(col + 1, col)] = alpha;
        for r in 2..=tail {
            h[(col + r, col)] = ZERO;
        }
    }
    (h, q)
}

/// Rotation `[[c, s], [-conj(s), c]]` (c real) sending `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let amag = a.norm();
    let r = (amag * amag + b.norm_sqr()).sqrt();
    let c = amag / r;
    let s = (a / amag) * b.conj() / r;
    (c, s)
}

struct QrState {
    h: CMatrix,
    q: CMatrix,
    m: usize,
}

impl QrState {
    /// Similarity rotation on rows/columns `(p, p+1)`.
    /// Left action spans columns `col_lo..m`; right action rows `0..=row_hi`.
    fn rotate(&mut self, p: usize, c: f64, s: Complex64, col_lo: usize, row_hi: usize) {
        let m = self.m;
        let sc = s.conj();
        for j in col_lo..m {
            let hp = self.h[(p, j)];
            let hq = self.h[(p + 1, j)];
            self.h[(p, j)] = c * hp + s * hq;
            self.h[(p + 1, j)] = -sc * hp + c * hq;
        }
        for i in 0..=row_hi {
            let hp = self.h[(i, p)];
            let hq = self.h[(i, p + 1)];
            self.h[(i, p)] = c * hp + sc * hq;
            self.h[(i, p + 1)] = -s * hp + c * hq;
        }
        for i in 0..m {
            let qp = self.q[(i, p)];
            let qq = self.q[(i, p + 1)];
            self.q[(i, p)] = c * qp + sc * qq;
            self.q[(i, p + 1)] = -s * qp + c * qq;
        }
    }

    /// One implicit single-shift QR sweep on the active block `[lo, hi]`.
    fn sweep(&mut self, lo: usize, hi: usize, shift: Complex64) {
        let (c, s) = givens(self.h[(lo, lo)] - shift, self.h[(lo + 1, lo)]);
        self.rotate(lo, c, s, lo, hi.min(lo + 2));
        for k in lo + 1..hi {
            let (c, s) = givens(self.h[(k, k - 1)], self.h[(k + 1, k - 1)]);
            self.rotate(k, c, s, k - 1, hi.min(k + 2));
            self.h[(k + 1, k - 1)] = ZERO;
        }
    }
}

fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr_half = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    let l1 = tr_half + root;
    let l2 = tr_half - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Full Schur decomposition; errors if the QR iteration stalls.
pub fn schur(a: &CMatrix) -> Result<Schur> {
    let m = a.dim();
    if m == 0 {
        return Ok(Schur { q: CMatrix::identity(0), t: CMatrix::identity(0) });
    }
    let (h, q) = hessenberg(a);
    let mut st = QrState { h, q, m };
    let anorm = a.frobenius().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = m - 1;
    let mut stall = 0usize;
    let mut total = 0usize;
    let max_total = 80 * m + 200;
    while hi > 0 {
        // Deflation scan: find the top of the unreduced block ending at hi.
        let mut lo = hi;
        while lo > 0 {
            let sub = st.h[(lo, lo - 1)].norm();
            let local = st.h[(lo - 1, lo - 1)].norm() + st.h[(lo, lo)].norm();
            if sub <= eps * local.max(anorm * eps) {
                st.h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if st.h[(hi, hi - 1)] == ZERO {
            hi -= 1;
            stall = 0;
            continue;
        }
        let shift = if stall > 0 && stall.is_multiple_of(12) {
            st.h[(hi, hi)] + Complex64::new(0.75 * st.h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&st.h, hi)
        };
        st.sweep(lo, hi, shift);
        stall += 1;
        total += 1;
        if total > max_total {
            return Err(Error::EigenSolver(format!(
                "QR iteration did not converge after {total} sweeps (dim {m})"
            )));
        }
    }
    // Below-diagonal entries are structurally zero; scrub rounding residue.
    for i in 1..m {
        for j in 0..i {
            st.h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { q: st.q, t: st.h })
}

/// Eigenvalues of a general complex matrix.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(schur(a)?.eigenvalues())
}

/// Eigendecomposition of a normal matrix: eigenvalues plus an orthonormal
/// eigenbasis (the Schur `Q`). Rejects inputs whose triangular factor is
/// not numerically diagonal.
pub fn normal_eigen(a: &CMatrix, tol: f64) -> Result<(Vec<Complex64>, CMatrix)> {
    let s = schur(a)?;
    let off = s.off_diagonal_norm();
    let scale = a.frobenius().max(1.0);
    if off > tol * scale {
        return Err(Error::EigenSolver(format!(
            "input is not numerically normal: off-diagonal Schur mass {off:.3e}"
        )));
    }
    Ok((s.eigenvalues(), s.q))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_min_eigenvalue(a: &CMatrix) -> Result<f64> {
    let vals = eigenvalues(a)?;
    Ok(vals.iter().map(|v| v.re).fold(f64::INFINITY, f64::min))
}
