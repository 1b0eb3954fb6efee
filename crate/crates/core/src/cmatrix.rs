//! Dense complex matrices: storage, products, LU inversion and norms.
//!
//! These back the chi images of quaternionic matrices, so dimensions run up
//! to 128 (twice the quaternionic cap). Everything is row-major `Vec`
//! storage; no attempt at blocking is made at this scale.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense `m x m` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    m: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(m: usize) -> Self {
        Self { m, data: vec![Complex64::new(0.0, 0.0); m * m] }
    }

    pub fn identity(m: usize) -> Self {
        let mut a = Self::zeros(m);
        for i in 0..m {
            a[(i, i)] = Complex64::new(1.0, 0.0);
        }
        a
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let m = rows.len();
        let mut a = Self::zeros(m);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), m, "rows must form a square matrix");
            for (j, v) in row.iter().enumerate() {
                a[(i, j)] = *v;
            }
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = self.m;
        let mut out = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    // Sequential by intent: the chi images stay below 128x128, where task
    // dispatch costs more than the multiply.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "dimension mismatch in complex product");
        let m = self.m;
        let mut out = Self::zeros(m);
        for i in 0..m {
            for k in 0..m {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = rhs.row(k);
                let slot = &mut out.data[i * m..(i + 1) * m];
                for (o, r) in slot.iter_mut().zip(row) {
                    *o += a * r;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.m, x.len());
        (0..self.m)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn conj_entrywise(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.conj();
        }
        out
    }

    /// Max deviation from `A = A*`.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.m {
            for j in i..self.m {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Inverse by LU with partial pivoting. The smallest pivot relative to
    /// the Frobenius norm serves as the condition estimate carried by the
    /// near-singularity error.
    pub fn inverse(&self, rel_tol: f64) -> Result<Self> {
        let m = self.m;
        let scale = self.frobenius().max(f64::MIN_POSITIVE);
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..m).collect();
        let mut min_pivot = f64::INFINITY;
        for col in 0..m {
            let mut best = col;
            let mut best_mag = lu[col * m + col].norm();
            for r in col + 1..m {
                let mag = lu[r * m + col].norm();
                if mag > best_mag {
                    best = r;
                    best_mag = mag;
                }
            }
            if best_mag <= rel_tol * scale {
                return Err(Error::NearSingular { cond_estimate: best_mag / scale });
            }
            min_pivot = min_pivot.min(best_mag);
            if best != col {
                for j in 0..m {
                    lu.swap(col * m + j, best * m + j);
                }
                perm.swap(col, best);
            }
            let pivot = lu[col * m + col];
            for r in col + 1..m {
                let f = lu[r * m + col] / pivot;
                lu[r * m + col] = f;
                for j in col + 1..m {
                    let v = lu[col * m + j];
                    lu[r * m + j] -= f * v;
                }
            }
        }
        let _ = min_pivot;
        // Solve A X = I column by column through the factors.
        let mut out = Self::zeros(m);
        let mut b = vec![Complex64::new(0.0, 0.0); m];
        for rhs_col in 0..m {
            for (i, slot) in b.iter_mut().enumerate() {
                *slot = if perm[i] == rhs_col {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
            }
            for i in 1..m {
                let mut acc = b[i];
                for j in 0..i {
                    acc -= lu[i * m + j] * b[j];
                }
                b[i] = acc;
            }
            for i in (0..m).rev() {
                let mut acc = b[i];
                for j in i + 1..m {
                    acc -= lu[i * m + j] * b[j];
                }
                b[i] = acc / lu[i * m + i];
            }
            for i in 0..m {
                out[(i, rhs_col)] = b[i];
            }
        }
        Ok(out)
    }

    /// Operator 2-norm estimate by power iteration on `A* A`.
    pub fn two_norm(&self) -> f64 {
        let m = self.m;
        if m == 0 {
            return 0.0;
        }
        let at = self.adjoint();
        let mut v: Vec<Complex64> = (0..m)
            .map(|i| Complex64::new(1.0 + (i as f64 * 0.7).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut norm = 0.0f64;
        for _ in 0..60 {
            let w = at.matvec(&self.matvec(&v));
            let n: f64 = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if n == 0.0 {
                return 0.0;
            }
            let next = n.sqrt();
            let done = (next - norm).abs() <= 1e-12 * next.max(1.0);
            norm = next;
            v = w.into_iter().map(|c| c / n).collect();
            if done {
                break;
            }
        }
        norm
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.m + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.m + j]
    }
}

/// Complex inner product `<x, y> = sum conj(y_k) x_k`, matching the
/// right-module convention used for quaternionic vectors.
pub fn cdot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| b.conj() * a).sum()
}
