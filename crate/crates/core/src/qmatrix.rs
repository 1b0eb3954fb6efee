//! Quaternionic matrices and vectors, the chi complex-adjoint embedding and
//! its inverse, the right-module inner product, adjoints and inverses.
//!
//! Writing an entry as `q = q1 + q2 j` with `q1, q2` in the distinguished
//! plane `ℂ_i`, the embedding
//!
//! ```text
//! chi(A) = [[ A1,        A2       ],
//!           [-conj(A2),  conj(A1) ]]
//! ```
//!
//! is an injective algebra homomorphism into complex `2n x 2n` matrices.
//! All inverses and eigenproblems are solved on that side and pulled back.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::tol;

/// Largest supported quaternionic dimension.
pub const MAX_DIM: usize = 64;

pub fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange(n));
    }
    Ok(())
}

/// A dense `n x n` quaternionic matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QMatrixRepr", into = "QMatrixRepr")]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct QMatrixRepr {
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

impl TryFrom<QMatrixRepr> for QMatrix {
    type Error = Error;
    fn try_from(r: QMatrixRepr) -> Result<Self> {
        check_dim(r.n)?;
        if r.entries.len() != r.n || r.entries.iter().any(|row| row.len() != r.n) {
            return Err(Error::DimensionMismatch { left: r.n, right: r.entries.len() });
        }
        Ok(QMatrix { n: r.n, data: r.entries.into_iter().flatten().collect() })
    }
}

impl From<QMatrix> for QMatrixRepr {
    fn from(a: QMatrix) -> Self {
        let entries = (0..a.n).map(|i| a.data[i * a.n..(i + 1) * a.n].to_vec()).collect();
        QMatrixRepr { n: a.n, entries }
    }
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} outside 1..={MAX_DIM}");
        Self { n, data: vec![Quaternion::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n);
        for i in 0..n {
            a[(i, i)] = Quaternion::real(1.0);
        }
        a
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Self {
        let n = rows.len();
        let mut a = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "rows must form a square matrix");
            for (j, q) in row.iter().enumerate() {
                a[(i, j)] = *q;
            }
        }
        a
    }

    pub fn diagonal(entries: &[Quaternion]) -> Self {
        let mut a = Self::zeros(entries.len());
        for (i, q) in entries.iter().enumerate() {
            a[(i, i)] = *q;
        }
        a
    }

    pub fn scalar(q: Quaternion) -> Self {
        Self::from_rows(&[vec![q]])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    // Row loops stay sequential: at n <= 64 the products are far too small
    // to amortize task dispatch, so parallelism lives in the node and
    // instance sweeps instead.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in quaternionic product");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= *b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -*a;
        }
        out
    }

    /// Entrywise right multiplication `A · q` by a quaternion scalar.
    pub fn scale_right(&self, q: Quaternion) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = *a * q;
        }
        out
    }

    /// Entrywise left multiplication `q · A`.
    pub fn scale_left(&self, q: Quaternion) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = q * *a;
        }
        out
    }

    pub fn scale(&self, t: f64) -> Self {
        self.scale_right(Quaternion::real(t))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator 2-norm estimate through the chi image.
    pub fn two_norm(&self) -> f64 {
        chi(self).two_norm()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.sub(other).frobenius() <= tol
    }

    pub fn matvec(&self, x: &QVector) -> Result<QVector> {
        if self.n != x.dim() {
            return Err(Error::DimensionMismatch { left: self.n, right: x.dim() });
        }
        let data = (0..self.n)
            .map(|i| {
                let mut acc = Quaternion::zero();
                for j in 0..self.n {
                    acc += self[(i, j)] * x[j];
                }
                acc
            })
            .collect();
        Ok(QVector { data })
    }

    /// Matrix power with nonnegative exponent.
    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.n + j]
    }
}

/// A quaternionic column vector carrying the right scalar action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QVectorRepr", into = "QVectorRepr")]
pub struct QVector {
    data: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct QVectorRepr {
    n: usize,
    entries: Vec<Quaternion>,
}

impl TryFrom<QVectorRepr> for QVector {
    type Error = Error;
    fn try_from(r: QVectorRepr) -> Result<Self> {
        check_dim(r.n)?;
        if r.entries.len() != r.n {
            return Err(Error::DimensionMismatch { left: r.n, right: r.entries.len() });
        }
        Ok(QVector { data: r.entries })
    }
}

impl From<QVector> for QVectorRepr {
    fn from(v: QVector) -> Self {
        QVectorRepr { n: v.data.len(), entries: v.data }
    }
}

impl QVector {
    pub fn zeros(n: usize) -> Self {
        Self { data: vec![Quaternion::zero(); n] }
    }

    pub fn from_slice(entries: &[Quaternion]) -> Self {
        Self { data: entries.to_vec() }
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.data[k] = Quaternion::real(1.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        Self { data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        Self { data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect() }
    }

    /// Right scalar action `x · α`.
    pub fn scale_right(&self, alpha: Quaternion) -> Self {
        Self { data: self.data.iter().map(|a| *a * alpha).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.data[i]
    }
}

/// Right-module inner product `<x, y> = sum conj(y_k) x_k`.
///
/// Right-linear in the first slot: `<x α + y β, z> = <x, z> α + <y, z> β`.
pub fn inner(x: &QVector, y: &QVector) -> Result<Quaternion> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    let mut acc = Quaternion::zero();
    for (a, b) in x.data.iter().zip(&y.data) {
        acc += b.conj() * *a;
    }
    Ok(acc)
}

fn part1(q: &Quaternion) -> Complex64 {
    Complex64::new(q.w, q.x)
}

fn part2(q: &Quaternion) -> Complex64 {
    Complex64::new(q.y, q.z)
}

fn from_parts(z1: Complex64, z2: Complex64) -> Quaternion {
    Quaternion::new(z1.re, z1.im, z2.re, z2.im)
}

/// The complex-adjoint embedding `chi: ℍ^{n x n} -> ℂ^{2n x 2n}`.
pub fn chi(a: &QMatrix) -> CMatrix {
    let n = a.dim();
    let mut m = CMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let q = a[(i, j)];
            let z1 = part1(&q);
            let z2 = part2(&q);
            m[(i, j)] = z1;
            m[(i, n + j)] = z2;
            m[(n + i, j)] = -z2.conj();
            m[(n + i, n + j)] = z1.conj();
        }
    }
    m
}

/// chi-symmetry residual of a complex matrix: distance from the image of
/// chi, measured in Frobenius norm.
pub fn chi_symmetry_residual(m: &CMatrix) -> Result<f64> {
    let dim = m.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::DimensionMismatch { left: dim, right: dim + 1 });
    }
    let n = dim / 2;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (m[(n + i, j)] + m[(i, n + j)].conj()).norm_sqr();
            acc += (m[(n + i, n + j)] - m[(i, j)].conj()).norm_sqr();
        }
    }
    Ok(acc.sqrt())
}

/// Inverse of chi with the default symmetry tolerance.
///
/// Entries are read from the upper blocks alone, so `chi_inv(chi(A))`
/// returns `A` bit for bit.
pub fn chi_inv(m: &CMatrix) -> Result<QMatrix> {
    chi_inv_with(m, tol::EPS_SYM)
}

pub fn chi_inv_with(m: &CMatrix, eps_sym: f64) -> Result<QMatrix> {
    let residual = chi_symmetry_residual(m)?;
    let tol = eps_sym * (1.0 + m.frobenius());
    if residual > tol {
        return Err(Error::NotInChiImage { residual, tol });
    }
    let n = m.dim() / 2;
    let mut a = QMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = from_parts(m[(i, j)], m[(i, n + j)]);
        }
    }
    Ok(a)
}

/// Vector companion of chi: stacks `(x1; -conj(x2))` from `x = x1 + x2 j`,
/// which makes `vec_chi(A x) = chi(A) vec_chi(x)`.
pub fn vec_chi(x: &QVector) -> Vec<Complex64> {
    let n = x.dim();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (k, q) in x.entries().iter().enumerate() {
        out[k] = part1(q);
        out[n + k] = -part2(q).conj();
    }
    out
}

pub fn vec_chi_inv(v: &[Complex64]) -> QVector {
    assert!(v.len().is_multiple_of(2));
    let n = v.len() / 2;
    let data = (0..n).map(|k| from_parts(v[k], -v[n + k].conj())).collect();
    QVector { data }
}

/// Matrix inverse computed as `chi_inv(chi(A)^{-1})`.
pub fn invert(a: &QMatrix) -> Result<QMatrix> {
    let inv = chi(a).inverse(tol::EPS_SING)?;
    chi_inv_with(&inv, tol::EPS_SYM)
}

/// True iff `||U* U - I||_F <= tol`.
pub fn is_unitary(u: &QMatrix, tol: f64) -> bool {
    let n = u.dim();
    u.adjoint().mul(u).sub(&QMatrix::identity(n)).frobenius() <= tol
}
