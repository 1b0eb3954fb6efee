//! Spectral decomposition of quaternionic unitary matrices and the atomic
//! spectral measure it carries: the pairings `ν_{x,y}(σ) = <E(σ)x, y>`,
//! q-positivity certification, polarization, Herglotz sequences and the
//! bridge back to Riesz projectors.
//!
//! `chi(U)` of a unitary `U` is a unitary complex matrix, so it has an
//! orthonormal eigenbasis with eigenvalues `e^{iλ}` whose angle multiset is
//! symmetric under `λ -> 2π - λ`. The measure of the pair `(x, y)` puts at
//! each distinct angle the quaternion weight
//!
//! ```text
//! w_k = <P_k ξ(x), ξ(y)> - <P_k ξ(x j), ξ(y)> j,      ξ = vec_chi,
//! ```
//!
//! the unique atomic realization reproducing the moment identity
//! `<U^n x, y> = Σ_k e^{inλ_k} w_k` for all integers n.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::cmatrix::{cdot, CMatrix};
use crate::eig;
use crate::error::{Error, Result};
use crate::qmatrix::{chi, chi_inv_with, vec_chi, QMatrix, QVector};
use crate::quat::{Quaternion, UnitImaginary, J as QUAT_J, UNIT_I, UNIT_J};
use crate::tol;

/// An anticommuting pair `(I, J)` of imaginary units together with
/// `K = I J`, acting as an algebra automorphism of ℍ that carries the
/// standard basis onto the rotated one.
#[derive(Debug, Clone)]
pub struct AlgebraFrame {
    i: UnitImaginary,
    j: UnitImaginary,
    k: UnitImaginary,
    standard: bool,
}

impl AlgebraFrame {
    pub fn standard() -> Self {
        Self { i: UNIT_I, j: UNIT_J, k: crate::quat::UNIT_K, standard: true }
    }

    pub fn new(i: UnitImaginary, j: UnitImaginary) -> Result<Self> {
        let overlap = i.dot(&j).abs();
        if overlap > 1e-10 {
            return Err(Error::UnitsNotOrthogonal(overlap));
        }
        let kq = i.as_quaternion() * j.as_quaternion();
        let k = UnitImaginary::new(kq.x, kq.y, kq.z)?;
        Ok(Self { i, j, k, standard: false })
    }

    pub fn units(&self) -> (&UnitImaginary, &UnitImaginary, &UnitImaginary) {
        (&self.i, &self.j, &self.k)
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// Coordinates of `q` in the frame basis `(1, I, J, K)`.
    pub fn to_coords(&self, q: &Quaternion) -> Quaternion {
        if self.standard {
            return *q;
        }
        let im = (q.x, q.y, q.z);
        let dot = |u: &UnitImaginary| {
            let (a, b, c) = u.components();
            im.0 * a + im.1 * b + im.2 * c
        };
        Quaternion::new(q.w, dot(&self.i), dot(&self.j), dot(&self.k))
    }

    /// The quaternion `w + x I + y J + z K` from frame coordinates.
    pub fn from_coords(&self, c: &Quaternion) -> Quaternion {
        if self.standard {
            return *c;
        }
        Quaternion::real(c.w)
            + self.i.as_quaternion().scale(c.x)
            + self.j.as_quaternion().scale(c.y)
            + self.k.as_quaternion().scale(c.z)
    }

    pub fn vector_to_coords(&self, x: &QVector) -> QVector {
        if self.standard {
            return x.clone();
        }
        QVector::from_slice(&x.entries().iter().map(|q| self.to_coords(q)).collect::<Vec<_>>())
    }

    pub fn matrix_to_coords(&self, a: &QMatrix) -> QMatrix {
        if self.standard {
            return a.clone();
        }
        let n = a.dim();
        let mut out = QMatrix::zeros(n);
        for idx in 0..n * n {
            out[(idx / n, idx % n)] = self.to_coords(&a[(idx / n, idx % n)]);
        }
        out
    }

    pub fn matrix_from_coords(&self, a: &QMatrix) -> QMatrix {
        if self.standard {
            return a.clone();
        }
        let n = a.dim();
        let mut out = QMatrix::zeros(n);
        for idx in 0..n * n {
            out[(idx / n, idx % n)] = self.from_coords(&a[(idx / n, idx % n)]);
        }
        out
    }
}

/// Eigen-angles and eigenprojectors of `chi(U)` for a unitary `U`, grouped
/// within the clustering tolerance and symmetrized under `λ -> 2π - λ`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    n: usize,
    distinct: Vec<f64>,
    multiplicities: Vec<usize>,
    projectors: Vec<CMatrix>,
    mirror: Vec<usize>,
    frame: AlgebraFrame,
}

fn normalize_angle(t: f64) -> f64 {
    let mut t = t % TAU;
    if t < 0.0 {
        t += TAU;
    }
    t
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % TAU;
    d.min(TAU - d)
}

/// Groups sorted angle indices whose circular gaps stay within `eps`.
fn cluster_circle(angles: &[f64], eps: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..angles.len()).collect();
    order.sort_by(|&a, &b| angles[a].partial_cmp(&angles[b]).expect("finite"));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match groups.last_mut() {
            Some(g) if angles[idx] - angles[*g.last().expect("nonempty")] <= eps => g.push(idx),
            _ => groups.push(vec![idx]),
        }
    }
    // wraparound: merge the last group into the first if they touch across 0
    if groups.len() > 1 {
        let first = &groups[0];
        let last = groups.last().expect("nonempty");
        let gap = angles[first[0]] + TAU - angles[*last.last().expect("nonempty")];
        if gap <= eps {
            let tail = groups.pop().expect("nonempty");
            groups[0].extend(tail);
        }
    }
    groups
}

/// Spectral decomposition in the standard `(i, j)` frame.
pub fn decompose(u: &QMatrix) -> Result<SpectralDecomposition> {
    decompose_in_frame(u, AlgebraFrame::standard())
}

/// Spectral decomposition with the measure carried by a rotated unit pair.
pub fn decompose_in_frame(u: &QMatrix, frame: AlgebraFrame) -> Result<SpectralDecomposition> {
    let residual = u.adjoint().mul(u).sub(&QMatrix::identity(u.dim())).frobenius();
    if residual > 1e-10 {
        return Err(Error::NotUnitary { residual });
    }
    let u_coords = frame.matrix_to_coords(u);
    let cu = chi(&u_coords);
    let (vals, q) = eig::normal_eigen(&cu, 1e-10)?;
    let angles: Vec<f64> = vals.iter().map(|v| normalize_angle(v.arg())).collect();
    let eps = tol::EPS_CLUSTER;
    let groups = cluster_circle(&angles, eps);

    // cluster representatives by circular mean
    let mut reps: Vec<f64> = Vec::with_capacity(groups.len());
    for g in &groups {
        let base = angles[g[0]];
        let mean = g
            .iter()
            .map(|&i| {
                let mut a = angles[i];
                if a - base > PI {
                    a -= TAU;
                } else if base - a > PI {
                    a += TAU;
                }
                a
            })
            .sum::<f64>()
            / g.len() as f64;
        reps.push(normalize_angle(mean));
    }

    // enforce exact reflection symmetry of the representative set
    let pair_eps = 4.0 * eps;
    let kcount = reps.len();
    let mut mirror = vec![usize::MAX; kcount];
    for a in 0..kcount {
        if mirror[a] != usize::MAX {
            continue;
        }
        let t = reps[a];
        if t <= pair_eps || TAU - t <= pair_eps {
            reps[a] = 0.0;
            mirror[a] = a;
        } else if (t - PI).abs() <= pair_eps {
            reps[a] = PI;
            mirror[a] = a;
        } else {
            let target = TAU - t;
            let partner = (0..kcount)
                .filter(|&b| b != a && mirror[b] == usize::MAX)
                .min_by(|&p, &r| {
                    circ_dist(reps[p], target)
                        .partial_cmp(&circ_dist(reps[r], target))
                        .expect("finite")
                })
                .filter(|&b| circ_dist(reps[b], target) <= pair_eps);
            let Some(b) = partner else {
                return Err(Error::EigenSolver(format!(
                    "angle {t:.12} has no conjugate mirror among the eigen-angles"
                )));
            };
            if groups[a].len() != groups[b].len() {
                return Err(Error::EigenSolver(format!(
                    "mirrored angle clusters have multiplicities {} and {}",
                    groups[a].len(),
                    groups[b].len()
                )));
            }
            let sym = 0.5 * (reps[a] + TAU - reps[b]);
            reps[a] = sym;
            reps[b] = TAU - sym;
            mirror[a] = b;
            mirror[b] = a;
        }
    }

    // sort clusters by angle and build grouped projectors
    let mut order: Vec<usize> = (0..kcount).collect();
    order.sort_by(|&a, &b| reps[a].partial_cmp(&reps[b]).expect("finite"));
    let rank_of = {
        let mut rank = vec![0usize; kcount];
        for (new_idx, &old) in order.iter().enumerate() {
            rank[old] = new_idx;
        }
        rank
    };
    let dim2 = 2 * u.dim();
    let mut distinct = Vec::with_capacity(kcount);
    let mut multiplicities = Vec::with_capacity(kcount);
    let mut projectors = Vec::with_capacity(kcount);
    let mut mirror_sorted = vec![0usize; kcount];
    for &old in &order {
        distinct.push(reps[old]);
        multiplicities.push(groups[old].len());
        mirror_sorted[rank_of[old]] = rank_of[mirror[old]];
        let mut p = CMatrix::zeros(dim2);
        for &col in &groups[old] {
            for r in 0..dim2 {
                for c in 0..dim2 {
                    let add = q[(r, col)] * q[(c, col)].conj();
                    p[(r, c)] += add;
                }
            }
        }
        projectors.push(p);
    }

    let d = SpectralDecomposition {
        n: u.dim(),
        distinct,
        multiplicities,
        projectors,
        mirror: mirror_sorted,
        frame,
    };
    // reconstruction audit
    let scale = 1.0 + cu.frobenius();
    let mut recon = CMatrix::zeros(dim2);
    let mut psum = CMatrix::zeros(dim2);
    for (k, p) in d.projectors.iter().enumerate() {
        recon = recon.add(&p.scale(Complex64::from_polar(1.0, d.distinct[k])));
        psum = psum.add(p);
    }
    if recon.sub(&cu).frobenius() > 1e-10 * scale
        || psum.sub(&CMatrix::identity(dim2)).frobenius() > 1e-10 * scale
    {
        return Err(Error::EigenSolver(
            "spectral reconstruction residual exceeds tolerance".into(),
        ));
    }
    Ok(d)
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn frame(&self) -> &AlgebraFrame {
        &self.frame
    }

    /// Distinct eigen-angles in `[0, 2π)`, ascending.
    pub fn distinct_angles(&self) -> &[f64] {
        &self.distinct
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// All `2n` eigen-angles with multiplicity.
    pub fn angles_with_multiplicity(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.n);
        for (t, m) in self.distinct.iter().zip(&self.multiplicities) {
            out.extend(std::iter::repeat_n(*t, *m));
        }
        out
    }

    /// Eigenprojector for the k-th distinct angle (complex `2n x 2n`).
    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// Index of the angle `2π - λ_k`.
    pub fn mirror_index(&self, k: usize) -> usize {
        self.mirror[k]
    }

    /// Indices whose angles match the sphere `(u, v)` on the unit circle:
    /// the angle `t = atan2(v, u)` and its mirror.
    pub fn symmetric_window_for_sphere(&self, u: f64, v: f64) -> Result<Vec<usize>> {
        let t = normalize_angle(v.atan2(u));
        let k = (0..self.distinct.len())
            .min_by(|&a, &b| {
                circ_dist(self.distinct[a], t)
                    .partial_cmp(&circ_dist(self.distinct[b], t))
                    .expect("finite")
            })
            .ok_or_else(|| Error::EigenSolver("empty decomposition".into()))?;
        if circ_dist(self.distinct[k], t) > 1e-6 {
            return Err(Error::EigenSolver(format!(
                "no eigen-angle near t = {t:.6} for sphere (u={u:.6}, v={v:.6})"
            )));
        }
        let m = self.mirror[k];
        Ok(if m == k { vec![k] } else { vec![k.min(m), k.max(m)] })
    }

    /// Raw quaternion weights (in frame coordinates) of the pairing
    /// measure for already-converted vectors.
    fn raw_weights(&self, x: &QVector, y: &QVector) -> Vec<Quaternion> {
        let xi = vec_chi(x);
        let xj = vec_chi(&x.scale_right(QUAT_J));
        let yi = vec_chi(y);
        self.projectors
            .iter()
            .map(|p| {
                let c1 = cdot(&p.matvec(&xi), &yi);
                let c2 = cdot(&p.matvec(&xj), &yi);
                Quaternion::new(c1.re, c1.im, -c2.re, -c2.im)
            })
            .collect()
    }

    /// `chi_inv(Σ_k values[k] P_k)`, pulled back through the frame.
    pub fn assemble(&self, values: &[Complex64], eps_sym: f64) -> Result<QMatrix> {
        assert_eq!(values.len(), self.distinct.len());
        let mut m = CMatrix::zeros(2 * self.n);
        for (v, p) in values.iter().zip(&self.projectors) {
            m = m.add(&p.scale(*v));
        }
        let a = chi_inv_with(&m, eps_sym)?;
        Ok(self.frame.matrix_from_coords(&a))
    }
}

/// A finite list of `(angle, quaternion weight)` atoms on `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicQMeasure {
    atoms: Vec<(f64, Quaternion)>,
}

impl AtomicQMeasure {
    pub fn new(mut atoms: Vec<(f64, Quaternion)>) -> Self {
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        Self { atoms }
    }

    pub fn atoms(&self) -> &[(f64, Quaternion)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total mass `ν([0, 2π)) = Σ w`.
    pub fn total_mass(&self) -> Quaternion {
        self.atoms.iter().fold(Quaternion::zero(), |acc, (_, w)| acc + *w)
    }

    /// `Σ e^{int} w(t)` with the complex exponential on the left.
    pub fn moment(&self, n: i64) -> Quaternion {
        let mut acc = Quaternion::zero();
        for (t, w) in &self.atoms {
            let e = Quaternion::new((n as f64 * t).cos(), (n as f64 * t).sin(), 0.0, 0.0);
            acc += e * *w;
        }
        acc
    }

    pub fn max_weight_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.atoms.len(), other.atoms.len(), "atom grids differ");
        self.atoms
            .iter()
            .zip(&other.atoms)
            .map(|((ta, wa), (tb, wb))| {
                assert!((ta - tb).abs() < 1e-9, "atom angles differ");
                (*wa - *wb).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// The pairing measure `ν_{x,y}` with one atom per distinct eigen-angle.
pub fn pair_measure(d: &SpectralDecomposition, x: &QVector, y: &QVector) -> Result<AtomicQMeasure> {
    if x.dim() != d.n || y.dim() != d.n {
        return Err(Error::DimensionMismatch { left: d.n, right: x.dim().max(y.dim()) });
    }
    let xc = d.frame.vector_to_coords(x);
    let yc = d.frame.vector_to_coords(y);
    let w = d.raw_weights(&xc, &yc);
    Ok(AtomicQMeasure::new(
        d.distinct
            .iter()
            .zip(w)
            .map(|(t, wk)| (*t, d.frame.from_coords(&wk)))
            .collect(),
    ))
}

/// The diagonal (Herglotz) measure `ν_x = ν_{x,x}`.
pub fn diag_measure(d: &SpectralDecomposition, x: &QVector) -> Result<AtomicQMeasure> {
    pair_measure(d, x, x)
}

/// Polarization of the diagonal measures:
///
/// ```text
/// 4 ν_{x,y} = ν_{x+y} - ν_{x-y} + i ν_{x+yi} - i ν_{x-yi}
///             + i ν_{x-yj} k - i ν_{x+yj} k + ν_{x+yk} k - ν_{x-yk} k
/// ```
///
/// with the left `i` and right `k` factors taken in the decomposition's
/// frame; agrees with `pair_measure` atom by atom.
pub fn polarize(d: &SpectralDecomposition, x: &QVector, y: &QVector) -> Result<AtomicQMeasure> {
    if x.dim() != d.n || y.dim() != d.n {
        return Err(Error::DimensionMismatch { left: d.n, right: x.dim().max(y.dim()) });
    }
    let xc = d.frame.vector_to_coords(x);
    let yc = d.frame.vector_to_coords(y);
    let i = crate::quat::I;
    let k = crate::quat::K;
    let combos = [
        xc.add(&yc),
        xc.sub(&yc),
        xc.add(&yc.scale_right(i)),
        xc.sub(&yc.scale_right(i)),
        xc.sub(&yc.scale_right(QUAT_J)),
        xc.add(&yc.scale_right(QUAT_J)),
        xc.add(&yc.scale_right(k)),
        xc.sub(&yc.scale_right(k)),
    ];
    let nus: Vec<Vec<Quaternion>> = combos.iter().map(|z| d.raw_weights(z, z)).collect();
    let atoms = d
        .distinct
        .iter()
        .enumerate()
        .map(|(a, t)| {
            let w4 = nus[0][a] - nus[1][a] + i * nus[2][a] - i * nus[3][a]
                + i * nus[4][a] * k
                - i * nus[5][a] * k
                + nus[6][a] * k
                - nus[7][a] * k;
            (*t, d.frame.from_coords(&w4.scale(0.25)))
        })
        .collect();
    Ok(AtomicQMeasure::new(atoms))
}

/// `r(n) = <U^n x, x>` for `n = -N..=N`; Hermitian by construction of the
/// inner product (`r(-n) = conj(r(n))` up to rounding).
pub fn herglotz_sequence(u: &QMatrix, x: &QVector, n_max: usize) -> Result<Vec<Quaternion>> {
    let residual = u.adjoint().mul(u).sub(&QMatrix::identity(u.dim())).frobenius();
    if residual > 1e-10 {
        return Err(Error::NotUnitary { residual });
    }
    let mut out = vec![Quaternion::zero(); 2 * n_max + 1];
    let ustar = u.adjoint();
    let mut fwd = x.clone();
    let mut bwd = x.clone();
    out[n_max] = crate::qmatrix::inner(x, x)?;
    for n in 1..=n_max {
        fwd = u.matvec(&fwd)?;
        bwd = ustar.matvec(&bwd)?;
        out[n_max + n] = crate::qmatrix::inner(&fwd, x)?;
        out[n_max - n] = crate::qmatrix::inner(&bwd, x)?;
    }
    Ok(out)
}

/// Smallest eigenvalue of the chi image of the quaternionic Toeplitz matrix
/// `[r(n - m)]` built from a Hermitian sequence `r(-N..N)`.
pub fn positive_definite_check(r: &[Quaternion]) -> Result<f64> {
    if r.len() % 2 != 1 {
        return Err(Error::InvalidConfig("sequence must have odd length 2N+1".into()));
    }
    let n_max = r.len() / 2;
    let scale = r.iter().map(|q| q.norm()).fold(0.0, f64::max).max(1.0);
    for n in 0..=n_max {
        let res = (r[n_max + n] - r[n_max - n].conj()).norm();
        if res > 1e-10 * scale {
            return Err(Error::NonHermitianSequence { residual: res });
        }
    }
    let mut toeplitz = QMatrix::zeros(n_max + 1);
    for row in 0..=n_max {
        for col in 0..=n_max {
            // entry (row, col) holds r(col - row)
            toeplitz[(row, col)] = r[(n_max as i64 + col as i64 - row as i64) as usize];
        }
    }
    let image = chi(&toeplitz);
    let herm = image.hermitian_residual();
    if herm > 1e-9 * scale {
        return Err(Error::NonHermitianSequence { residual: herm });
    }
    eig::hermitian_min_eigenvalue(&image)
}

/// One mirrored atom pair of a q-positivity check.
#[derive(Debug, Clone)]
pub struct PairedBlock {
    pub t: f64,
    pub t_mirror: f64,
    /// `[[ν1(t), ν2(t)], [conj ν2(t), ν1(2π - t)]]`.
    pub block: [[Complex64; 2]; 2],
    pub min_eigenvalue: f64,
}

/// Outcome of the q-positivity certification of an atomic measure.
#[derive(Debug, Clone)]
pub struct QPositivityReport {
    pub paired_blocks: Vec<PairedBlock>,
    /// Worst violation of `ν2(t) = -ν2(2π - t)`.
    pub antisymmetry_residual: f64,
    /// Worst imaginary mass on the diagonal `ν1` entries.
    pub diagonal_imag_residual: f64,
    pub verdict: bool,
}

/// Certifies Def-3.2 q-positivity of an atomic measure: pair atoms at `t`
/// and `2π - t` (a missing partner counts as zero), check every paired
/// `2 x 2` block for positive semidefiniteness and the `ν2` antisymmetry.
pub fn q_positivity(nu: &AtomicQMeasure) -> QPositivityReport {
    q_positivity_with(nu, tol::EPS_PSD)
}

pub fn q_positivity_with(nu: &AtomicQMeasure, eps_psd: f64) -> QPositivityReport {
    let atoms = nu.atoms();
    let mut used = vec![false; atoms.len()];
    let mut blocks = Vec::new();
    let mut antisym = 0.0f64;
    let mut diag_imag = 0.0f64;
    for a in 0..atoms.len() {
        if used[a] {
            continue;
        }
        used[a] = true;
        let (t, w) = atoms[a];
        let target = normalize_angle(TAU - t);
        let partner = (0..atoms.len())
            .filter(|&b| b != a && !used[b])
            .min_by(|&p, &r| {
                circ_dist(atoms[p].0, target)
                    .partial_cmp(&circ_dist(atoms[r].0, target))
                    .expect("finite")
            })
            .filter(|&b| circ_dist(atoms[b].0, target) <= tol::EPS_CLUSTER);
        let self_paired = circ_dist(t, target) <= tol::EPS_CLUSTER;
        let (t_mirror, w_mirror) = match partner {
            Some(b) if !self_paired => {
                used[b] = true;
                atoms[b]
            }
            _ => {
                if self_paired {
                    (t, w)
                } else {
                    (target, Quaternion::zero())
                }
            }
        };
        let ((a1re, a1im), (a2re, a2im)) = w.complex_split();
        let ((b1re, b1im), (b2re, b2im)) = w_mirror.complex_split();
        let nu1_t = Complex64::new(a1re, a1im);
        let nu2_t = Complex64::new(a2re, a2im);
        let nu1_m = Complex64::new(b1re, b1im);
        let nu2_m = Complex64::new(b2re, b2im);
        antisym = antisym.max((nu2_t + nu2_m).norm());
        diag_imag = diag_imag.max(nu1_t.im.abs()).max(nu1_m.im.abs());
        let block = [[nu1_t, nu2_t], [nu2_t.conj(), nu1_m]];
        // smallest eigenvalue of the Hermitian part of the 2x2 block
        let p = nu1_t.re;
        let q = nu1_m.re;
        let min_eig = 0.5 * (p + q) - (0.25 * (p - q) * (p - q) + nu2_t.norm_sqr()).sqrt();
        blocks.push(PairedBlock { t, t_mirror, block, min_eigenvalue: min_eig });
    }
    let verdict = blocks.iter().all(|b| b.min_eigenvalue >= -eps_psd)
        && antisym <= eps_psd
        && diag_imag <= eps_psd;
    QPositivityReport {
        paired_blocks: blocks,
        antisymmetry_residual: antisym,
        diagonal_imag_residual: diag_imag,
        verdict,
    }
}

/// `<E(σ)x, y> = Σ_{k in σ} w_k` over the selected distinct angles.
pub fn spectral_pairing(
    d: &SpectralDecomposition,
    selection: &[usize],
    x: &QVector,
    y: &QVector,
) -> Result<Quaternion> {
    for &k in selection {
        if k >= d.distinct.len() {
            return Err(Error::BadIndex { index: k, count: d.distinct.len() });
        }
    }
    let nu = pair_measure(d, x, y)?;
    let mut acc = Quaternion::zero();
    for &k in selection {
        acc += nu.atoms()[k].1;
    }
    Ok(acc)
}

/// The quaternionic projector carried by a reflection-symmetric selection
/// of eigen-angles: `chi_inv(Σ_{k in σ} P_k)`.
///
/// Only selections closed under `λ -> 2π - λ` give chi-symmetric sums and
/// hence ℍ-linear operators; this is the operator side of
/// `P(σ_S^0(U)) = E(t1) - E(t0)`.
pub fn sphere_projector_from_e(d: &SpectralDecomposition, selection: &[usize]) -> Result<QMatrix> {
    let mut chosen = vec![false; d.distinct.len()];
    for &k in selection {
        if k >= d.distinct.len() {
            return Err(Error::BadIndex { index: k, count: d.distinct.len() });
        }
        chosen[k] = true;
    }
    for &k in selection {
        if !chosen[d.mirror[k]] {
            return Err(Error::SelectionNotSymmetric(k));
        }
    }
    let values: Vec<Complex64> = (0..d.distinct.len())
        .map(|k| Complex64::new(if chosen[k] { 1.0 } else { 0.0 }, 0.0))
        .collect();
    d.assemble(&values, tol::EPS_SYM)
}

/// True iff every entry of `U` has vanishing `j` and `k` parts, i.e. `U`
/// maps the distinguished complex subspace `M` into itself. Equivalent to
/// self-adjointness of the spectral measure.
pub fn complex_preserving_check(u: &QMatrix) -> Result<bool> {
    let residual = u.adjoint().mul(u).sub(&QMatrix::identity(u.dim())).frobenius();
    if residual > 1e-10 {
        return Err(Error::NotUnitary { residual });
    }
    Ok(u.entries().iter().all(|q| q.y.abs() <= 1e-12 && q.z.abs() <= 1e-12))
}
