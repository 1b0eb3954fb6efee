//! The theorem-by-theorem verification suite: every numerically testable
//! statement gets instances, a residual and a pass/fail record.
//!
//! Instances are generated from pre-assigned seeds and run through a
//! deterministic parallel map, so two runs with the same configuration
//! produce identical records.

use serde::Serialize;

use crate::contour::{
    check_lemma_identity, funcalc_contour, integrate_left, riesz_projector, ContourSpec,
    QuadratureConfig, RightPoly,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::qmatrix::{inner, QMatrix, QVector};
use crate::quat::{exp_unit, sphere_of, Quaternion, UnitImaginary, UNIT_I};
use crate::random;
use crate::slicefun::{funcalc_converge, funcalc_spectral, funcalc_trigpoly, SliceFunction, TrigPoly};
use crate::spectral::{
    complex_preserving_check, decompose, diag_measure, herglotz_sequence, pair_measure, polarize,
    positive_definite_check, q_positivity_with, spectral_pairing, sphere_projector_from_e,
};
use crate::sspectrum::{check_resolvent_equation, s_spectrum};
use crate::tol;

/// One verified (theorem, instance) outcome.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub theorem_id: String,
    pub instance_seed: u64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationRecord {
    fn new(theorem_id: &str, instance_seed: u64, residual: f64, tolerance: f64) -> Self {
        Self {
            theorem_id: theorem_id.to_string(),
            instance_seed,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// An instance that failed before producing a residual.
    fn broken(theorem_id: &str, instance_seed: u64, tolerance: f64) -> Self {
        Self::new(theorem_id, instance_seed, f64::INFINITY, tolerance)
    }
}

/// Suite configuration: seeds, quadrature resolution, tolerances, the
/// slice plane and the dimension cap.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub nodes_per_loop: usize,
    pub eps_q: f64,
    pub eps_psd: f64,
    pub eps_sym: f64,
    pub eps_cluster: f64,
    pub eps_spec: f64,
    pub eps_slice: f64,
    pub plane: UnitImaginary,
    pub dim_cap: usize,
    /// Instances per theorem family.
    pub instances: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            nodes_per_loop: 256,
            eps_q: tol::EPS_Q,
            eps_psd: tol::EPS_PSD,
            eps_sym: tol::EPS_SYM,
            eps_cluster: tol::EPS_CLUSTER,
            eps_spec: tol::EPS_SPEC,
            eps_slice: tol::EPS_SLICE,
            plane: UNIT_I,
            dim_cap: 5,
            instances: 4,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [
            self.eps_q,
            self.eps_psd,
            self.eps_sym,
            self.eps_cluster,
            self.eps_spec,
            self.eps_slice,
        ];
        if tols.iter().any(|t| *t <= 0.0 || t.is_nan()) {
            return Err(Error::InvalidConfig("all tolerances must be positive".into()));
        }
        if self.dim_cap == 0 || self.dim_cap > 64 {
            return Err(Error::InvalidConfig(format!("dimension cap {} outside 1..=64", self.dim_cap)));
        }
        if self.nodes_per_loop < 16 {
            return Err(Error::InvalidConfig("nodes_per_loop must be at least 16".into()));
        }
        Ok(())
    }

    fn quad(&self) -> QuadratureConfig {
        QuadratureConfig {
            nodes_per_loop: self.nodes_per_loop,
            plane: self.plane,
            ..QuadratureConfig::default()
        }
    }

    fn dim_for(&self, instance: usize) -> usize {
        1 + instance % self.dim_cap.min(5)
    }
}

/// The theorem identifiers `verify_all` emits, in suite order.
pub fn documented_theorem_ids() -> &'static [&'static str] {
    &[
        "Thm2.1.eq21",
        "Thm2.1.eq22",
        "Lemma2.4.inside",
        "Lemma2.4.outside",
        "Thm2.6.i",
        "Thm2.6.ii",
        "Thm2.6.iii",
        "Thm2.6.iv",
        "Thm2.6.v",
        "Thm2.6.vi",
        "Sec2.unitcircle",
        "Eq3.7.moments",
        "Thm3.4.qpositive",
        "Lemma3.6.psd",
        "Rem3.4.hermitian",
        "Eq3.4.polarization",
        "Thm3.7.i",
        "Thm3.7.ii",
        "Thm3.7.iii",
        "Rem3.8.witness",
        "Thm3.11.i.bound",
        "Thm3.11.ii.full",
        "Thm3.11.ii.empty",
        "Thm3.11.iv",
        "Thm3.11.vi",
        "Thm3.12.complex",
        "Thm3.12.quaternionic",
        "Thm3.16.poly",
        "Thm3.16.inverse",
        "Thm3.16.converge",
        "Thm3.16.product",
        "Eq1.3.link",
        "Thm4.2.plane",
        "Thm4.3.bridge",
    ]
}

fn sample_off_spectrum(
    rng: &mut rand_chacha::ChaCha8Rng,
    spectrum: &crate::sspectrum::SSpectrum,
    lo: f64,
    hi: f64,
) -> Quaternion {
    use rand::Rng;
    loop {
        let q = random::random_quaternion(rng);
        let norm = q.norm();
        if norm < 1e-6 {
            continue;
        }
        let target: f64 = rng.gen_range(lo..hi);
        let s = q.scale(target / norm);
        if spectrum.distance_to(&s).0 > 0.05 {
            return s;
        }
    }
}

fn test_matrix(cfg: &RunConfig, instance: usize, seed: u64) -> Result<QMatrix> {
    let n = cfg.dim_for(instance);
    if instance.is_multiple_of(2) {
        random::random_unitary(n, seed)
    } else {
        Ok(random::random_diagonalizable(n, seed)?.0)
    }
}

fn resolvent_equation_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let count = cfg.instances * 4;
    let records = exec::map_indexed(count, |inst| {
        let seed = cfg.seed.wrapping_mul(1009).wrapping_add(inst as u64);
        let run = || -> Result<(f64, f64)> {
            let a = test_matrix(cfg, inst, seed)?;
            let spectrum = s_spectrum(&a)?;
            let mut rng = random::rng_for(seed ^ 0x51);
            let s = sample_off_spectrum(&mut rng, &spectrum, 1.2, 3.0);
            let p = loop {
                let p = sample_off_spectrum(&mut rng, &spectrum, 1.2, 3.0);
                if sphere_of(&p).distance(&sphere_of(&s)) > 0.05 {
                    break p;
                }
            };
            let lhs_scale = {
                let sr = crate::sspectrum::s_resolvent_right_unchecked(&s, &a)?;
                let sl = crate::sspectrum::s_resolvent_left_unchecked(&p, &a)?;
                sr.mul(&sl).frobenius().max(f64::MIN_POSITIVE)
            };
            let (r1, r2) = check_resolvent_equation(&s, &p, &a)?;
            Ok((r1 / lhs_scale, r2 / lhs_scale))
        };
        match run() {
            Ok((r1, r2)) => vec![
                VerificationRecord::new("Thm2.1.eq21", seed, r1, 1e-9),
                VerificationRecord::new("Thm2.1.eq22", seed, r2, 1e-9),
            ],
            Err(_) => vec![
                VerificationRecord::broken("Thm2.1.eq21", seed, 1e-9),
                VerificationRecord::broken("Thm2.1.eq22", seed, 1e-9),
            ],
        }
    });
    out.extend(records.into_iter().flatten());
}

fn lemma_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let records = exec::map_indexed(cfg.instances * 2, |inst| {
        let seed = cfg.seed.wrapping_mul(2003).wrapping_add(inst as u64);
        let n = cfg.dim_for(inst).min(3);
        let b = random::random_qmatrix(n, seed);
        let scale = 1.0 + b.frobenius();
        let mut rng = random::rng_for(seed ^ 0xab);
        let u0 = 0.4 * ((inst as f64).sin());
        let v0 = 0.5 + 0.2 * ((inst as f64).cos()).abs();
        let contour = match ContourSpec::mirrored_pair(cfg.plane, u0, v0, 0.2, cfg.nodes_per_loop) {
            Ok(c) => c,
            Err(_) => {
                return vec![
                    VerificationRecord::broken("Lemma2.4.inside", seed, cfg.eps_q),
                    VerificationRecord::broken("Lemma2.4.outside", seed, cfg.eps_q),
                ]
            }
        };
        // p on the sphere through the enclosed points, in a random slice
        let unit = random::random_unit_imaginary(&mut rng);
        let p_in = Quaternion::real(u0) + unit.as_quaternion().scale(v0);
        let p_out = Quaternion::real(u0 + 3.0) + unit.as_quaternion().scale(v0 + 1.0);
        let inside = check_lemma_identity(&b, &p_in, &contour)
            .map(|m| m.sub(&b).frobenius() / scale)
            .unwrap_or(f64::INFINITY);
        let outside = check_lemma_identity(&b, &p_out, &contour)
            .map(|m| m.frobenius() / scale)
            .unwrap_or(f64::INFINITY);
        vec![
            VerificationRecord::new("Lemma2.4.inside", seed, inside, cfg.eps_q),
            VerificationRecord::new("Lemma2.4.outside", seed, outside, cfg.eps_q),
        ]
    });
    out.extend(records.into_iter().flatten());
}

fn riesz_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let quad = cfg.quad();
    let count = cfg.instances + 1;
    let records = exec::map_indexed(count, |inst| {
        let seed = cfg.seed.wrapping_mul(3001).wrapping_add(inst as u64);
        let ids = ["Thm2.6.i", "Thm2.6.ii", "Thm2.6.iii", "Thm2.6.iv", "Thm2.6.v", "Thm2.6.vi"];
        let run = || -> Result<Vec<VerificationRecord>> {
            // instance 0 is a fixed close-sphere control that needs the full
            // node budget; the rest are random
            let a = if inst == 0 && cfg.dim_cap >= 2 {
                QMatrix::diagonal(&[exp_unit(&UNIT_I, 0.9), exp_unit(&UNIT_I, 1.2)])
            } else {
                test_matrix(cfg, inst, seed)?
            };
            let spectrum = s_spectrum(&a)?;
            let k = spectrum.spheres.len();
            let all: Vec<usize> = (0..k).collect();
            let scale = 1.0 + a.frobenius();

            let p_all = riesz_projector(&a, &all, &quad)?;
            let sigma: Vec<usize> = (0..k.div_ceil(2)).collect();
            let p_sigma = riesz_projector(&a, &sigma, &quad)?;

            let mut recs = Vec::new();
            recs.push(VerificationRecord::new(
                ids[0],
                seed,
                p_sigma.mul(&p_sigma).sub(&p_sigma).frobenius(),
                cfg.eps_q,
            ));
            recs.push(VerificationRecord::new(
                ids[1],
                seed,
                a.mul(&p_sigma).sub(&p_sigma.mul(&a)).frobenius() / scale,
                cfg.eps_q,
            ));
            recs.push(VerificationRecord::new(
                ids[2],
                seed,
                p_all.sub(&QMatrix::identity(a.dim())).frobenius(),
                cfg.eps_q,
            ));
            // a loop that encloses no spectrum integrates to zero
            let empty_contour = ContourSpec::real_circle(cfg.plane, 4.0, 0.3, cfg.nodes_per_loop)?;
            recs.push(VerificationRecord::new(
                ids[3],
                seed,
                integrate_left(&empty_contour, &a)?.frobenius(),
                cfg.eps_q,
            ));
            // additivity over a disjoint split
            let lower: Vec<usize> = (0..k / 2).collect();
            let upper: Vec<usize> = (k / 2..k).collect();
            let p_lower = riesz_projector(&a, &lower, &quad)?;
            let p_upper = riesz_projector(&a, &upper, &quad)?;
            recs.push(VerificationRecord::new(
                ids[4],
                seed,
                p_lower.add(&p_upper).sub(&p_all).frobenius(),
                cfg.eps_q,
            ));
            // multiplicativity on overlapping selections
            let mut tau: Vec<usize> = (k / 2..k).chain(0..1.min(k)).collect();
            tau.sort_unstable();
            tau.dedup();
            let both: Vec<usize> = sigma.iter().copied().filter(|i| tau.contains(i)).collect();
            let p_tau = riesz_projector(&a, &tau, &quad)?;
            let p_both = riesz_projector(&a, &both, &quad)?;
            recs.push(VerificationRecord::new(
                ids[5],
                seed,
                p_sigma.mul(&p_tau).sub(&p_both).frobenius(),
                cfg.eps_q,
            ));
            Ok(recs)
        };
        run().unwrap_or_else(|_| {
            ["Thm2.6.i", "Thm2.6.ii", "Thm2.6.iii", "Thm2.6.iv", "Thm2.6.v", "Thm2.6.vi"]
                .iter()
                .map(|id| VerificationRecord::broken(id, seed, cfg.eps_q))
                .collect()
        })
    });
    out.extend(records.into_iter().flatten());
}

fn unit_circle_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let records = exec::map_indexed(cfg.instances, |inst| {
        let seed = cfg.seed.wrapping_mul(4001).wrapping_add(inst as u64);
        let n = cfg.dim_for(inst);
        let run = || -> Result<f64> {
            let u = random::random_unitary(n, seed)?;
            let spectrum = s_spectrum(&u)?;
            Ok(spectrum
                .spheres
                .iter()
                .map(|s| (s.u * s.u + s.v * s.v - 1.0).abs())
                .fold(0.0, f64::max))
        };
        match run() {
            Ok(r) => VerificationRecord::new("Sec2.unitcircle", seed, r, 1e-10),
            Err(_) => VerificationRecord::broken("Sec2.unitcircle", seed, 1e-10),
        }
    });
    out.extend(records);
}

fn measure_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let records = exec::map_indexed(cfg.instances, |inst| {
        let seed = cfg.seed.wrapping_mul(5003).wrapping_add(inst as u64);
        let n = cfg.dim_for(inst);
        let mut recs = Vec::new();
        let run = || -> Result<Vec<VerificationRecord>> {
            let u = random::random_unitary(n, seed)?;
            let d = decompose(&u)?;
            let x = random::random_qvector(n, seed ^ 0x100);
            let y = random::random_qvector(n, seed ^ 0x200);
            let z = random::random_qvector(n, seed ^ 0x300);
            let mut recs = Vec::new();

            // moment identity over n in [-12, 12]
            let nu = pair_measure(&d, &x, &y)?;
            let mut worst = 0.0f64;
            let ustar = u.adjoint();
            let mut fwd = x.clone();
            let mut bwd = x.clone();
            worst = worst.max((nu.moment(0) - inner(&x, &y)?).norm());
            for m in 1..=12i64 {
                fwd = u.matvec(&fwd)?;
                bwd = ustar.matvec(&bwd)?;
                worst = worst.max((nu.moment(m) - inner(&fwd, &y)?).norm());
                worst = worst.max((nu.moment(-m) - inner(&bwd, &y)?).norm());
            }
            recs.push(VerificationRecord::new("Eq3.7.moments", seed, worst, 1e-9));

            // q-positivity of the diagonal measure
            let nux = diag_measure(&d, &x)?;
            let report = q_positivity_with(&nux, cfg.eps_psd);
            let residual = report
                .paired_blocks
                .iter()
                .map(|b| (-b.min_eigenvalue).max(0.0))
                .fold(0.0, f64::max)
                .max(report.antisymmetry_residual)
                .max(report.diagonal_imag_residual);
            recs.push(VerificationRecord::new("Thm3.4.qpositive", seed, residual, cfg.eps_psd));

            // Toeplitz positive definiteness at N = 12
            let r = herglotz_sequence(&u, &x, 12)?;
            let min_eig = positive_definite_check(&r)?;
            recs.push(VerificationRecord::new(
                "Lemma3.6.psd",
                seed,
                (-min_eig).max(0.0),
                1e-10,
            ));

            // Hermitian symmetry of the sequence
            let herm = (0..=12)
                .map(|m| (r[12 + m] - r[12 - m].conj()).norm())
                .fold(0.0, f64::max);
            recs.push(VerificationRecord::new("Rem3.4.hermitian", seed, herm, 1e-12));

            // polarization equals the direct pairing
            let polar = polarize(&d, &x, &y)?;
            recs.push(VerificationRecord::new(
                "Eq3.4.polarization",
                seed,
                nu.max_weight_distance(&polar),
                1e-9,
            ));

            // Thm 3.7 (i): right linearity in the first slot
            let mut rng = random::rng_for(seed ^ 0x400);
            let alpha = random::random_quaternion(&mut rng);
            let beta = random::random_quaternion(&mut rng);
            let combo = x.scale_right(alpha).add(&y.scale_right(beta));
            let lhs = pair_measure(&d, &combo, &z)?;
            let nu_xz = pair_measure(&d, &x, &z)?;
            let nu_yz = pair_measure(&d, &y, &z)?;
            let worst = lhs
                .atoms()
                .iter()
                .zip(nu_xz.atoms().iter().zip(nu_yz.atoms()))
                .map(|((_, w), ((_, wx), (_, wy)))| (*w - (*wx * alpha + *wy * beta)).norm())
                .fold(0.0, f64::max);
            recs.push(VerificationRecord::new("Thm3.7.i", seed, worst, 1e-9));

            // Thm 3.7 (ii): conjugate linearity in the second slot over C_i
            let ca = Quaternion::new(0.3, -0.8, 0.0, 0.0);
            let cb = Quaternion::new(-0.5, 0.4, 0.0, 0.0);
            let combo = y.scale_right(ca).add(&z.scale_right(cb));
            let lhs = pair_measure(&d, &x, &combo)?;
            let nu_xy = pair_measure(&d, &x, &y)?;
            let nu_xz2 = pair_measure(&d, &x, &z)?;
            let worst = lhs
                .atoms()
                .iter()
                .zip(nu_xy.atoms().iter().zip(nu_xz2.atoms()))
                .map(|((_, w), ((_, wy), (_, wz)))| {
                    (*w - (ca.conj() * *wy + cb.conj() * *wz)).norm()
                })
                .fold(0.0, f64::max);
            recs.push(VerificationRecord::new("Thm3.7.ii", seed, worst, 1e-9));

            // Thm 3.7 (iii): mass bound
            let excess = (nu.total_mass().norm() - x.norm() * y.norm()).max(0.0);
            recs.push(VerificationRecord::new("Thm3.7.iii", seed, excess, 1e-12));

            // Thm 3.11 pairing bound on a random selection
            let kdist = d.distinct_angles().len();
            let sel: Vec<usize> = (0..kdist).filter(|k| k % 2 == inst % 2).collect();
            let pairing = spectral_pairing(&d, &sel, &x, &y)?;
            let excess = (pairing.norm() - x.norm() * y.norm()).max(0.0);
            recs.push(VerificationRecord::new("Thm3.11.i.bound", seed, excess, 1e-12));

            // Thm 3.11 (ii): full and empty selections
            let all: Vec<usize> = (0..kdist).collect();
            let full = (spectral_pairing(&d, &all, &x, &y)? - inner(&x, &y)?).norm();
            recs.push(VerificationRecord::new("Thm3.11.ii.full", seed, full, 1e-10));
            let empty = spectral_pairing(&d, &[], &x, &y)?.norm();
            recs.push(VerificationRecord::new("Thm3.11.ii.empty", seed, empty, 1e-12));

            // Thm 3.11 (iv)/(vi): symmetric selections as operators
            let mut sym_a: Vec<usize> = Vec::new();
            for k in 0..kdist.div_ceil(2) {
                sym_a.push(k);
                sym_a.push(d.mirror_index(k));
            }
            sym_a.sort_unstable();
            sym_a.dedup();
            let mut sym_b: Vec<usize> = Vec::new();
            for k in kdist / 2..kdist {
                sym_b.push(k);
                sym_b.push(d.mirror_index(k));
            }
            sym_b.sort_unstable();
            sym_b.dedup();
            let inter: Vec<usize> = sym_a.iter().copied().filter(|k| sym_b.contains(k)).collect();
            let e_a = sphere_projector_from_e(&d, &sym_a)?;
            let e_b = sphere_projector_from_e(&d, &sym_b)?;
            let e_inter = sphere_projector_from_e(&d, &inter)?;
            recs.push(VerificationRecord::new(
                "Thm3.11.iv",
                seed,
                e_a.mul(&e_b).sub(&e_inter).frobenius(),
                1e-9,
            ));
            recs.push(VerificationRecord::new(
                "Thm3.11.vi",
                seed,
                e_a.mul(&u).sub(&u.mul(&e_a)).frobenius(),
                1e-9,
            ));
            Ok(recs)
        };
        match run() {
            Ok(r) => r,
            Err(_) => {
                for id in [
                    "Eq3.7.moments",
                    "Thm3.4.qpositive",
                    "Lemma3.6.psd",
                    "Rem3.4.hermitian",
                    "Eq3.4.polarization",
                    "Thm3.7.i",
                    "Thm3.7.ii",
                    "Thm3.7.iii",
                    "Thm3.11.i.bound",
                    "Thm3.11.ii.full",
                    "Thm3.11.ii.empty",
                    "Thm3.11.iv",
                    "Thm3.11.vi",
                ] {
                    recs.push(VerificationRecord::broken(id, seed, 1e-9));
                }
                recs
            }
        }
    });
    out.extend(records.into_iter().flatten());

    // Remark 3.8: a recorded instance with nu_{x,y} != conj(nu_{y,x})
    let witness_seed = cfg.seed;
    let witness = (|| -> Result<f64> {
        let u = QMatrix::scalar(exp_unit(&UNIT_I, 0.8));
        let d = decompose(&u)?;
        let x = QVector::from_slice(&[Quaternion::real(1.0)]);
        let y = QVector::from_slice(&[crate::quat::J]);
        let xy = pair_measure(&d, &x, &y)?;
        let yx = pair_measure(&d, &y, &x)?;
        Ok(xy
            .atoms()
            .iter()
            .zip(yx.atoms())
            .map(|((_, a), (_, b))| (*a - b.conj()).norm())
            .fold(0.0, f64::max))
    })()
    .unwrap_or(0.0);
    // the record passes when the asymmetry witness is present
    let deficit = (1e-3 - witness.min(1e-3)).max(0.0);
    out.push(VerificationRecord::new("Rem3.8.witness", witness_seed, deficit, 0.0));
}

fn self_adjointness_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let records = exec::map_indexed(cfg.instances, |inst| {
        let seed = cfg.seed.wrapping_mul(6007).wrapping_add(inst as u64);
        let n = cfg.dim_for(inst);
        let mut recs = Vec::new();

        // complex-subspace unitaries: check true, j-parts of measures vanish
        let complex_side = (|| -> Result<f64> {
            let u = random::random_complex_unitary(n, seed)?;
            if !complex_preserving_check(&u)? {
                return Ok(f64::INFINITY);
            }
            let d = decompose(&u)?;
            let mut rng = random::rng_for(seed ^ 0x77);
            use rand::Rng;
            let x = QVector::from_slice(
                &(0..n)
                    .map(|_| {
                        Quaternion::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                            0.0,
                            0.0,
                        )
                    })
                    .collect::<Vec<_>>(),
            );
            let nu = diag_measure(&d, &x)?;
            Ok(nu
                .atoms()
                .iter()
                .map(|(_, w)| (w.y * w.y + w.z * w.z).sqrt())
                .fold(0.0, f64::max))
        })()
        .unwrap_or(f64::INFINITY);
        recs.push(VerificationRecord::new("Thm3.12.complex", seed, complex_side, 1e-10));

        // genuinely quaternionic unitaries: check false with a nu2 witness
        let quat_side = (|| -> Result<f64> {
            let mut attempt = 0u64;
            loop {
                let u = random::random_unitary(n, seed.wrapping_add(attempt * 7919))?;
                if !complex_preserving_check(&u)? {
                    let d = decompose(&u)?;
                    let mut best = 0.0f64;
                    for probe in 0..4u64 {
                        let x = random::random_qvector(n, seed ^ (0x900 + probe));
                        let nu = diag_measure(&d, &x)?;
                        best = best.max(
                            nu.atoms()
                                .iter()
                                .map(|(_, w)| (w.y * w.y + w.z * w.z).sqrt())
                                .fold(0.0, f64::max),
                        );
                    }
                    // pass iff some measure exhibits a nonvanishing nu2 part
                    return Ok((1e-6 - best.min(1e-6)).max(0.0));
                }
                attempt += 1;
                if attempt > 16 {
                    return Ok(f64::INFINITY);
                }
            }
        })()
        .unwrap_or(f64::INFINITY);
        recs.push(VerificationRecord::new("Thm3.12.quaternionic", seed, quat_side, 0.0));
        recs
    });
    out.extend(records.into_iter().flatten());
}

fn calculus_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let records = exec::map_indexed(cfg.instances, |inst| {
        let seed = cfg.seed.wrapping_mul(7013).wrapping_add(inst as u64);
        let n = cfg.dim_for(inst);
        let ids = [
            "Thm3.16.poly",
            "Thm3.16.inverse",
            "Thm3.16.converge",
            "Thm3.16.product",
            "Eq1.3.link",
        ];
        let run = || -> Result<Vec<VerificationRecord>> {
            let u = random::random_unitary(n, seed)?;
            let d = decompose(&u)?;
            let mut recs = Vec::new();

            // real-coefficient trig polynomial of degree <= 8
            let mut rng = random::rng_for(seed ^ 0xcafe);
            use rand::Rng;
            let coeffs: Vec<Quaternion> =
                (0..17).map(|_| Quaternion::real(rng.gen_range(-1.0..1.0))).collect();
            let p = TrigPoly::new(coeffs)?;
            let direct = funcalc_trigpoly(&p, &u)?;
            let spectral = funcalc_spectral(&p.as_slice_function(), &d)?;
            recs.push(VerificationRecord::new(
                ids[0],
                seed,
                spectral.sub(&direct).frobenius(),
                1e-10,
            ));

            // q^{-1} recovers U*
            let inverse = funcalc_spectral(&SliceFunction::builtin("inverse").expect("builtin"), &d)?;
            recs.push(VerificationRecord::new(
                ids[1],
                seed,
                inverse.sub(&u.adjoint()).frobenius(),
                1e-10,
            ));

            // Weierstrass table: operator error bounded by the angle sup
            // error and grid error monotone within noise
            let f = SliceFunction::builtin("abs_cos").expect("builtin");
            let rows = funcalc_converge(&f, &u, &[4, 16, 64])?;
            let mut residual = 0.0f64;
            for row in &rows {
                residual = residual.max(row.operator_error - row.sup_error_at_angles);
            }
            for pair in rows.windows(2) {
                residual = residual.max(pair[1].sup_error_on_grid - pair[0].sup_error_on_grid);
            }
            recs.push(VerificationRecord::new(ids[2], seed, residual.max(0.0), 1e-9));

            // product rule for intrinsic functions
            let f = SliceFunction::builtin("square").expect("builtin");
            let g = SliceFunction::builtin("inverse").expect("builtin");
            let fg = SliceFunction::product_intrinsic(&f, &g);
            let lhs = funcalc_spectral(&f, &d)?.mul(&funcalc_spectral(&g, &d)?);
            let rhs = funcalc_spectral(&fg, &d)?;
            recs.push(VerificationRecord::new(
                ids[3],
                seed,
                lhs.sub(&rhs).frobenius(),
                1e-9,
            ));

            // spectral vs contour calculus on monomials: both routes must
            // reproduce the matrix power
            let contour = ContourSpec::real_circle(cfg.plane, 0.0, 3.0, cfg.nodes_per_loop)?;
            let mut worst = 0.0f64;
            for m in 0..=3usize {
                let poly = RightPoly::monomial(m, Quaternion::real(1.0))?;
                let via_contour = funcalc_contour(&poly, &u, &contour)?;
                let power = u.pow(m);
                let term = TrigPoly::from_terms(m.max(1), &[(m as i64, Quaternion::real(1.0))])?;
                let via_spectral = funcalc_spectral(&term.as_slice_function(), &d)?;
                let via_horner = funcalc_trigpoly(&term, &u)?;
                worst = worst.max(via_contour.sub(&power).frobenius());
                worst = worst.max(via_spectral.sub(&power).frobenius());
                worst = worst.max(via_horner.sub(&power).frobenius());
            }
            recs.push(VerificationRecord::new(ids[4], seed, worst, 1e-9));
            Ok(recs)
        };
        run().unwrap_or_else(|_| {
            ids.iter().map(|id| VerificationRecord::broken(id, seed, 1e-9)).collect()
        })
    });
    out.extend(records.into_iter().flatten());
}

fn bridge_records(cfg: &RunConfig, out: &mut Vec<VerificationRecord>) {
    let quad = cfg.quad();
    let records = exec::map_indexed(cfg.instances, |inst| {
        let seed = cfg.seed.wrapping_mul(8009).wrapping_add(inst as u64);
        let n = cfg.dim_for(inst);
        let mut recs = Vec::new();
        let run = || -> Result<Vec<VerificationRecord>> {
            let u = random::random_unitary(n, seed)?;
            let spectrum = s_spectrum(&u)?;
            let d = decompose(&u)?;
            let mut recs = Vec::new();

            // Thm 4.3: Riesz projector of each sphere equals the symmetric
            // spectral window
            let mut worst = 0.0f64;
            for (idx, sp) in spectrum.spheres.iter().enumerate() {
                let riesz = riesz_projector(&u, &[idx], &quad)?;
                let window = d.symmetric_window_for_sphere(sp.u, sp.v)?;
                let via_e = sphere_projector_from_e(&d, &window)?;
                worst = worst.max(riesz.sub(&via_e).frobenius());
            }
            recs.push(VerificationRecord::new("Thm4.3.bridge", seed, worst, 2.0 * cfg.eps_q));

            // Thm 4.2: plane independence of the projectors
            let mut rng = random::rng_for(seed ^ 0xbeef);
            let base = riesz_projector(&u, &[0], &quad)?;
            let mut worst = 0.0f64;
            for _ in 0..5 {
                let plane = random::random_unit_imaginary(&mut rng);
                let mut alt_quad = quad.clone();
                alt_quad.plane = plane;
                let alt = riesz_projector(&u, &[0], &alt_quad)?;
                worst = worst.max(alt.sub(&base).frobenius());
            }
            recs.push(VerificationRecord::new("Thm4.2.plane", seed, worst, 2.0 * cfg.eps_q));
            Ok(recs)
        };
        match run() {
            Ok(r) => r,
            Err(_) => {
                recs.push(VerificationRecord::broken("Thm4.3.bridge", seed, 2.0 * cfg.eps_q));
                recs.push(VerificationRecord::broken("Thm4.2.plane", seed, 2.0 * cfg.eps_q));
                recs
            }
        }
    });
    out.extend(records.into_iter().flatten());
}

/// Runs every theorem family and returns one record per
/// (theorem, instance). Failures come back as records, not errors.
pub fn verify_all(cfg: &RunConfig) -> Result<Vec<VerificationRecord>> {
    cfg.validate()?;
    let mut out = Vec::new();
    resolvent_equation_records(cfg, &mut out);
    lemma_records(cfg, &mut out);
    riesz_records(cfg, &mut out);
    unit_circle_records(cfg, &mut out);
    measure_records(cfg, &mut out);
    self_adjointness_records(cfg, &mut out);
    calculus_records(cfg, &mut out);
    bridge_records(cfg, &mut out);
    Ok(out)
}
