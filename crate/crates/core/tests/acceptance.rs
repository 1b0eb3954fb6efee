//! Acceptance suite: every criterion runs at its stated instance count and
//! tolerance and prints one pass/fail line (visible with `--nocapture`).

use qspec_core::contour::{
    check_lemma_identity, integrate_left, riesz_projector, ContourSpec, QuadratureConfig,
};
use qspec_core::qmatrix::{inner, QMatrix, QVector};
use qspec_core::quat::{sphere_of, Quaternion, UNIT_I};
use qspec_core::random;
use qspec_core::slicefun::{funcalc_converge, funcalc_spectral, funcalc_trigpoly, SliceFunction, TrigPoly};
use qspec_core::spectral::{
    complex_preserving_check, decompose, diag_measure, herglotz_sequence, pair_measure, polarize,
    positive_definite_check, q_positivity, sphere_projector_from_e,
};
use qspec_core::sspectrum::{
    check_resolvent_equation, s_resolvent_left_unchecked, s_resolvent_right_unchecked, s_spectrum,
};

fn report(criterion: &str, description: &str, residual: f64, tolerance: f64) {
    let verdict = if residual <= tolerance { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict}  max_residual={residual:.3e}  tolerance={tolerance:.1e}  ({description})");
    assert!(
        residual <= tolerance,
        "{criterion} failed: residual {residual:.3e} > tolerance {tolerance:.1e}"
    );
}

fn off_spectrum_sample(
    rng: &mut rand_chacha::ChaCha8Rng,
    spectrum: &qspec_core::sspectrum::SSpectrum,
) -> Quaternion {
    use rand::Rng;
    loop {
        let q = random::random_quaternion(rng);
        if q.norm() < 1e-6 {
            continue;
        }
        let s = q.scale(rng.gen_range(1.2..3.0) / q.norm());
        if spectrum.distance_to(&s).0 > 0.05 {
            return s;
        }
    }
}

#[test]
fn criterion_01_s_resolvent_equation() {
    let mut worst = 0.0f64;
    for inst in 0..200u64 {
        let n = 1 + (inst as usize) % 6;
        let a = if inst % 2 == 0 {
            random::random_unitary(n, 9000 + inst).unwrap()
        } else {
            random::random_diagonalizable(n, 9000 + inst).unwrap().0
        };
        let spectrum = s_spectrum(&a).unwrap();
        let mut rng = random::rng_for(100_000 + inst);
        let s = off_spectrum_sample(&mut rng, &spectrum);
        let p = loop {
            let p = off_spectrum_sample(&mut rng, &spectrum);
            if sphere_of(&p).distance(&sphere_of(&s)) > 0.05 {
                break p;
            }
        };
        let lhs = s_resolvent_right_unchecked(&s, &a)
            .unwrap()
            .mul(&s_resolvent_left_unchecked(&p, &a).unwrap());
        let scale = lhs.frobenius().max(f64::MIN_POSITIVE);
        let (r1, r2) = check_resolvent_equation(&s, &p, &a).unwrap();
        worst = worst.max(r1 / scale).max(r2 / scale);
    }
    report(
        "01",
        "S-resolvent equation, both forms, 200 instances, n <= 6",
        worst,
        1e-9,
    );
}

#[test]
fn criterion_02_riesz_projector_suite() {
    let quad = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for inst in 0..100u64 {
        let n = 1 + (inst as usize) % 6;
        let a = if inst < 50 {
            random::random_unitary(n, 11_000 + inst).unwrap()
        } else {
            random::random_diagonalizable(n, 11_000 + inst).unwrap().0
        };
        let spectrum = s_spectrum(&a).unwrap();
        let k = spectrum.spheres.len();
        let scale = 1.0 + a.frobenius();
        let all: Vec<usize> = (0..k).collect();
        let sigma: Vec<usize> = (0..k.div_ceil(2)).collect();
        let lower: Vec<usize> = (0..k / 2).collect();
        let upper: Vec<usize> = (k / 2..k).collect();
        let mut tau: Vec<usize> = (k / 2..k).chain(0..1).collect();
        tau.sort_unstable();
        tau.dedup();
        let both: Vec<usize> = sigma.iter().copied().filter(|i| tau.contains(i)).collect();

        let p_all = riesz_projector(&a, &all, &quad).unwrap();
        let p_sigma = riesz_projector(&a, &sigma, &quad).unwrap();
        let p_lower = riesz_projector(&a, &lower, &quad).unwrap();
        let p_upper = riesz_projector(&a, &upper, &quad).unwrap();
        let p_tau = riesz_projector(&a, &tau, &quad).unwrap();
        let p_both = riesz_projector(&a, &both, &quad).unwrap();

        // (i) idempotent, (ii) commutes, (iii) full = identity,
        // (iv) empty region integrates to zero, (v) additive, (vi) multiplicative
        worst = worst.max(p_sigma.mul(&p_sigma).sub(&p_sigma).frobenius());
        worst = worst.max(a.mul(&p_sigma).sub(&p_sigma.mul(&a)).frobenius() / scale);
        worst = worst.max(p_all.sub(&QMatrix::identity(n)).frobenius());
        let far = ContourSpec::real_circle(UNIT_I, 4.0, 0.3, 256).unwrap();
        worst = worst.max(integrate_left(&far, &a).unwrap().frobenius());
        worst = worst.max(p_lower.add(&p_upper).sub(&p_all).frobenius());
        worst = worst.max(p_sigma.mul(&p_tau).sub(&p_both).frobenius());
    }
    report(
        "02",
        "Riesz projector properties (i)-(vi), 50 unitary + 50 diagonalizable",
        worst,
        1e-7,
    );
}

#[test]
fn criterion_03_lemma_identities() {
    let mut worst = 0.0f64;
    for inst in 0..50u64 {
        let n = 1 + (inst as usize) % 4;
        let b = random::random_qmatrix(n, 13_000 + inst);
        let scale = 1.0 + b.frobenius();
        let u0 = 0.4 * (inst as f64).sin();
        let v0 = 0.5 + 0.2 * (inst as f64).cos().abs();
        let contour = ContourSpec::mirrored_pair(UNIT_I, u0, v0, 0.2, 256).unwrap();
        let mut rng = random::rng_for(14_000 + inst);
        let unit = random::random_unit_imaginary(&mut rng);
        let p_in = Quaternion::real(u0) + unit.as_quaternion().scale(v0);
        let p_out = Quaternion::real(u0 + 3.0) + unit.as_quaternion().scale(v0 + 1.0);
        let inside = check_lemma_identity(&b, &p_in, &contour).unwrap();
        let outside = check_lemma_identity(&b, &p_out, &contour).unwrap();
        worst = worst.max(inside.sub(&b).frobenius() / scale);
        worst = worst.max(outside.frobenius() / scale);
    }
    report(
        "03",
        "Lemma 2.4 inside-case B / outside-case 0, 50 instances",
        worst,
        1e-7,
    );
}

#[test]
fn criterion_04_unit_circle_spectrum() {
    let mut worst = 0.0f64;
    for inst in 0..50u64 {
        let n = 1 + (inst as usize) % 8;
        let u = random::random_unitary(n, 15_000 + inst).unwrap();
        for sp in s_spectrum(&u).unwrap().spheres {
            worst = worst.max((sp.u * sp.u + sp.v * sp.v - 1.0).abs());
        }
    }
    report(
        "04",
        "unitary S-spectrum on the unit sphere, 50 instances, n <= 8",
        worst,
        1e-10,
    );
}

#[test]
fn criterion_05_herglotz_moments_and_positivity() {
    let mut worst_moment = 0.0f64;
    let mut worst_psd = 0.0f64;
    for inst in 0..100u64 {
        let n = 1 + (inst as usize) % 6;
        let u = random::random_unitary(n, 17_000 + inst).unwrap();
        let d = decompose(&u).unwrap();
        let x = random::random_qvector(n, 18_000 + inst);
        let y = random::random_qvector(n, 19_000 + inst);
        let nu = pair_measure(&d, &x, &y).unwrap();
        let ustar = u.adjoint();
        let mut fwd = x.clone();
        let mut bwd = x.clone();
        worst_moment = worst_moment.max((nu.moment(0) - inner(&x, &y).unwrap()).norm());
        for m in 1..=12i64 {
            fwd = u.matvec(&fwd).unwrap();
            bwd = ustar.matvec(&bwd).unwrap();
            worst_moment = worst_moment.max((nu.moment(m) - inner(&fwd, &y).unwrap()).norm());
            worst_moment = worst_moment.max((nu.moment(-m) - inner(&bwd, &y).unwrap()).norm());
        }
        // diagonal measures q-positive
        let report_x = q_positivity(&diag_measure(&d, &x).unwrap());
        let block_min = report_x
            .paired_blocks
            .iter()
            .map(|b| b.min_eigenvalue)
            .fold(f64::INFINITY, f64::min);
        worst_psd = worst_psd
            .max((-block_min).max(0.0))
            .max(report_x.antisymmetry_residual)
            .max(report_x.diagonal_imag_residual);
        // Toeplitz PSD at N = 12
        let r = herglotz_sequence(&u, &x, 12).unwrap();
        let min_eig = positive_definite_check(&r).unwrap();
        worst_psd = worst_psd.max((-min_eig).max(0.0));
    }
    report(
        "05a",
        "moment identity |<U^n x, y> - sum e^{int} w| over n in [-12, 12], 100 instances",
        worst_moment,
        1e-9,
    );
    report(
        "05b",
        "q-positivity of diagonal measures and Toeplitz PSD at N = 12",
        worst_psd,
        1e-10,
    );
}

#[test]
fn criterion_06_polarization() {
    let mut worst = 0.0f64;
    for inst in 0..100u64 {
        let n = 1 + (inst as usize) % 6;
        let u = random::random_unitary(n, 21_000 + inst).unwrap();
        let d = decompose(&u).unwrap();
        let x = random::random_qvector(n, 22_000 + inst);
        let y = random::random_qvector(n, 23_000 + inst);
        let direct = pair_measure(&d, &x, &y).unwrap();
        let polar = polarize(&d, &x, &y).unwrap();
        worst = worst.max(direct.max_weight_distance(&polar));
    }
    report(
        "06",
        "polarization formula vs direct pairing, atomwise, 100 instances",
        worst,
        1e-9,
    );
}

#[test]
fn criterion_07_spectral_calculus() {
    use rand::Rng;
    let mut worst_poly = 0.0f64;
    let mut worst_inverse = 0.0f64;
    let mut worst_converge = 0.0f64;
    for inst in 0..20u64 {
        let n = 1 + (inst as usize) % 5;
        let u = random::random_unitary(n, 25_000 + inst).unwrap();
        let d = decompose(&u).unwrap();
        // real-coefficient trig polynomial of degree 8
        let mut rng = random::rng_for(26_000 + inst);
        let coeffs: Vec<Quaternion> =
            (0..17).map(|_| Quaternion::real(rng.gen_range(-1.0..1.0))).collect();
        let p = TrigPoly::new(coeffs).unwrap();
        let horner = funcalc_trigpoly(&p, &u).unwrap();
        let spectral = funcalc_spectral(&p.as_slice_function(), &d).unwrap();
        worst_poly = worst_poly.max(spectral.sub(&horner).frobenius());
        // f(q) = q^{-1} gives U*
        let inv = funcalc_spectral(&SliceFunction::builtin("inverse").unwrap(), &d).unwrap();
        worst_inverse = worst_inverse.max(inv.sub(&u.adjoint()).frobenius());
        // Weierstrass convergence table at degrees 4/16/64
        let f = SliceFunction::builtin("abs_cos").unwrap();
        let rows = funcalc_converge(&f, &u, &[4, 16, 64]).unwrap();
        for row in &rows {
            worst_converge = worst_converge.max(row.operator_error - row.sup_error_at_angles);
        }
        for pair in rows.windows(2) {
            worst_converge = worst_converge.max(pair[1].sup_error_on_grid - pair[0].sup_error_on_grid);
        }
    }
    report(
        "07a",
        "funcalc_spectral vs Horner for real trig polynomials of degree 8",
        worst_poly,
        1e-10,
    );
    report("07b", "f(q) = q^{-1} yields U*", worst_inverse, 1e-10);
    report(
        "07c",
        "Weierstrass table monotone, operator error within angle sup error",
        worst_converge.max(0.0),
        1e-9,
    );
}

#[test]
fn criterion_08_bridge_theorem() {
    let quad = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for inst in 0..25u64 {
        let n = 1 + (inst as usize) % 5;
        let u = random::random_unitary(n, 27_000 + inst).unwrap();
        let spectrum = s_spectrum(&u).unwrap();
        let d = decompose(&u).unwrap();
        for (idx, sp) in spectrum.spheres.iter().enumerate() {
            let riesz = riesz_projector(&u, &[idx], &quad).unwrap();
            let window = d.symmetric_window_for_sphere(sp.u, sp.v).unwrap();
            let via_e = sphere_projector_from_e(&d, &window).unwrap();
            worst = worst.max(riesz.sub(&via_e).frobenius());
        }
    }
    report(
        "08",
        "P(sphere) = E-window projector for every sphere, 25 unitaries",
        worst,
        2e-7,
    );
}

#[test]
fn criterion_09_plane_independence() {
    let mut worst = 0.0f64;
    for inst in 0..10u64 {
        let n = 1 + (inst as usize) % 5;
        let u = random::random_unitary(n, 29_000 + inst).unwrap();
        let base = riesz_projector(&u, &[0], &QuadratureConfig::default()).unwrap();
        let mut rng = random::rng_for(30_000 + inst);
        for _ in 0..5 {
            let plane = random::random_unit_imaginary(&mut rng);
            let quad = QuadratureConfig::with_plane(plane);
            let alt = riesz_projector(&u, &[0], &quad).unwrap();
            worst = worst.max(alt.sub(&base).frobenius());
        }
    }
    report(
        "09",
        "Riesz projectors agree across 5 random slice planes",
        worst,
        2e-7,
    );
}

#[test]
fn criterion_10_self_adjointness() {
    use rand::Rng;
    let mut worst_complex = 0.0f64;
    let mut quaternionic_ok = true;
    let mut witness_recorded = 0.0f64;
    for inst in 0..20u64 {
        let n = 1 + (inst as usize) % 5;
        // complex-subspace side: check true and nu2 vanishes on x in M
        let u = random::random_complex_unitary(n, 31_000 + inst).unwrap();
        if !complex_preserving_check(&u).unwrap() {
            worst_complex = f64::INFINITY;
            continue;
        }
        let d = decompose(&u).unwrap();
        let mut rng = random::rng_for(32_000 + inst);
        let x = QVector::from_slice(
            &(0..n)
                .map(|_| Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0, 0.0))
                .collect::<Vec<_>>(),
        );
        let nu = diag_measure(&d, &x).unwrap();
        for (_, w) in nu.atoms() {
            worst_complex = worst_complex.max((w.y * w.y + w.z * w.z).sqrt());
        }

        // genuinely quaternionic side: check false plus a nu2 witness
        let mut uq = random::random_unitary(n, 33_000 + inst).unwrap();
        let mut bump = 0u64;
        while complex_preserving_check(&uq).unwrap() {
            bump += 1;
            uq = random::random_unitary(n, 33_000 + inst + 7919 * bump).unwrap();
        }
        if complex_preserving_check(&uq).unwrap() {
            quaternionic_ok = false;
            continue;
        }
        let dq = decompose(&uq).unwrap();
        let mut best = 0.0f64;
        for probe in 0..4u64 {
            let x = random::random_qvector(n, 34_000 + inst * 16 + probe);
            let nu = diag_measure(&dq, &x).unwrap();
            for (_, w) in nu.atoms() {
                best = best.max((w.y * w.y + w.z * w.z).sqrt());
            }
        }
        witness_recorded = if witness_recorded == 0.0 { best } else { witness_recorded.min(best) };
        if best <= 1e-6 {
            quaternionic_ok = false;
        }
    }
    report(
        "10a",
        "complex-subspace unitaries: check true, nu2 components vanish on M",
        worst_complex,
        1e-10,
    );
    let residual = if quaternionic_ok { 0.0 } else { 1.0 };
    println!(
        "acceptance 10b: smallest recorded nu2 witness across quaternionic instances = {witness_recorded:.3e}"
    );
    report(
        "10b",
        "quaternionic unitaries: check false with nonvanishing nu2 witness",
        residual,
        0.5,
    );
}
