//! Seeded instance generators for the verification suites.
//!
//! All generators are deterministic functions of their seed (ChaCha8
//! streams), so suite instances can be distributed over threads without
//! losing reproducibility. Random quaternions take four independent
//! Gaussian components, which makes the distribution rotation-invariant
//! on ℍ.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmatrix::{self, inner, QMatrix, QVector};
use crate::quat::{Quaternion, UnitImaginary};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

pub fn random_unit_imaginary(rng: &mut ChaCha8Rng) -> UnitImaginary {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(u) = UnitImaginary::new(x, y, z) {
            return u;
        }
    }
}

pub fn random_qvector(n: usize, seed: u64) -> QVector {
    let mut rng = rng_for(seed);
    QVector::from_slice(&(0..n).map(|_| random_quaternion(&mut rng)).collect::<Vec<_>>())
}

pub fn random_qmatrix(n: usize, seed: u64) -> QMatrix {
    let mut rng = rng_for(seed);
    let mut a = QMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = random_quaternion(&mut rng);
        }
    }
    a
}

fn gram_columns<F: FnMut(&mut ChaCha8Rng) -> Quaternion>(
    n: usize,
    rng: &mut ChaCha8Rng,
    mut entry: F,
) -> QMatrix {
    let mut cols: Vec<QVector> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = QVector::from_slice(&(0..n).map(|_| entry(rng)).collect::<Vec<_>>());
        for u in &cols {
            let c = inner(&v, u).expect("dimensions match");
            v = v.sub(&u.scale_right(c));
        }
        let norm = v.norm();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.scale_right(Quaternion::real(1.0 / norm)));
    }
    let mut u = QMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            u[(i, j)] = col[i];
        }
    }
    u
}

/// A seeded random unitary, built by Gram orthonormalization of Gaussian
/// columns under the right-module inner product.
pub fn random_unitary(n: usize, seed: u64) -> Result<QMatrix> {
    qmatrix::check_dim(n)?;
    let mut rng = rng_for(seed);
    Ok(gram_columns(n, &mut rng, random_quaternion))
}

/// A unitary whose entries stay in the distinguished plane `ℂ_i`, i.e. one
/// that preserves the complex subspace M.
pub fn random_complex_unitary(n: usize, seed: u64) -> Result<QMatrix> {
    qmatrix::check_dim(n)?;
    let mut rng = rng_for(seed);
    Ok(gram_columns(n, &mut rng, |r| {
        Quaternion::new(r.sample(StandardNormal), r.sample(StandardNormal), 0.0, 0.0)
    }))
}

/// A diagonalizable matrix `V D V^{-1}` with right eigenvalues on
/// well-separated spheres; returns the matrix and the sampled `(u, v)`
/// sphere parameters.
pub fn random_diagonalizable(n: usize, seed: u64) -> Result<(QMatrix, Vec<(f64, f64)>)> {
    qmatrix::check_dim(n)?;
    let mut rng = rng_for(seed);
    let mut spheres: Vec<(f64, f64)> = Vec::with_capacity(n);
    while spheres.len() < n {
        let u: f64 = rng.gen_range(-1.5..1.5);
        let v: f64 = if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.3..1.5) };
        if spheres.iter().all(|(a, b)| (u - a).hypot(v - b) > 0.3) {
            spheres.push((u, v));
        }
    }
    let diag: Vec<Quaternion> = spheres
        .iter()
        .map(|&(u, v)| {
            let unit = random_unit_imaginary(&mut rng);
            Quaternion::real(u) + unit.as_quaternion().scale(v)
        })
        .collect();
    let d = QMatrix::diagonal(&diag);
    loop {
        let mut v = QMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                v[(i, j)] = random_quaternion(&mut rng);
            }
        }
        match qmatrix::invert(&v) {
            Ok(vinv) => {
                if v.frobenius() * vinv.frobenius() < 50.0 * n as f64 {
                    return Ok((v.mul(&d).mul(&vinv), spheres));
                }
            }
            Err(Error::NearSingular { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}
