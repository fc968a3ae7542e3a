//! Seeded random generation of states, observables, and bases.
//!
//! Randomized checks must be reproducible from a single `u64` seed, and the
//! draw for trial *k* must not depend on how many trials ran before it, so
//! every trial derives its own generator via [`trial_rng`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::states::{DensityMatrix, Ensemble, PureState};

/// Deterministic generator for trial number `trial` of a run seeded with
/// `seed`. Distinct (seed, trial) pairs get independent streams regardless
/// of evaluation order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial.wrapping_add(1))))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Single-qubit amplitudes drawn uniformly on the Bloch sphere: cos θ
/// uniform in [−1, 1] and the relative phase uniform in [0, 2π), with the
/// leading amplitude kept real.
pub fn random_qubit_amplitudes(rng: &mut impl Rng) -> (Complex64, Complex64) {
    let cos_theta: f64 = rng.random_range(-1.0..=1.0);
    let alpha = ((1.0 + cos_theta) / 2.0).sqrt();
    let beta = ((1.0 - cos_theta) / 2.0).sqrt();
    let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    (
        Complex64::new(alpha, 0.0),
        Complex64::from_polar(beta, phase),
    )
}

/// Random pure state: a normalized vector of complex Gaussians, which is
/// uniform under the unitary group.
pub fn random_pure_state(rng: &mut impl Rng, qubits: usize) -> PureState {
    assert!(qubits >= 1);
    let dim = 1usize << qubits;
    loop {
        let v = ComplexVector::new((0..dim).map(|_| gaussian(rng)).collect())
            .expect("Gaussian samples are finite");
        let norm = v.norm();
        if norm > 1e-6 {
            return PureState::new(qubits, v.scale(Complex64::new(1.0 / norm, 0.0)))
                .expect("explicitly normalized");
        }
    }
}

/// Random Hermitian matrix: independent complex Gaussian entries,
/// symmetrized as (M + M†)/2.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    m.add(&m.dagger()).scale(Complex64::new(0.5, 0.0))
}

/// Random orthonormal basis: Gram-Schmidt on Gaussian vectors.
pub fn random_orthonormal_basis(rng: &mut impl Rng, dim: usize) -> Vec<ComplexVector> {
    let mut basis: Vec<ComplexVector> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = ComplexVector::new((0..dim).map(|_| gaussian(rng)).collect())
            .expect("Gaussian samples are finite");
        for b in &basis {
            let overlap = b.inner(&v);
            v = v.add(&b.scale(-overlap));
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
    }
    basis
}

/// Random unitary, drawn by orthonormalizing Gaussian columns.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let basis = random_orthonormal_basis(rng, dim);
    ComplexMatrix::from_fn(dim, |r, c| basis[c].get(r))
}

/// Random single-qubit mixed state: an unevenly weighted mixture of two
/// random pure states.
pub fn random_qubit_density(rng: &mut impl Rng) -> DensityMatrix {
    let p: f64 = rng.random_range(0.0..=1.0);
    let a = random_pure_state(rng, 1);
    let b = random_pure_state(rng, 1);
    Ensemble::new(vec![(p, a), (1.0 - p, b)])
        .expect("weights sum to 1")
        .to_density()
        .expect("mixtures of valid states are valid")
}
