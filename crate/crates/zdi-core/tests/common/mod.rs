//! Shared random-matrix generators for the integration suites. Everything is
//! seeded; suites stay reproducible run to run.

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zdi_core::{random_unitary, unitary_conjugate, Matrix64};

pub type C64 = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Standard complex Gaussian entry.
pub fn random_entry(rng: &mut ChaCha8Rng) -> C64 {
    // Box-Muller from two uniforms keeps us independent of rand_distr here.
    let u1: f64 = rng.gen_range(1e-12..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    c(r * u2.cos(), r * u2.sin())
}

/// Nonzero weight with modulus in [0.3, 2].
pub fn random_weight(rng: &mut ChaCha8Rng) -> C64 {
    let modulus: f64 = rng.gen_range(0.3..2.0);
    let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex::from_polar(modulus, phase)
}

pub fn random_general(n: usize, rng: &mut ChaCha8Rng) -> Matrix64 {
    let data = (0..n * n).map(|_| random_entry(rng)).collect();
    Matrix64::new(n, data).unwrap()
}

pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> Matrix64 {
    random_general(n, rng).real_part()
}

/// Normal matrix with the given eigenvalues under a random unitary basis.
pub fn normal_from_eigenvalues(eigs: &[C64], rng: &mut ChaCha8Rng) -> Matrix64 {
    let u = random_unitary::<f64>(eigs.len(), rng.gen());
    unitary_conjugate(&u, &Matrix64::diagonal(eigs))
}

/// Random normal matrix: `kernel_dim` zero eigenvalues plus nonzero ones with
/// moduli in [0.3, 2]; returns the matrix and its eigenvalues.
pub fn random_normal(n: usize, kernel_dim: usize, rng: &mut ChaCha8Rng) -> (Matrix64, Vec<C64>) {
    assert!(kernel_dim <= n);
    let mut eigs: Vec<C64> = (0..n - kernel_dim).map(|_| random_weight(rng)).collect();
    eigs.extend(std::iter::repeat(c(0.0, 0.0)).take(kernel_dim));
    eigs.shuffle(rng);
    (normal_from_eigenvalues(&eigs, rng), eigs)
}

/// Cycle block: weights on the superdiagonal plus the corner.
pub fn cycle_matrix(weights: &[C64]) -> Matrix64 {
    let n = weights.len();
    assert!(n >= 2);
    let mut a = Matrix64::zeros(n);
    for i in 0..n - 1 {
        a[(i, i + 1)] = weights[i];
    }
    a[(n - 1, 0)] = weights[n - 1];
    a
}

/// Path block of size `weights.len() + 1`: strictly upper bidiagonal.
pub fn path_matrix(weights: &[C64]) -> Matrix64 {
    let n = weights.len() + 1;
    let mut a = Matrix64::zeros(n);
    for (i, &w) in weights.iter().enumerate() {
        a[(i, i + 1)] = w;
    }
    a
}

/// Cyclic shift: the all-ones cycle.
pub fn cyclic_shift(n: usize) -> Matrix64 {
    cycle_matrix(&vec![c(1.0, 0.0); n])
}

pub fn random_cycle_weights(size: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..size).map(|_| random_weight(rng)).collect()
}

/// Component plan of a random weighted permutation matrix.
pub struct PermPlan {
    pub cycle_sizes: Vec<usize>,
    pub path_sizes: Vec<usize>,
}

/// Random weighted permutation matrix on scattered vertex labels, with no
/// 1-cycles. Returns the matrix and the size plan.
pub fn random_weighted_permutation(n: usize, rng: &mut ChaCha8Rng) -> (Matrix64, PermPlan) {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut remaining = n;
    let mut cursor = 0usize;
    let mut a = Matrix64::zeros(n);
    let mut plan = PermPlan {
        cycle_sizes: Vec::new(),
        path_sizes: Vec::new(),
    };
    while remaining > 0 {
        let make_cycle = remaining >= 2 && rng.gen_bool(0.5);
        if make_cycle {
            let size = rng.gen_range(2..=remaining);
            let verts = &labels[cursor..cursor + size];
            for s in 0..size {
                a[(verts[s], verts[(s + 1) % size])] = random_weight(rng);
            }
            plan.cycle_sizes.push(size);
            cursor += size;
            remaining -= size;
        } else {
            let size = rng.gen_range(1..=remaining);
            let verts = &labels[cursor..cursor + size];
            for s in 0..size.saturating_sub(1) {
                a[(verts[s], verts[s + 1])] = random_weight(rng);
            }
            plan.path_sizes.push(size);
            cursor += size;
            remaining -= size;
        }
    }
    (a, plan)
}

/// 3×3 matrix with a 2×2 zero corner: d = 2 whenever the remaining entries
/// are not all negligible.
pub fn random_corner_block3(rng: &mut ChaCha8Rng) -> Matrix64 {
    loop {
        let mut b = Matrix64::zeros(3);
        b[(0, 2)] = random_entry(rng);
        b[(1, 2)] = random_entry(rng);
        b[(2, 0)] = random_entry(rng);
        b[(2, 1)] = random_entry(rng);
        b[(2, 2)] = random_entry(rng);
        if b.frobenius_norm() > 0.5 {
            return b;
        }
    }
}

/// A ⊕ 0_m under a random unitary similarity.
pub fn padded_and_conjugated(a: &Matrix64, m: usize, rng: &mut ChaCha8Rng) -> Matrix64 {
    let padded = a.pad_with_zeros(m);
    let u = random_unitary::<f64>(padded.dim(), rng.gen());
    unitary_conjugate(&u, &padded)
}
