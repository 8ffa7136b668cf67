//! Eigenvalue sign counting for Hermitian matrices.
//!
//! Two routes are provided on purpose: `signature` classifies an explicit
//! (already computed) eigenvalue list, while `inertia` counts signs directly
//! through Householder tridiagonalization and a Sturm sequence, never forming
//! eigenvalues. The angle-sweep engine uses both and cross-checks them.

use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Counts of eigenvalues above, inside, and below the tolerance band `±τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub i_plus: usize,
    pub i_zero: usize,
    pub i_minus: usize,
}

impl Signature {
    pub fn n(&self) -> usize {
        self.i_plus + self.i_zero + self.i_minus
    }

    /// i_{≥0} = i_+ + i_0.
    pub fn i_geq0(&self) -> usize {
        self.i_plus + self.i_zero
    }

    /// i_{≤0} = i_- + i_0.
    pub fn i_leq0(&self) -> usize {
        self.i_minus + self.i_zero
    }
}

/// Classify a list of real eigenvalues with zero band `±τ`:
/// `i_plus = #{λ > τ}`, `i_zero = #{|λ| ≤ τ}`, `i_minus = #{λ < −τ}`.
pub fn signature<T: Scalar>(values: &[T], tau: T) -> Signature {
    debug_assert!(tau >= T::zero());
    let mut sig = Signature {
        i_plus: 0,
        i_zero: 0,
        i_minus: 0,
    };
    for &v in values {
        if v > tau {
            sig.i_plus += 1;
        } else if v < -tau {
            sig.i_minus += 1;
        } else {
            sig.i_zero += 1;
        }
    }
    sig
}

/// Real symmetric tridiagonal reduction of a Hermitian matrix: diagonal and
/// squared moduli of the subdiagonal (phases are irrelevant for inertia).
#[derive(Debug, Clone)]
pub struct Tridiagonal<T> {
    pub diag: Vec<T>,
    pub off_sq: Vec<T>,
}

/// Householder reduction to Hermitian tridiagonal form. The input is
/// symmetrized first; callers are expected to pass (numerically) Hermitian
/// matrices.
pub fn tridiagonalize<T: Scalar>(h: &ComplexMatrix<T>) -> Tridiagonal<T> {
    let n = h.dim();
    let mut w = h.real_part();
    let mut off_sq = vec![T::zero(); n.saturating_sub(1)];
    let scale = T::one().max(w.frobenius_norm());
    let tiny = scale * T::epsilon() * T::lit(1e-2);

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut x: Vec<Complex<T>> = (0..m).map(|i| w[(k + 1 + i, k)]).collect();
        let sigma = crate::matrix::vec_norm(&x);
        off_sq[k] = sigma * sigma;
        if sigma <= tiny {
            off_sq[k] = sigma * sigma;
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() > T::zero() {
            alpha / alpha.norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        x[0] += phase * sigma;
        let vnorm = crate::matrix::vec_norm(&x);
        for z in &mut x {
            *z = *z / vnorm;
        }
        // Trailing block update B ← B − 2vq* − 2qv* + 4K vv*, q = Bv, K = v*Bv.
        let mut q = vec![Complex::new(T::zero(), T::zero()); m];
        for (i, qi) in q.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..m {
                acc += w[(k + 1 + i, k + 1 + j)] * x[j];
            }
            *qi = acc;
        }
        let kq = crate::matrix::dot(&x, &q).re;
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        for i in 0..m {
            for j in 0..m {
                let upd = x[i] * q[j].conj() * two + q[i] * x[j].conj() * two
                    - x[i] * x[j].conj() * (four * kq);
                let cur = w[(k + 1 + i, k + 1 + j)];
                w[(k + 1 + i, k + 1 + j)] = cur - upd;
            }
        }
    }
    if n >= 2 {
        let last = w[(n - 1, n - 2)];
        off_sq[n - 2] = last.norm_sqr();
    }
    let diag = (0..n).map(|i| w[(i, i)].re).collect();
    Tridiagonal { diag, off_sq }
}

impl<T: Scalar> Tridiagonal<T> {
    /// Number of eigenvalues strictly below `x` (Sturm / LDLᵀ pivot count).
    pub fn count_less_than(&self, x: T) -> usize {
        let n = self.diag.len();
        let scale = self
            .diag
            .iter()
            .fold(T::zero(), |a, &d| a.max(d.abs()))
            .max(self.off_sq.iter().fold(T::zero(), |a, &b| a.max(b.sqrt())))
            .max(T::one());
        let floor = scale * T::epsilon() * T::epsilon() * T::lit(16.0)
            + T::min_positive_value() * T::lit(1e8);
        let mut count = 0usize;
        let mut d = self.diag[0] - x;
        if d.abs() < floor {
            d = -floor;
        }
        if d < T::zero() {
            count += 1;
        }
        for i in 1..n {
            d = (self.diag[i] - x) - self.off_sq[i - 1] / d;
            if d.abs() < floor {
                d = -floor;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }
}

/// Inertia of a Hermitian matrix with zero band `±τ`, by tridiagonal Sturm
/// counts. Independent of the Jacobi eigensolver.
pub fn inertia<T: Scalar>(h: &ComplexMatrix<T>, tau: T) -> Result<Signature> {
    let n = h.dim();
    let tri = tridiagonalize(h);
    let i_minus = tri.count_less_than(-tau);
    let tau_up = tau + (tau.abs() + T::one()) * T::epsilon() * T::lit(4.0);
    let i_plus = n - tri.count_less_than(tau_up);
    Ok(Signature {
        i_plus,
        i_zero: n - i_plus - i_minus,
        i_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::hermitian_eigenvalues;
    use crate::matrix::{random_unitary, unitary_conjugate};

    #[test]
    fn signature_examples() {
        let s = signature(&[1.0, 0.0, -1.0], 1e-8);
        assert_eq!((s.i_plus, s.i_zero, s.i_minus), (1, 1, 1));
        let s = signature(&[2.0, 1.0], 1e-8);
        assert_eq!((s.i_plus, s.i_zero, s.i_minus), (2, 0, 0));
        let s = signature(&[1e-9, -1e-9], 1e-8);
        assert_eq!((s.i_plus, s.i_zero, s.i_minus), (0, 2, 0));
        assert_eq!(s.i_geq0(), 2);
        assert_eq!(s.i_leq0(), 2);
    }

    #[test]
    fn inertia_matches_eigenvalue_classification() {
        for seed in 0..10u64 {
            let n = 2 + (seed as usize % 6);
            let u = random_unitary::<f64>(n, seed);
            let diag: Vec<f64> = (0..n).map(|i| (i as f64) - (n as f64) / 2.0).collect();
            let h = unitary_conjugate(&u, &ComplexMatrix::diagonal_real(&diag));
            let tau = 1e-8;
            let vals = hermitian_eigenvalues(&h).unwrap();
            let from_vals = signature(&vals, tau);
            let from_sturm = inertia(&h, tau).unwrap();
            assert_eq!(from_vals, from_sturm, "seed {seed}");
            assert_eq!(from_sturm.n(), n);
        }
    }

    #[test]
    fn inertia_respects_zero_band() {
        let h = ComplexMatrix::diagonal_real(&[2.0, 1e-12, -3e-9, -1.0]);
        let s = inertia(&h, 1e-8).unwrap();
        assert_eq!((s.i_plus, s.i_zero, s.i_minus), (1, 2, 1));
    }

    #[test]
    fn tridiagonal_preserves_eigenvalues() {
        let u = random_unitary::<f64>(6, 99);
        let d = ComplexMatrix::diagonal_real(&[5.0, 3.0, 1.0, -1.0, -2.0, -4.0]);
        let h = unitary_conjugate(&u, &d);
        let tri = tridiagonalize(&h);
        // Sturm count at various shifts must match the known spectrum.
        assert_eq!(tri.count_less_than(0.0), 3);
        assert_eq!(tri.count_less_than(-5.0), 0);
        assert_eq!(tri.count_less_than(6.0), 6);
        assert_eq!(tri.count_less_than(1.5), 4);
    }
}
