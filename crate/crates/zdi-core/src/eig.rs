//! Hermitian eigendecomposition by cyclic Jacobi with complex rotations.
//!
//! Deterministic for a fixed input: fixed pivot order, fixed sweep budget,
//! eigenvalues sorted descending with a stable tie order. Accuracy is at the
//! `n·ε·‖H‖` level, well inside the crate's zero-classification tolerances.

use crate::error::{Result, ZdiError};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Sweep budget; cyclic Jacobi converges quadratically and normally needs
/// fewer than ten sweeps at desk scale.
const MAX_SWEEPS: usize = 60;

/// Relative Hermitian-deviation tolerance accepted by the eigensolver.
pub fn default_herm_tol<T: Scalar>() -> T {
    T::lit(1e-8).max(T::epsilon() * T::lit(100.0))
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// `values` are sorted non-increasing; `vectors` is unitary with column j the
/// eigenvector of `values[j]`.
#[derive(Debug, Clone)]
pub struct HermitianEig<T> {
    values: Vec<T>,
    vectors: ComplexMatrix<T>,
}

impl<T: Scalar> HermitianEig<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn vectors(&self) -> &ComplexMatrix<T> {
        &self.vectors
    }

    /// Eigenvector for the j-th (descending) eigenvalue.
    pub fn eigenvector(&self, j: usize) -> Vec<Complex<T>> {
        let n = self.values.len();
        (0..n).map(|i| self.vectors[(i, j)]).collect()
    }
}

/// Eigendecomposition with vectors. Rejects inputs that are not Hermitian
/// within `default_herm_tol`.
pub fn hermitian_eig<T: Scalar>(h: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    let (values, vectors) = jacobi(h, true)?;
    Ok(HermitianEig {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only (descending); cheaper inner loop for the angle sweeps.
pub fn hermitian_eigenvalues<T: Scalar>(h: &ComplexMatrix<T>) -> Result<Vec<T>> {
    let (values, _) = jacobi(h, false)?;
    Ok(values)
}

fn check_hermitian<T: Scalar>(h: &ComplexMatrix<T>) -> Result<()> {
    let scale = T::one().max(h.frobenius_norm());
    let dev = h.hermitian_deviation();
    if dev > default_herm_tol::<T>() * scale {
        return Err(ZdiError::NotHermitian {
            deviation: (dev / scale).to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

fn jacobi<T: Scalar>(
    h: &ComplexMatrix<T>,
    want_vectors: bool,
) -> Result<(Vec<T>, Option<ComplexMatrix<T>>)> {
    check_hermitian(h)?;
    let n = h.dim();
    // Work on the symmetrized copy so tiny Hermitian deviations cannot drift.
    let mut w = h.real_part();
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };

    let fro = w.frobenius_norm();
    if fro.is_zero() || n == 1 {
        let values = (0..n).map(|i| w[(i, i)].re).collect::<Vec<_>>();
        return Ok(sorted_descending(values, v));
    }
    let stop = fro * T::epsilon() * T::lit(8.0);
    let skip = fro * T::epsilon() * T::lit(1e-2);

    for _sweep in 0..MAX_SWEEPS {
        let mut off_sq = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off_sq += w[(p, q)].norm_sqr();
            }
        }
        if off_sq.sqrt() <= stop {
            let values = (0..n).map(|i| w[(i, i)].re).collect::<Vec<_>>();
            return Ok(sorted_descending(values, v));
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = w[(p, q)];
                let g = hpq.norm();
                if g <= skip {
                    w[(p, q)] = Complex::new(T::zero(), T::zero());
                    w[(q, p)] = Complex::new(T::zero(), T::zero());
                    continue;
                }
                // Phase so that conj(u)·h_pq = |h_pq|; rotation angle from the
                // real 2x2 [[a, g], [g, b]].
                let u = hpq / g;
                let a = w[(p, p)].re;
                let b = w[(q, q)].re;
                let tau = (b - a) / (g + g);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    T::one() / (tau - (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let su = u * s; // s·u, applied with conjugates below

                // Columns p and q: col_p' = c·col_p − s·ū·col_q ; col_q' = s·col_p + c·ū·col_q
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = wip * c - wiq * su.conj();
                    w[(i, q)] = wip * s + wiq * u.conj() * c;
                }
                // Rows p and q: row_p' = c·row_p − s·u·row_q ; row_q' = s·row_p + c·u·row_q
                for j in 0..n {
                    let wpj = w[(p, j)];
                    let wqj = w[(q, j)];
                    w[(p, j)] = wpj * c - wqj * su;
                    w[(q, j)] = wpj * s + wqj * u * c;
                }
                // Closed-form pivot block, avoiding cancellation.
                w[(p, p)] = Complex::new(a - t * g, T::zero());
                w[(q, q)] = Complex::new(b + t * g, T::zero());
                w[(p, q)] = Complex::new(T::zero(), T::zero());
                w[(q, p)] = Complex::new(T::zero(), T::zero());

                if let Some(v) = v.as_mut() {
                    for i in 0..n {
                        let vip = v[(i, p)];
                        let viq = v[(i, q)];
                        v[(i, p)] = vip * c - viq * su.conj();
                        v[(i, q)] = vip * s + viq * u.conj() * c;
                    }
                }
            }
        }
    }
    Err(ZdiError::NoConvergence { sweeps: MAX_SWEEPS })
}

fn sorted_descending<T: Scalar>(
    values: Vec<T>,
    vectors: Option<ComplexMatrix<T>>,
) -> (Vec<T>, Option<ComplexMatrix<T>>) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());
    let sorted_values: Vec<T> = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = vectors.map(|v| {
        let mut out = ComplexMatrix::zeros(n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                out[(i, new_j)] = v[(i, old_j)];
            }
        }
        out
    });
    (sorted_values, sorted_vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_unitary, unitary_conjugate};

    fn residual(h: &ComplexMatrix<f64>, eig: &HermitianEig<f64>) -> f64 {
        let n = h.dim();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let v = eig.eigenvector(j);
            let hv = h.matvec(&v);
            let r: f64 = hv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * eig.values()[j]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn diagonal_matrix() {
        let h = ComplexMatrix::diagonal_real(&[1.0, -1.0]);
        let eig = hermitian_eig(&h).unwrap();
        assert_eq!(eig.values(), &[1.0, -1.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let h = ComplexMatrix::<f64>::from_rows(&[vec![(0.0, 0.0), (0.5, 0.0)], vec![(0.5, 0.0), (0.0, 0.0)]])
            .unwrap();
        let eig = hermitian_eig(&h).unwrap();
        assert!((eig.values()[0] - 0.5).abs() < 1e-14);
        assert!((eig.values()[1] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn real_part_of_cyclic_shift_n3() {
        // Re of the 3-cycle has eigenvalues cos(2πj/3): {1, -1/2, -1/2}.
        let mut a = ComplexMatrix::<f64>::zeros(3);
        a[(0, 1)] = Complex::new(1.0, 0.0);
        a[(1, 2)] = Complex::new(1.0, 0.0);
        a[(2, 0)] = Complex::new(1.0, 0.0);
        let eig = hermitian_eig(&a.real_part()).unwrap();
        assert!((eig.values()[0] - 1.0).abs() < 1e-12);
        assert!((eig.values()[1] + 0.5).abs() < 1e-12);
        assert!((eig.values()[2] + 0.5).abs() < 1e-12);
    }

    #[test]
    fn random_hermitian_residuals_and_orthonormality() {
        for seed in 0..5u64 {
            let u = random_unitary::<f64>(7, seed);
            let d = ComplexMatrix::diagonal_real(&[3.0, 2.0, 1.0, 0.5, 0.0, -1.0, -2.5]);
            let h = unitary_conjugate(&u, &d);
            let eig = hermitian_eig(&h).unwrap();
            assert!(residual(&h, &eig) <= 1e-12 * h.frobenius_norm() * 7.0);
            let vtv = eig.vectors().adjoint().mul(eig.vectors());
            assert!(vtv.sub(&ComplexMatrix::identity(7)).frobenius_norm() < 1e-12);
            // eigenvalues recover the diagonal
            for (got, want) in eig.values().iter().zip(&[3.0, 2.0, 1.0, 0.5, 0.0, -1.0, -2.5]) {
                assert!((got - want).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0), (0.0, 0.0)]])
            .unwrap();
        assert!(matches!(
            hermitian_eig(&a),
            Err(ZdiError::NotHermitian { .. })
        ));
    }

    #[test]
    fn values_match_characteristic_polynomial_3x3() {
        // H = [[2, 1, 0], [1, 0, 1], [0, 1, -1]]: verify λ³ - tr λ² + ... = 0 roots.
        let h = ComplexMatrix::<f64>::from_rows(&[
            vec![(2.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
            vec![(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            vec![(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0)],
        ])
        .unwrap();
        let vals = hermitian_eigenvalues(&h).unwrap();
        for &l in &vals {
            // det(H - λI) expanded for this matrix: (2-λ)[(0-λ)(-1-λ)-1] - [(-1-λ)]
            let p = (2.0 - l) * ((0.0 - l) * (-1.0 - l) - 1.0) - (-1.0 - l);
            assert!(p.abs() < 1e-10, "char poly residual {p} at λ={l}");
        }
    }
}
