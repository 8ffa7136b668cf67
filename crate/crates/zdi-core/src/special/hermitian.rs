//! Hermitian fast path: d(H) = min(i_{≥0}(H), i_{≤0}(H)) from one
//! eigendecomposition.

use crate::error::Result;
use crate::inertia::signature;
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::sweep::{Method, ZdiResult};

/// d(H) for Hermitian H with zero band ±τ.
///
/// Also populates the closed-form eigenvalue minima: the spectrum of
/// Re(e^{-iθ}H) is cos θ times the spectrum of H, so
/// `m_k = min(0, μ_k, −μ_{n+1−k})` with μ sorted descending.
pub fn zdi_hermitian<T: Scalar>(h: &ComplexMatrix<T>, tau: T) -> Result<ZdiResult<T>> {
    let values = crate::eig::hermitian_eigenvalues(h)?;
    let n = values.len();
    let sig = signature(&values, tau);
    let d = sig.i_geq0().min(sig.i_leq0());
    debug_assert!(sig.i_zero <= d && d <= (n + sig.i_zero) / 2);

    let minima: Vec<T> = (0..n)
        .map(|k| T::zero().min(values[k]).min(-values[n - 1 - k]))
        .collect();
    let theta_witness = if sig.i_geq0() <= sig.i_leq0() {
        T::zero()
    } else {
        T::PI()
    };
    Ok(ZdiResult {
        d,
        theta_witness,
        lambda_minima: Some(minima),
        method: Method::Hermitian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn readoff_examples() {
        let tau = 1e-8;
        let d = |vals: &[f64]| {
            zdi_hermitian(&ComplexMatrix::diagonal_real(vals), tau)
                .unwrap()
                .d
        };
        assert_eq!(d(&[1.0, -1.0, 0.0]), 2);
        assert_eq!(d(&[1.0, 2.0, 3.0]), 0);
        assert_eq!(d(&[1.0, 1.0, -1.0]), 1);
    }

    #[test]
    fn closed_form_minima_match_sweep() {
        let h = ComplexMatrix::<f64>::diagonal_real(&[2.0, 0.5, -1.0]);
        let fast = zdi_hermitian(&h, 1e-8).unwrap();
        let slow = crate::sweep::zdi_general(&h, &crate::sweep::SweepConfig::default()).unwrap();
        assert_eq!(fast.d, slow.d);
        let fm = fast.lambda_minima.unwrap();
        let sm = slow.lambda_minima.unwrap();
        for (a, b) in fm.iter().zip(&sm) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0), (0.0, 0.0)]])
            .unwrap();
        assert!(zdi_hermitian(&a, 1e-8).is_err());
    }
}
