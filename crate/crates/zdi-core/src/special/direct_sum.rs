//! Direct sums: d(⊕A_j) ≥ Σ d(A_j), with equality exactly when one angle
//! witnesses every part simultaneously.

use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::sweep::{zdi_general, Method, SweepConfig, ZdiResult};

/// Result of analyzing a direct sum.
#[derive(Debug, Clone)]
pub struct DirectSumReport<T> {
    /// Index of the block-diagonal sum, computed by the engine.
    pub result: ZdiResult<T>,
    /// d(A_j) of each part.
    pub part_d: Vec<usize>,
    /// Whether d(⊕A_j) = Σ d(A_j).
    pub additive: bool,
    /// A shared witness θ_0 when equality holds.
    pub shared_theta: Option<T>,
}

/// Compute d(⊕A_j) via the engine and report whether superadditivity is tight.
pub fn direct_sum_zdi<T: Scalar>(
    parts: &[ComplexMatrix<T>],
    cfg: &SweepConfig<T>,
) -> Result<DirectSumReport<T>> {
    assert!(!parts.is_empty());
    let refs: Vec<&ComplexMatrix<T>> = parts.iter().collect();
    let sum = ComplexMatrix::direct_sum(&refs);
    let mut result = zdi_general(&sum, cfg)?;
    result.method = Method::DirectSum;

    let mut part_d = Vec::with_capacity(parts.len());
    for p in parts {
        part_d.push(zdi_general(p, cfg)?.d);
    }
    let total: usize = part_d.iter().sum();
    debug_assert!(result.d >= total, "superadditivity violated");
    let additive = result.d == total;
    let shared_theta = additive.then_some(result.theta_witness);
    Ok(DirectSumReport {
        result,
        part_d,
        additive,
        shared_theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn zero_padding_adds_exactly() {
        let a = ComplexMatrix::diagonal_real(&[1.0, 2.0]); // d = 0
        let z = ComplexMatrix::<f64>::zeros(2);
        let rep = direct_sum_zdi(&[a, z], &SweepConfig::default()).unwrap();
        assert_eq!(rep.result.d, 2);
        assert_eq!(rep.part_d, vec![0, 2]);
        assert!(rep.additive);
        assert!(rep.shared_theta.is_some());
    }

    #[test]
    fn copies_multiply() {
        let mut j = ComplexMatrix::<f64>::zeros(2);
        j[(0, 1)] = Complex::new(1.0, 0.0); // d = 1
        let rep = direct_sum_zdi(&[j.clone(), j.clone(), j], &SweepConfig::default()).unwrap();
        assert_eq!(rep.result.d, 3);
        assert!(rep.additive);
    }

    #[test]
    fn strict_superadditivity_for_opposite_signs() {
        let plus = ComplexMatrix::diagonal_real(&[1.0]);
        let minus = ComplexMatrix::diagonal_real(&[-1.0]);
        let rep = direct_sum_zdi(&[plus, minus], &SweepConfig::default()).unwrap();
        assert_eq!(rep.part_d, vec![0, 0]);
        assert_eq!(rep.result.d, 1);
        assert!(!rep.additive);
        assert!(rep.shared_theta.is_none());
    }
}
