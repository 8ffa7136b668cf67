//! The general-purpose index engine: full-circle angle sweep.
//!
//! d(A) = min over θ of i_{≥0}(Re(e^{-iθ}A)). The minimizing set is open (the
//! count is upper semicontinuous in θ), so a fine grid finds it; golden-section
//! refinement around the grid-local minima of each eigenvalue curve λ_k(θ)
//! sharpens the per-k minima m_k. Two independent routes are computed over the
//! same θ set — Sturm sign counts and Jacobi eigenvalue minima — and any
//! disagreement is surfaced as an error rather than silently resolved.

use crate::error::{Result, ZdiError};
use crate::inertia::tridiagonalize;
use crate::matrix::{default_zero_tol, ComplexMatrix};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// Angle-sweep discretization parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig<T> {
    /// Base grid size N (≥ 8); θ_i = 2πi/N.
    pub grid_points: usize,
    /// Golden-section iterations per grid-local minimum.
    pub refine_iters: usize,
    /// Angular resolution target for refinement.
    pub theta_tol: T,
    /// Zero-classification tolerance; `None` means `1e-8·max(1, ‖A‖_F)`.
    pub zero_tol: Option<T>,
}

impl<T: Scalar> Default for SweepConfig<T> {
    fn default() -> Self {
        Self {
            grid_points: 720,
            refine_iters: 60,
            theta_tol: T::lit(1e-10).max(T::epsilon() * T::lit(8.0)),
            zero_tol: None,
        }
    }
}

impl<T: Scalar> SweepConfig<T> {
    /// Same sweep with an explicit absolute zero tolerance.
    pub fn with_zero_tol(mut self, tau: T) -> Self {
        self.zero_tol = Some(tau);
        self
    }

    /// Same sweep with a different base grid.
    pub fn with_grid(mut self, n: usize) -> Self {
        self.grid_points = n.max(8);
        self
    }

    /// The zero tolerance used for a given matrix.
    pub fn resolve_zero_tol(&self, a: &ComplexMatrix<T>) -> T {
        self.zero_tol.unwrap_or_else(|| default_zero_tol(a))
    }
}

/// Which computation produced a `ZdiResult`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    GeneralSweep,
    Hermitian,
    Normal,
    WeightedPermutation,
    DirectSum,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::GeneralSweep => "general-sweep",
            Method::Hermitian => "hermitian",
            Method::Normal => "normal",
            Method::WeightedPermutation => "weighted-permutation",
            Method::DirectSum => "direct-sum",
        }
    }
}

/// Computed zero-dilation index with its witness angle.
///
/// `lambda_minima[k−1] = min_θ λ_k(Re(e^{-iθ}A))` is populated by the general
/// sweep and by the Hermitian fast path (where it has a closed form); the
/// other fast paths leave it `None`.
#[derive(Debug, Clone)]
pub struct ZdiResult<T> {
    pub d: usize,
    pub theta_witness: T,
    pub lambda_minima: Option<Vec<T>>,
    pub method: Method,
}

/// Eigenvalues (descending) of Re(e^{-iθ}A).
pub fn support_eigenvalues<T: Scalar>(a: &ComplexMatrix<T>, theta: T) -> Result<Vec<T>> {
    crate::eig::hermitian_eigenvalues(&a.rotate(theta).real_part())
}

/// i_{≥0}(Re(e^{-iθ}A)) with zero band ±τ, by the Sturm route.
fn count_geq_at<T: Scalar>(a: &ComplexMatrix<T>, theta: T, tau: T) -> usize {
    let h = a.rotate(theta).real_part();
    let tri = tridiagonalize(&h);
    a.dim() - tri.count_less_than(-tau)
}

/// Golden-section minimization on [a, b]; returns the best (θ, f(θ)) seen,
/// which is robust even when the bracket is not strictly unimodal.
pub(crate) fn golden_min<T: Scalar, F>(
    mut f: F,
    mut a: T,
    mut b: T,
    iters: usize,
    xtol: T,
) -> Result<(T, T)>
where
    F: FnMut(T) -> Result<T>,
{
    let invphi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut best_x = a;
    let mut best_f = T::infinity();
    let track = |x: T, fx: T, best_x: &mut T, best_f: &mut T| {
        if fx < *best_f {
            *best_f = fx;
            *best_x = x;
        }
    };
    let mut x1 = b - invphi * (b - a);
    let mut x2 = a + invphi * (b - a);
    let mut f1 = f(x1)?;
    track(x1, f1, &mut best_x, &mut best_f);
    let mut f2 = f(x2)?;
    track(x2, f2, &mut best_x, &mut best_f);
    for _ in 0..iters {
        if (b - a).abs() <= xtol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1)?;
            track(x1, f1, &mut best_x, &mut best_f);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2)?;
            track(x2, f2, &mut best_x, &mut best_f);
        }
    }
    Ok((best_x, best_f))
}

struct SweepData<T> {
    /// Per k (0-based): (min value, argmin θ).
    minima: Vec<(T, T)>,
    d_lambda: usize,
    d_count: usize,
    theta_witness: T,
}

fn angle_sweep<T: Scalar>(a: &ComplexMatrix<T>, cfg: &SweepConfig<T>) -> Result<SweepData<T>> {
    let n = a.dim();
    let tau = cfg.resolve_zero_tol(a);
    let big_n = cfg.grid_points.max(8);
    let step = T::TAU() / T::from_usize(big_n).unwrap();
    let thetas: Vec<T> = (0..big_n)
        .map(|i| step * T::from_usize(i).unwrap())
        .collect();

    let grid: Vec<Vec<T>> = thetas
        .par_iter()
        .map(|&t| support_eigenvalues(a, t))
        .collect::<Result<Vec<_>>>()?;

    // Refine every grid-local minimum of each λ_k curve.
    let mut minima: Vec<(T, T)> = Vec::with_capacity(n);
    let mut refined_thetas: Vec<T> = Vec::new();
    for k in 0..n {
        let mut m_k = T::infinity();
        let mut arg_k = T::zero();
        let mut local: Vec<usize> = Vec::new();
        for i in 0..big_n {
            let prev = grid[(i + big_n - 1) % big_n][k];
            let next = grid[(i + 1) % big_n][k];
            let cur = grid[i][k];
            if cur <= prev && cur <= next {
                local.push(i);
            }
            if cur < m_k {
                m_k = cur;
                arg_k = thetas[i];
            }
        }
        // Plateaus can flood the list; keep the most promising brackets.
        if local.len() > 64 {
            local.sort_by(|&i, &j| grid[i][k].partial_cmp(&grid[j][k]).unwrap());
            local.truncate(64);
        }
        let refined: Vec<(T, T)> = local
            .par_iter()
            .map(|&i| {
                let center = thetas[i];
                golden_min(
                    |t| support_eigenvalues(a, t).map(|v| v[k]),
                    center - step,
                    center + step,
                    cfg.refine_iters,
                    cfg.theta_tol,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        for (x, fx) in refined {
            if fx < m_k {
                m_k = fx;
                arg_k = x;
            }
            refined_thetas.push(x);
        }
        minima.push((m_k, arg_k));
    }

    let d_lambda = minima.iter().filter(|(v, _)| *v >= -tau).count();
    debug_assert!({
        // m_k non-increasing in k, so the filter count equals the max prefix.
        let mut ok = true;
        for k in 1..n {
            if minima[k].0 > minima[k - 1].0 + tau {
                ok = false;
            }
        }
        ok
    });

    // Count route over the same θ set, in fixed order: grid first, then the
    // refined minimizers sorted ascending.
    refined_thetas.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut all_thetas = thetas.clone();
    all_thetas.extend_from_slice(&refined_thetas);
    let counts: Vec<usize> = all_thetas
        .par_iter()
        .map(|&t| count_geq_at(a, t, tau))
        .collect();
    let mut d_count = n;
    let mut theta_witness = T::zero();
    for (i, &c) in counts.iter().enumerate() {
        if c < d_count {
            d_count = c;
            theta_witness = all_thetas[i];
        }
    }

    Ok(SweepData {
        minima,
        d_lambda,
        d_count,
        theta_witness,
    })
}

/// d(A) for an arbitrary complex square matrix, by the full-circle sweep.
///
/// Returns d = 0 when 0 ∉ W(A) (no 0_1 compression exists); the internal
/// count-based and eigenvalue-minima-based values must agree or the call
/// fails with `InconsistentFormulations`.
pub fn zdi_general<T: Scalar>(a: &ComplexMatrix<T>, cfg: &SweepConfig<T>) -> Result<ZdiResult<T>> {
    let data = angle_sweep(a, cfg)?;
    if data.d_count != data.d_lambda {
        return Err(ZdiError::InconsistentFormulations {
            d_count: data.d_count,
            d_lambda: data.d_lambda,
        });
    }
    Ok(ZdiResult {
        d: data.d_count,
        theta_witness: data.theta_witness,
        lambda_minima: Some(data.minima.iter().map(|&(v, _)| v).collect()),
        method: Method::GeneralSweep,
    })
}

/// (min_θ λ_k(Re(e^{-iθ}A)), argmin); k is 1-based.
pub fn min_lambda_k<T: Scalar>(
    a: &ComplexMatrix<T>,
    k: usize,
    cfg: &SweepConfig<T>,
) -> Result<(T, T)> {
    let n = a.dim();
    assert!(k >= 1 && k <= n, "k must satisfy 1 ≤ k ≤ n");
    let data = angle_sweep(a, cfg)?;
    Ok(data.minima[k - 1])
}

/// Direct integer-count minimization over the sweep's θ set; asserts
/// agreement with the eigenvalue-minima route.
pub fn zdi_count_min<T: Scalar>(a: &ComplexMatrix<T>, cfg: &SweepConfig<T>) -> Result<(usize, T)> {
    let data = angle_sweep(a, cfg)?;
    if data.d_count != data.d_lambda {
        return Err(ZdiError::InconsistentFormulations {
            d_count: data.d_count,
            d_lambda: data.d_lambda,
        });
    }
    Ok((data.d_count, data.theta_witness))
}

/// Reference value for tests: Theorem-2.2 count minimization on a dense grid,
/// Sturm route only, no refinement. Intended for desk scale (n ≤ 12).
pub fn zdi_bruteforce_oracle<T: Scalar>(a: &ComplexMatrix<T>, dense_n: usize) -> usize {
    let tau = default_zero_tol(a);
    let n = dense_n.max(16);
    let step = T::TAU() / T::from_usize(n).unwrap();
    (0..n)
        .into_par_iter()
        .map(|i| count_geq_at(a, step * T::from_usize(i).unwrap(), tau))
        .collect::<Vec<_>>()
        .into_iter()
        .min()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;
    use num_complex::Complex;
    use std::f64::consts::FRAC_PI_2;

    fn cyclic_shift(n: usize) -> ComplexMatrix<f64> {
        let mut a = ComplexMatrix::zeros(n);
        for i in 0..n - 1 {
            a[(i, i + 1)] = Complex::new(1.0, 0.0);
        }
        a[(n - 1, 0)] = Complex::new(1.0, 0.0);
        a
    }

    fn bidiagonal(weights: &[f64]) -> ComplexMatrix<f64> {
        let n = weights.len() + 1;
        let mut a = ComplexMatrix::zeros(n);
        for (i, &w) in weights.iter().enumerate() {
            a[(i, i + 1)] = Complex::new(w, 0.0);
        }
        a
    }

    #[test]
    fn diag_001_has_index_two() {
        let a = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        let r = zdi_general(&a, &SweepConfig::default()).unwrap();
        assert_eq!(r.d, 2);
        // witness should make cos θ < 0
        assert!(r.theta_witness.cos() < 0.0);
        let m = r.lambda_minima.unwrap();
        assert!(m[0] >= 0.0 && m[1].abs() < 1e-9 && m[2] < -0.9);
    }

    #[test]
    fn cyclic_shift_five_has_index_two() {
        let r = zdi_general(&cyclic_shift(5), &SweepConfig::default()).unwrap();
        assert_eq!(r.d, 2);
    }

    #[test]
    fn positive_diagonal_has_index_zero() {
        let a = ComplexMatrix::<f64>::diagonal_real(&[1.0, 2.0]);
        let r = zdi_general(&a, &SweepConfig::default()).unwrap();
        assert_eq!(r.d, 0);
    }

    #[test]
    fn jordan_blocks_follow_ceil_half_n() {
        for n in 2..=5usize {
            let a = bidiagonal(&vec![1.0; n - 1]);
            let r = zdi_general(&a, &SweepConfig::default()).unwrap();
            assert_eq!(r.d, n.div_ceil(2), "n={n}");
        }
    }

    #[test]
    fn min_lambda_examples() {
        // Hermitian diag(1,−1): λ_1(θ) = |cos θ|, minimized to 0 at θ = π/2.
        let a = ComplexMatrix::<f64>::diagonal_real(&[1.0, -1.0]);
        let (m1, th) = min_lambda_k(&a, 1, &SweepConfig::default()).unwrap();
        assert!(m1.abs() < 1e-9);
        assert!((th - FRAC_PI_2).abs() < 1e-4 || (th - 3.0 * FRAC_PI_2).abs() < 1e-4);

        let z = ComplexMatrix::<f64>::zeros(3);
        for k in 1..=3 {
            let (m, _) = min_lambda_k(&z, k, &SweepConfig::default()).unwrap();
            assert_eq!(m, 0.0);
        }

        let (m2, _) = min_lambda_k(&cyclic_shift(4), 2, &SweepConfig::default()).unwrap();
        assert!(m2.abs() < 1e-9);
    }

    #[test]
    fn count_min_matches_lambda_route() {
        let a = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        let (d, _) = zdi_count_min(&a, &SweepConfig::default()).unwrap();
        assert_eq!(d, 2);
        let (d0, _) = zdi_count_min(&ComplexMatrix::<f64>::zeros(3), &SweepConfig::default()).unwrap();
        assert_eq!(d0, 3);
        let (dj, _) = zdi_count_min(&bidiagonal(&[1.0]), &SweepConfig::default()).unwrap();
        assert_eq!(dj, 1);
    }

    #[test]
    fn oracle_agrees_on_goldens() {
        assert_eq!(
            zdi_bruteforce_oracle(&ComplexMatrix::diagonal_real(&[0.0, 0.0, 1.0]), 7200),
            2
        );
        let a = cyclic_shift(4);
        assert_eq!(zdi_bruteforce_oracle(&a, 7200), 2);
        let padded = a.pad_with_zeros(2);
        assert_eq!(zdi_bruteforce_oracle(&padded, 7200), 4);
    }
}
