//! Normal fast path.
//!
//! For normal A with k-dimensional kernel and nonzero eigenvalues λ_1..λ_m,
//! d(A) = k + (m − s) where s is the largest number of λ_j fitting in a common
//! open half-plane, found by stabbing the open half-circle arcs centered at
//! the eigenvalue arguments. The extremal classes d = k and d = ⌊(n+k)/2⌋ are
//! additionally matched against the printed argument conditions.

use crate::arcs::{max_stabbing, Arc};
use crate::error::{Result, ZdiError};
use crate::frame::Frame;
use crate::matrix::ComplexMatrix;
use crate::scalar::{arg_two_pi, wrap_two_pi, Scalar};
use crate::sweep::{Method, ZdiResult};
use num_complex::Complex;

/// Spectrum of a normal matrix: nonzero eigenvalues sorted by argument in
/// [0, 2π), plus the kernel dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalSpectrum<T> {
    nonzero: Vec<Complex<T>>,
    kernel_dim: usize,
}

impl<T: Scalar> NormalSpectrum<T> {
    /// Split an eigenvalue list into kernel (|λ| ≤ τ) and nonzero part.
    pub fn from_eigenvalues(eigs: &[Complex<T>], tau: T) -> Self {
        let mut nonzero: Vec<Complex<T>> = eigs.iter().copied().filter(|z| z.norm() > tau).collect();
        let kernel_dim = eigs.len() - nonzero.len();
        sort_by_arg(&mut nonzero);
        Self {
            nonzero,
            kernel_dim,
        }
    }

    /// Assemble from an explicit nonzero list (re-sorted) and kernel dimension.
    pub fn from_parts(nonzero: Vec<Complex<T>>, kernel_dim: usize) -> Self {
        let mut nonzero = nonzero;
        sort_by_arg(&mut nonzero);
        Self {
            nonzero,
            kernel_dim,
        }
    }

    pub fn nonzero(&self) -> &[Complex<T>] {
        &self.nonzero
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn n(&self) -> usize {
        self.nonzero.len() + self.kernel_dim
    }
}

fn sort_by_arg<T: Scalar>(zs: &mut [Complex<T>]) {
    zs.sort_by(|a, b| {
        arg_two_pi(*a)
            .partial_cmp(&arg_two_pi(*b))
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Largest number of the nonzero eigenvalues strictly inside a common open
/// half-plane, with the witness direction.
fn max_separated<T: Scalar>(nonzero: &[Complex<T>]) -> (usize, T) {
    let half_pi = T::FRAC_PI_2();
    let arcs: Vec<Arc<T>> = nonzero
        .iter()
        .map(|&z| Arc::new(arg_two_pi(z) - half_pi, T::PI()))
        .collect();
    max_stabbing(&arcs)
}

/// d(A) for a normal matrix given its spectrum; exact up to the tolerance
/// already applied when the spectrum was classified.
pub fn zdi_normal<T: Scalar>(spec: &NormalSpectrum<T>) -> ZdiResult<T> {
    let m = spec.nonzero.len();
    let k = spec.kernel_dim;
    if m == 0 {
        return ZdiResult {
            d: k,
            theta_witness: T::zero(),
            lambda_minima: None,
            method: Method::Normal,
        };
    }
    let (s, w) = max_separated(&spec.nonzero);
    // s eigenvalues have Re(e^{-iw}λ) > 0, so at θ = w + π they are all
    // strictly negative and the count i_{≥0} bottoms out at k + (m − s).
    let d = k + (m - s);
    debug_assert!(k <= d && d <= (spec.n() + k) / 2);
    ZdiResult {
        d,
        theta_witness: wrap_two_pi(w + T::PI()),
        lambda_minima: None,
        method: Method::Normal,
    }
}

/// Extremal position of d(A) within the Theorem-4.1 bounds [k, ⌊(n+k)/2⌋].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalClass {
    /// d = k: 0 outside the hull of the nonzero eigenvalues.
    Lower,
    /// d = ⌊(n+k)/2⌋: the antipodal / balanced-argument configuration.
    Upper,
    Interior,
}

/// Classification of a normal spectrum, cross-checked two ways.
///
/// `class` is derived from the computed d (the hull route); `condition_class`
/// evaluates the printed argument conditions directly. On boundary spectra
/// (argument gaps of exactly π) the two can differ; the hull route wins and
/// `discrepancy` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalClassification {
    pub class: ExtremalClass,
    pub condition_class: ExtremalClass,
    pub discrepancy: bool,
    pub d: usize,
}

/// Evaluate the extremal class of a normal spectrum.
pub fn classify_normal_extremal<T: Scalar>(
    spec: &NormalSpectrum<T>,
    angle_tol: T,
) -> NormalClassification {
    let d = zdi_normal(spec).d;
    let k = spec.kernel_dim;
    let n = spec.n();
    let class = if d == k {
        ExtremalClass::Lower
    } else if d == (n + k) / 2 {
        ExtremalClass::Upper
    } else {
        ExtremalClass::Interior
    };

    let m = spec.nonzero.len();
    let condition_class = if m == 0 {
        ExtremalClass::Lower
    } else {
        let (s, _) = max_separated(&spec.nonzero);
        let cond_a = s == m;
        let args: Vec<T> = spec.nonzero.iter().map(|&z| arg_two_pi(z)).collect();
        let pi = T::PI();
        let cond_b = if m % 2 == 0 {
            (0..m / 2).all(|j| (args[j + m / 2] - args[j] - pi).abs() <= angle_tol)
        } else {
            let first = (0..(m + 1) / 2).all(|j| args[j + (m - 1) / 2] - args[j] <= pi + angle_tol);
            let second =
                ((m + 1) / 2..m).all(|j| args[j - (m + 1) / 2] - args[j] <= -pi + angle_tol);
            first && second
        };
        if cond_a {
            ExtremalClass::Lower
        } else if cond_b {
            ExtremalClass::Upper
        } else {
            ExtremalClass::Interior
        }
    };

    NormalClassification {
        class,
        condition_class,
        discrepancy: class != condition_class,
        d,
    }
}

/// Eigendecomposition of a (numerically) normal matrix by simultaneous
/// diagonalization of its commuting real and imaginary parts.
///
/// Returns the spectrum and a unitary eigenbasis whose columns follow the
/// spectrum's order: nonzero eigenvalues (sorted by argument) first, kernel
/// vectors last.
pub fn normal_eig<T: Scalar>(
    a: &ComplexMatrix<T>,
    tau: T,
) -> Result<(NormalSpectrum<T>, ComplexMatrix<T>)> {
    let n = a.dim();
    let scale = T::one().max(a.frobenius_norm());
    let adj = a.adjoint();
    let comm = a.mul(&adj).sub(&adj.mul(a));
    let comm_rel = comm.frobenius_norm() / (scale * scale);
    if comm_rel > T::lit(1e-8).max(T::epsilon() * T::lit(1e4)) {
        return Err(ZdiError::NotNormal {
            deviation: comm_rel.to_f64().unwrap_or(f64::NAN),
        });
    }

    let h = a.real_part();
    let g = a.imag_part();
    let eig_h = crate::eig::hermitian_eig(&h)?;
    let cluster_tol = T::lit(1e-8).max(T::epsilon() * T::lit(100.0)) * T::one().max(scale);

    // Group H-eigenvalues into clusters and diagonalize the compression of G
    // inside each cluster; the result is a joint eigenbasis.
    let mut columns: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    let mut eigenvalues: Vec<Complex<T>> = Vec::with_capacity(n);
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && (eig_h.values()[end - 1] - eig_h.values()[end]).abs() <= cluster_tol {
            end += 1;
        }
        let cluster: Vec<Vec<Complex<T>>> = (start..end).map(|j| eig_h.eigenvector(j)).collect();
        let frame = Frame::from_columns(n, cluster)?;
        if end - start == 1 {
            let gval = frame.compress(&g)[(0, 0)].re;
            eigenvalues.push(Complex::new(eig_h.values()[start], gval));
            columns.push(frame.column(0).to_vec());
        } else {
            let gc = frame.compress(&g);
            let eig_g = crate::eig::hermitian_eig(&gc)?;
            for (local, &gval) in eig_g.values().iter().enumerate() {
                let mut col = vec![Complex::new(T::zero(), T::zero()); n];
                for l in 0..frame.k() {
                    let coef = eig_g.vectors()[(l, local)];
                    for (r, c) in col.iter_mut().enumerate() {
                        *c += frame.column(l)[r] * coef;
                    }
                }
                eigenvalues.push(Complex::new(eig_h.values()[start], gval));
                columns.push(col);
            }
        }
        start = end;
    }

    // H-eigenvalues inside a cluster may differ slightly; recover each
    // eigenvalue from the Rayleigh quotient for a tighter residual.
    for (col, lam) in columns.iter().zip(eigenvalues.iter_mut()) {
        let av = a.matvec(col);
        *lam = crate::matrix::dot(col, &av);
    }

    // Residual check: ‖A v − λ v‖ per column.
    let mut worst = T::zero();
    for (col, &lam) in columns.iter().zip(&eigenvalues) {
        let av = a.matvec(col);
        let r: T = av
            .iter()
            .zip(col)
            .map(|(x, v)| (*x - *v * lam).norm_sqr())
            .fold(T::zero(), |p, q| p + q)
            .sqrt();
        worst = worst.max(r);
    }
    if worst > T::lit(1e-6) * scale {
        return Err(ZdiError::AssertionFailed(format!(
            "normal eigendecomposition residual {:.3e} too large",
            worst.to_f64().unwrap_or(f64::NAN)
        )));
    }

    // Order: nonzero sorted by arg, then kernel.
    let mut idx: Vec<usize> = (0..n).collect();
    let is_kernel: Vec<bool> = eigenvalues.iter().map(|z| z.norm() <= tau).collect();
    idx.sort_by(|&i, &j| {
        let ki = is_kernel[i] as u8;
        let kj = is_kernel[j] as u8;
        ki.cmp(&kj).then_with(|| {
            arg_two_pi(eigenvalues[i])
                .partial_cmp(&arg_two_pi(eigenvalues[j]))
                .unwrap()
                .then(eigenvalues[i].re.partial_cmp(&eigenvalues[j].re).unwrap())
                .then(eigenvalues[i].im.partial_cmp(&eigenvalues[j].im).unwrap())
        })
    });
    let nonzero: Vec<Complex<T>> = idx
        .iter()
        .filter(|&&i| !is_kernel[i])
        .map(|&i| eigenvalues[i])
        .collect();
    let kernel_dim = n - nonzero.len();
    let mut basis = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in idx.iter().enumerate() {
        for i in 0..n {
            basis[(i, new_j)] = columns[old_j][i];
        }
    }
    Ok((
        NormalSpectrum {
            nonzero,
            kernel_dim,
        },
        basis,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let spec = NormalSpectrum::from_parts(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)], 0);
        assert_eq!(zdi_normal(&spec).d, 2);
        let cls = classify_normal_extremal(&spec, 1e-10);
        assert_eq!(cls.class, ExtremalClass::Upper);
        assert_eq!(cls.condition_class, ExtremalClass::Upper);
        assert!(!cls.discrepancy);
    }

    #[test]
    fn cube_roots_of_unity() {
        let w = 2.0 * PI / 3.0;
        let spec = NormalSpectrum::from_parts(
            vec![c(1.0, 0.0), Complex::from_polar(1.0, w), Complex::from_polar(1.0, 2.0 * w)],
            0,
        );
        assert_eq!(zdi_normal(&spec).d, 1);
        assert_eq!(classify_normal_extremal(&spec, 1e-10).class, ExtremalClass::Upper);
    }

    #[test]
    fn hull_missing_zero_gives_kernel_dim() {
        let spec = NormalSpectrum::from_parts(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 1);
        assert_eq!(zdi_normal(&spec).d, 1);
        let cls = classify_normal_extremal(&spec, 1e-10);
        assert_eq!(cls.class, ExtremalClass::Lower);
    }

    #[test]
    fn antipodal_pair_is_upper() {
        let spec = NormalSpectrum::from_parts(vec![c(1.0, 0.0), c(-1.0, 0.0)], 0);
        assert_eq!(zdi_normal(&spec).d, 1);
        assert_eq!(classify_normal_extremal(&spec, 1e-10).class, ExtremalClass::Upper);
        let spec2 = NormalSpectrum::from_parts(vec![c(1.0, 0.0), c(2.0, 0.0)], 0);
        assert_eq!(classify_normal_extremal(&spec2, 1e-10).class, ExtremalClass::Lower);
    }

    #[test]
    fn normal_eig_recovers_diagonal_spectrum() {
        let u = crate::matrix::random_unitary::<f64>(5, 3);
        let eigs = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, 0.0), c(0.0, -3.0), c(1e-12, 0.0)];
        let a = crate::matrix::unitary_conjugate(&u, &ComplexMatrix::diagonal(&eigs));
        let (spec, basis) = normal_eig(&a, 1e-8).unwrap();
        assert_eq!(spec.kernel_dim(), 2);
        assert_eq!(spec.nonzero().len(), 3);
        // basis is unitary and diagonalizes A in the spectrum's order
        let vtv = basis.adjoint().mul(&basis);
        assert!(vtv.sub(&ComplexMatrix::identity(5)).frobenius_norm() < 1e-10);
        let d = zdi_normal(&spec).d;
        assert_eq!(d, 3); // kernel 2 + one antipodal-free... hull contains 0: s = 2, m = 3 → 2 + 1 = 3
    }

    #[test]
    fn rejects_non_normal() {
        let a = ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0), (0.0, 0.0)]])
            .unwrap();
        assert!(matches!(normal_eig(&a, 1e-8), Err(ZdiError::NotNormal { .. })));
    }
}
