//! Structural consequences of a large index: splitting off the zero reducing
//! eigenspace, the d = n−1 characterization through a 3×3 block, and the
//! boundary/extreme-point analysis of 0 in W(A).

pub mod kippenhahn;

pub use kippenhahn::{
    classify_3x3, cubic_roots, factor_out_z, kippenhahn_cubic, kippenhahn_eval, Classification3x3,
    KippenhahnCubic, QuadraticForm,
};

use crate::error::{Result, ZdiError};
use crate::frame::Frame;
use crate::inertia::signature;
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::sweep::{golden_min, support_eigenvalues, zdi_general, SweepConfig};
use num_complex::Complex;

/// Orthonormal basis of the common kernel ker A ∩ ker A*, detected through
/// the Gram matrix A*A + AA* and certified by direct residuals
/// ‖Av‖, ‖A*v‖ ≤ τ.
pub fn common_kernel<T: Scalar>(a: &ComplexMatrix<T>, tau: T) -> Result<Frame<T>> {
    let n = a.dim();
    let adj = a.adjoint();
    let gram = adj.mul(a).add(&a.mul(&adj));
    let eig = crate::eig::hermitian_eig(&gram)?;
    // ascending: candidates with the smallest Gram eigenvalues first
    let mut kernel = Frame::empty(n);
    for j in (0..n).rev() {
        let v = eig.eigenvector(j);
        let av = crate::matrix::vec_norm(&a.matvec(&v));
        let asv = crate::matrix::vec_norm(&adj.matvec(&v));
        if av <= tau && asv <= tau {
            kernel.push_column(v);
        } else {
            break;
        }
    }
    Ok(kernel)
}

/// Deflation of the zero reducing eigenspace: A ≅ B ⊕ 0_m under a unitary
/// change of basis, with the Theorem-3.2 guarantees checked when they apply.
#[derive(Debug, Clone)]
pub struct DeflationReport<T> {
    /// m = dim(ker A ∩ ker A*).
    pub reducing_multiplicity: usize,
    /// The deflated block of size n − m; `None` when A deflates entirely.
    pub b: Option<ComplexMatrix<T>>,
    /// d(A) used for the guarantees.
    pub d: usize,
    /// 3d − 2n when d > ⌊2n/3⌋.
    pub guaranteed_lower_bound: Option<usize>,
    /// ‖U(B ⊕ 0_m)U* − A‖_F.
    pub reconstruction_residual: T,
}

/// Split off the common kernel as a trailing zero block; `d` is computed by
/// the general sweep.
pub fn deflate_zero<T: Scalar>(
    a: &ComplexMatrix<T>,
    cfg: &SweepConfig<T>,
) -> Result<DeflationReport<T>> {
    let d = zdi_general(a, cfg)?.d;
    deflate_zero_with_index(a, d, cfg)
}

/// Deflation with a precomputed index.
pub fn deflate_zero_with_index<T: Scalar>(
    a: &ComplexMatrix<T>,
    d: usize,
    cfg: &SweepConfig<T>,
) -> Result<DeflationReport<T>> {
    let n = a.dim();
    let tau = cfg.resolve_zero_tol(a);
    let kernel = common_kernel(a, tau)?;
    let m = kernel.k();

    let guaranteed_lower_bound = if 3 * d > 2 * n {
        let bound = 3 * d - 2 * n;
        if m < bound {
            return Err(ZdiError::AssertionFailed(format!(
                "reducing multiplicity {m} below the guaranteed 3d-2n = {bound}"
            )));
        }
        Some(bound)
    } else {
        None
    };

    let complement = kernel.orthonormal_complement();
    debug_assert_eq!(complement.k(), n - m);
    let (b, residual) = if m == n {
        (None, a.frobenius_norm())
    } else {
        let b = complement.compress(a);
        // reconstruction: U (B ⊕ 0_m) U* with U = [complement | kernel]
        let mut u = ComplexMatrix::zeros(n);
        for (j, col) in complement
            .columns()
            .iter()
            .chain(kernel.columns())
            .enumerate()
        {
            for i in 0..n {
                u[(i, j)] = col[i];
            }
        }
        let padded = b.pad_with_zeros(m);
        let rebuilt = u.mul(&padded.mul(&u.adjoint()));
        (Some(b), rebuilt.sub(a).frobenius_norm())
    };

    // Size/index assertion of Theorem 3.2 when the bound is tight.
    if let (Some(bound), Some(block)) = (guaranteed_lower_bound, &b) {
        if m == bound {
            debug_assert_eq!(block.dim(), 3 * (n - d));
            let db = zdi_general(block, cfg)?.d;
            if db != 2 * (n - d) {
                return Err(ZdiError::AssertionFailed(format!(
                    "deflated block has d = {db}, expected 2(n-d) = {}",
                    2 * (n - d)
                )));
            }
        }
    }

    Ok(DeflationReport {
        reducing_multiplicity: m,
        b,
        d,
        guaranteed_lower_bound,
        reconstruction_residual: residual,
    })
}

/// Outcome of the d = n−1 characterization.
#[derive(Debug, Clone)]
pub struct NMinusOneReport<T> {
    pub holds: bool,
    pub d: usize,
    /// The (zero-padded) 3×3 block when the characterization holds.
    pub block: Option<ComplexMatrix<T>>,
    pub classification: Option<Classification3x3<T>>,
}

/// Test d(A) = n−1 and cross-validate it against the deflation + 3×3
/// classification route, in both directions.
pub fn characterize_n_minus_1<T: Scalar>(
    a: &ComplexMatrix<T>,
    cfg: &SweepConfig<T>,
) -> Result<NMinusOneReport<T>> {
    let n = a.dim();
    if n < 3 {
        return Err(ZdiError::InvalidDimension { expected: 3, got: n });
    }
    let d = zdi_general(a, cfg)?.d;
    let tau = cfg.resolve_zero_tol(a);
    let holds = d == n - 1;

    let deflation = deflate_zero_with_index(a, d, cfg)?;
    let m = deflation.reducing_multiplicity;
    // Pad the deflated block back to exactly 3×3 when enough deflates.
    let block3 = if m >= n - 3 {
        match &deflation.b {
            Some(b) if b.dim() <= 3 => Some(b.pad_with_zeros(3 - b.dim())),
            None => Some(ComplexMatrix::zeros(3)),
            _ => None,
        }
    } else {
        None
    };
    let classification = match &block3 {
        Some(b3) => Some(classify_3x3(b3, tau)?),
        None => None,
    };
    let route_says_n_minus_1 = classification
        .as_ref()
        .map(|c| c.is_index_two())
        .unwrap_or(false);

    if holds && !route_says_n_minus_1 {
        return Err(ZdiError::AssertionFailed(format!(
            "d = n-1 = {d} but the deflation/classification route disagrees \
             (multiplicity {m}, block classified {classification:?})"
        )));
    }
    if !holds && route_says_n_minus_1 {
        return Err(ZdiError::AssertionFailed(format!(
            "classification certifies d = n-1 but the sweep found d = {d}"
        )));
    }

    Ok(NMinusOneReport {
        holds,
        d,
        block: if holds { block3 } else { None },
        classification: if holds { classification } else { None },
    })
}

/// Boundary-point analysis of 0 ∈ ∂W(A).
#[derive(Debug, Clone)]
pub struct BoundaryReport<T> {
    pub on_boundary: bool,
    /// Whether 0 is an extreme point of W(A).
    pub extreme: bool,
    /// d(A) in the extreme case (dim ker of the compressed imaginary part);
    /// `None` when 0 is non-extreme and only an unknown upper bound exists.
    pub d: Option<usize>,
    /// Supporting angles θ with Re(e^{-iθ}A) ⪰ −τ.
    pub supporting_angles: Vec<T>,
}

/// Locate supporting half-planes of W(A) through 0 and decide extremity by
/// the semidefiniteness of the imaginary part compressed to the kernel of
/// the supporting real part.
pub fn boundary_extreme_analysis<T: Scalar>(
    a: &ComplexMatrix<T>,
    cfg: &SweepConfig<T>,
) -> Result<BoundaryReport<T>> {
    let n = a.dim();
    let tau = cfg.resolve_zero_tol(a);
    let big_n = cfg.grid_points.max(8);
    let step = T::TAU() / T::from_usize(big_n).unwrap();
    let thetas: Vec<T> = (0..big_n)
        .map(|i| step * T::from_usize(i).unwrap())
        .collect();
    let grid: Vec<Vec<T>> = thetas
        .iter()
        .map(|&t| support_eigenvalues(a, t))
        .collect::<Result<Vec<_>>>()?;

    // 0 ∈ W(A) ⇔ min_θ λ_1 ≥ 0; a supporting half-plane exists ⇔ max_θ λ_n ≥ 0.
    let mut min_top = T::infinity();
    for i in 0..big_n {
        min_top = min_top.min(grid[i][0]);
        let prev = grid[(i + big_n - 1) % big_n][0];
        let next = grid[(i + 1) % big_n][0];
        if grid[i][0] <= prev && grid[i][0] <= next {
            let (_, fx) = golden_min(
                |t| support_eigenvalues(a, t).map(|v| v[0]),
                thetas[i] - step,
                thetas[i] + step,
                cfg.refine_iters,
                cfg.theta_tol,
            )?;
            min_top = min_top.min(fx);
        }
    }
    if min_top < -tau {
        return Err(ZdiError::NotOnBoundary {
            reason: "0 is outside W(A)",
        });
    }

    // supporting angles: where λ_n reaches ≥ −τ (grid points plus refined maxima)
    let mut supports: Vec<T> = Vec::new();
    let mut max_bottom = T::neg_infinity();
    for i in 0..big_n {
        let prev = grid[(i + big_n - 1) % big_n][n - 1];
        let next = grid[(i + 1) % big_n][n - 1];
        let cur = grid[i][n - 1];
        max_bottom = max_bottom.max(cur);
        if cur >= prev && cur >= next {
            let (x, fneg) = golden_min(
                |t| support_eigenvalues(a, t).map(|v| -v[n - 1]),
                thetas[i] - step,
                thetas[i] + step,
                cfg.refine_iters,
                cfg.theta_tol,
            )?;
            let fx = -fneg;
            max_bottom = max_bottom.max(fx);
            if fx >= -tau {
                supports.push(crate::scalar::wrap_two_pi(x));
            }
        }
        if cur >= -tau {
            supports.push(thetas[i]);
        }
    }
    if max_bottom < -tau {
        return Err(ZdiError::NotOnBoundary {
            reason: "0 is interior to W(A)",
        });
    }
    supports.sort_by(|x, y| x.partial_cmp(y).unwrap());
    supports.dedup_by(|x, y| (*x - *y).abs() < T::lit(1e-9));
    // cap the representatives, spread over the qualifying set
    if supports.len() > 24 {
        let stride = supports.len() / 24 + 1;
        supports = supports.into_iter().step_by(stride).collect();
    }

    // Extremity: S = compression of Im(e^{-iθ0}A) to ker Re(e^{-iθ0}A) must
    // be semidefinite at every supporting angle; then d = dim ker S.
    let mut extreme = true;
    let mut d_exact: Option<usize> = None;
    for &theta0 in &supports {
        let rot = a.rotate(theta0);
        let h = rot.real_part();
        let eig = crate::eig::hermitian_eig(&h)?;
        let kernel_tol = tau * T::lit(10.0);
        let mut basis = Frame::empty(n);
        for j in 0..n {
            if eig.values()[j].abs() <= kernel_tol {
                basis.push_column(eig.eigenvector(j));
            }
        }
        if basis.k() == 0 {
            continue;
        }
        let s = basis.compress(&rot.imag_part());
        let s_vals = crate::eig::hermitian_eigenvalues(&s)?;
        let sig = signature(&s_vals, tau);
        let semidefinite = sig.i_plus == 0 || sig.i_minus == 0;
        if !semidefinite {
            extreme = false;
        }
        if d_exact.is_none() && semidefinite {
            d_exact = Some(sig.i_zero);
        }
    }
    Ok(BoundaryReport {
        on_boundary: true,
        extreme,
        d: if extreme { d_exact } else { None },
        supporting_angles: supports,
    })
}

/// Numerical kernel dimension of A itself (not the reducing kernel), via the
/// Gram matrix A*A.
pub fn kernel_dimension<T: Scalar>(a: &ComplexMatrix<T>, tau: T) -> Result<usize> {
    let gram = a.adjoint().mul(a);
    let vals = crate::eig::hermitian_eigenvalues(&gram)?;
    Ok(vals
        .iter()
        .filter(|&&v| v.max(T::zero()).sqrt() <= tau)
        .count())
}

/// The sharpness family for the reducing-eigenvalue bound: ones at
/// (n−k+1, k+1) … (k, 3k−n) and (k+1, 1) … (n, n−k) with k = ⌊2n/3⌋
/// (1-based indices); d(A) = k and ker A ∩ ker A* = {0}.
pub fn sharpness_matrix<T: Scalar>(n: usize) -> ComplexMatrix<T> {
    let k = (2 * n) / 3;
    let one = Complex::new(T::one(), T::zero());
    let mut a = ComplexMatrix::zeros(n);
    let mut row = n - k + 1;
    let mut col = k + 1;
    while row <= k && col <= n {
        a[(row - 1, col - 1)] = one;
        row += 1;
        col += 1;
    }
    for j in 1..=(n - k) {
        a[(k + j - 1, j - 1)] = one;
    }
    a
}
