//! Outer approximation of the rank-k numerical range Λ_k(A) by intersecting
//! supporting half-planes {λ : Re(e^{-iθ}λ) ≤ λ_k(Re(e^{-iθ}A))} at sampled
//! directions. Membership queries for 0 never use the polygon — they go
//! through min_θ λ_k, keeping them exactly consistent with the index engine.

use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::sweep::{min_lambda_k, support_eigenvalues, SweepConfig};
use num_complex::Complex;
use rayon::prelude::*;

/// Convex polygon approximating Λ_k(A) from outside.
#[derive(Debug, Clone)]
pub struct RangePolygon<T> {
    pub k: usize,
    /// Counterclockwise vertex list; empty exactly when `empty` is set.
    pub vertices: Vec<Complex<T>>,
    pub empty: bool,
    /// The (θ, λ_k(θ)) support samples that generated the half-planes.
    pub support_samples: Vec<(T, T)>,
}

impl<T: Scalar> RangePolygon<T> {
    /// Shoelace area (zero for degenerate polygons).
    pub fn area(&self) -> T {
        let n = self.vertices.len();
        if n < 3 {
            return T::zero();
        }
        let mut acc = T::zero();
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            acc += p.re * q.im - q.re * p.im;
        }
        acc * T::lit(0.5)
    }

    /// Maximum pairwise vertex distance.
    pub fn diameter(&self) -> T {
        let mut best = T::zero();
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                best = best.max((self.vertices[i] - self.vertices[j]).norm());
            }
        }
        best
    }

    /// Signed-distance membership against every generating half-plane.
    pub fn halfplanes_contain(&self, z: Complex<T>, slack: T) -> bool {
        self.support_samples.iter().all(|&(theta, h)| {
            let dir = Complex::from_polar(T::one(), -theta);
            (dir * z).re <= h + slack
        })
    }
}

/// λ_k(Re(e^{-iθ}A)) — the support value of Λ_k in direction θ; k is 1-based.
pub fn support_value<T: Scalar>(a: &ComplexMatrix<T>, k: usize, theta: T) -> Result<T> {
    assert!(k >= 1 && k <= a.dim());
    Ok(support_eigenvalues(a, theta)?[k - 1])
}

/// Clip a convex polygon against {p : Re(e^{-iθ}p) ≤ h + eps}
/// (Sutherland-Hodgman, orientation preserving).
fn clip_halfplane<T: Scalar>(
    poly: &[Complex<T>],
    theta: T,
    h: T,
    eps: T,
) -> Vec<Complex<T>> {
    if poly.is_empty() {
        return Vec::new();
    }
    let dir = Complex::from_polar(T::one(), -theta);
    let dist = |p: Complex<T>| (dir * p).re - h;
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let sd = dist(s);
        let ed = dist(e);
        let s_in = sd <= eps;
        let e_in = ed <= eps;
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) | (false, true) => {
                let denom = sd - ed;
                if denom.abs() > T::zero() {
                    let t = sd / denom;
                    out.push(s + (e - s) * Complex::new(t, T::zero()));
                }
                if e_in {
                    out.push(e);
                }
            }
            (false, false) => {}
        }
    }
    out
}

/// Λ_k(A) as the intersection of `n_dirs` supporting half-planes; an outer
/// approximation that shrinks monotonically as `n_dirs` grows.
pub fn range_polygon<T: Scalar>(
    a: &ComplexMatrix<T>,
    k: usize,
    n_dirs: usize,
) -> Result<RangePolygon<T>> {
    assert!(k >= 1 && k <= a.dim());
    let n_dirs = n_dirs.max(8);
    let step = T::TAU() / T::from_usize(n_dirs).unwrap();
    let thetas: Vec<T> = (0..n_dirs)
        .map(|i| step * T::from_usize(i).unwrap())
        .collect();
    let supports: Vec<T> = thetas
        .par_iter()
        .map(|&t| support_value(a, k, t))
        .collect::<Result<Vec<_>>>()?;

    let r = (a.frobenius_norm() + T::one()) * T::lit(2.0);
    let eps = T::lit(1e-10) * T::one().max(a.frobenius_norm());
    let mut poly: Vec<Complex<T>> = vec![
        Complex::new(-r, -r),
        Complex::new(r, -r),
        Complex::new(r, r),
        Complex::new(-r, r),
    ];
    for (&theta, &h) in thetas.iter().zip(&supports) {
        poly = clip_halfplane(&poly, theta, h, eps);
        if poly.is_empty() {
            break;
        }
    }
    let empty = poly.is_empty();
    Ok(RangePolygon {
        k,
        vertices: poly,
        empty,
        support_samples: thetas.into_iter().zip(supports).collect(),
    })
}

/// 0 ∈ Λ_k(A) ⇔ min_θ λ_k(Re(e^{-iθ}A)) ≥ −τ. Consistent with the index:
/// contains_zero(A, k) ⇔ k ≤ d(A).
pub fn contains_zero<T: Scalar>(
    a: &ComplexMatrix<T>,
    k: usize,
    cfg: &SweepConfig<T>,
) -> Result<bool> {
    let (m, _) = min_lambda_k(a, k, cfg)?;
    Ok(m >= -cfg.resolve_zero_tol(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn identity_polygon_is_a_point_at_one() {
        let a = ComplexMatrix::<f64>::identity(3);
        let poly = range_polygon(&a, 1, 360).unwrap();
        assert!(!poly.empty);
        assert!(poly.diameter() < 2.0 * PI / 360.0);
        for v in &poly.vertices {
            assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-2);
        }
    }

    #[test]
    fn lambda2_of_diag001_is_the_origin() {
        let a = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        let poly = range_polygon(&a, 2, 360).unwrap();
        assert!(!poly.empty);
        for v in &poly.vertices {
            assert!(v.norm() < 1e-6, "vertex {v} should collapse to 0");
        }
        // Λ_3 is empty: opposing half-planes contradict
        let poly3 = range_polygon(&a, 3, 360).unwrap();
        assert!(poly3.empty && poly3.vertices.is_empty());
    }

    #[test]
    fn jordan_disc_area() {
        let mut a = ComplexMatrix::<f64>::zeros(2);
        a[(0, 1)] = Complex::new(1.0, 0.0);
        let poly = range_polygon(&a, 1, 720).unwrap();
        let target = PI / 4.0;
        assert!((poly.area() - target).abs() <= 0.02 * target);
    }

    #[test]
    fn support_examples() {
        let a = ComplexMatrix::<f64>::identity(2);
        for &t in &[0.0, 0.7, 2.0] {
            assert!((support_value(&a, 1, t).unwrap() - t.cos()).abs() < 1e-12);
        }
        let d = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        assert!(support_value(&d, 2, 0.0).unwrap().abs() < 1e-12);
        let mut x = ComplexMatrix::<f64>::zeros(2);
        x[(0, 1)] = Complex::new(1.0, 0.0);
        x[(1, 0)] = Complex::new(1.0, 0.0);
        for &t in &[0.3, 1.2, 4.0] {
            assert!((support_value(&x, 1, t).unwrap() - t.cos().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn contains_zero_matches_index() {
        let cfg = SweepConfig::default();
        let a = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        assert!(contains_zero(&a, 2, &cfg).unwrap());
        assert!(!contains_zero(&a, 3, &cfg).unwrap());
        assert!(contains_zero(&ComplexMatrix::<f64>::zeros(4), 4, &cfg).unwrap());
        assert!(!contains_zero(&ComplexMatrix::<f64>::diagonal_real(&[1.0, 2.0]), 1, &cfg).unwrap());
    }

    #[test]
    fn nesting_of_successive_ranges() {
        let mut a = ComplexMatrix::<f64>::zeros(3);
        a[(0, 1)] = Complex::new(1.0, 0.0);
        a[(1, 2)] = Complex::new(0.5, 0.5);
        a[(0, 0)] = Complex::new(0.2, -0.1);
        let p1 = range_polygon(&a, 1, 180).unwrap();
        let p2 = range_polygon(&a, 2, 180).unwrap();
        for v in &p2.vertices {
            assert!(p1.halfplanes_contain(*v, 1e-9));
        }
    }
}
