//! Kippenhahn cubic of a 3×3 matrix and the d = 2 classification.
//!
//! p(x,y,z) = det(x·Re A + y·Im A + z·I) is a real homogeneous cubic whose
//! behavior encodes everything needed here: the eigenvalues of A are the
//! roots of p(1, i, −z), and d(A) = 2 exactly when z divides p and 0 lies in
//! the convex hull of the real dual points of the quotient conic q — an
//! elliptic disc with foci at the roots of q(1, i, −z), or a segment (point
//! pair) when q is reducible.

use crate::error::{Result, ZdiError};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Monomial order of the 10 cubic coefficients:
/// x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³.
#[derive(Debug, Clone, PartialEq)]
pub struct KippenhahnCubic<T> {
    pub coeffs: [T; 10],
}

impl<T: Scalar> KippenhahnCubic<T> {
    pub fn evaluate(&self, x: T, y: T, z: T) -> T {
        let c = &self.coeffs;
        c[0] * x * x * x
            + c[1] * x * x * y
            + c[2] * x * x * z
            + c[3] * x * y * y
            + c[4] * x * y * z
            + c[5] * x * z * z
            + c[6] * y * y * y
            + c[7] * y * y * z
            + c[8] * y * z * z
            + c[9] * z * z * z
    }

    /// p(1, i, −z) as a degree-3 complex polynomial `[z⁰, z¹, z², z³]`; its
    /// roots are the eigenvalues of the matrix.
    pub fn characteristic_poly(&self) -> [Complex<T>; 4] {
        let c = &self.coeffs;
        [
            Complex::new(c[0] - c[3], c[1] - c[6]),
            Complex::new(-(c[2] - c[7]), -c[4]),
            Complex::new(c[5], c[8]),
            Complex::new(-c[9], T::zero()),
        ]
    }
}

/// Ternary quadratic form, monomial order x², xy, xz, y², yz, z².
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm<T> {
    pub coeffs: [T; 6],
}

impl<T: Scalar> QuadraticForm<T> {
    pub fn evaluate(&self, x: T, y: T, z: T) -> T {
        let c = &self.coeffs;
        c[0] * x * x + c[1] * x * y + c[2] * x * z + c[3] * y * y + c[4] * y * z + c[5] * z * z
    }

    /// Determinant of the symmetric coefficient matrix; zero means the conic
    /// is reducible (degenerate).
    pub fn symmetric_det(&self) -> T {
        let [a, b, e, c, f, g] = self.coeffs;
        let half = T::lit(0.5);
        let m = [
            [a, b * half, e * half],
            [b * half, c, f * half],
            [e * half, f * half, g],
        ];
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Frobenius norm of the symmetric coefficient matrix.
    pub fn norm(&self) -> T {
        let [a, b, e, c, f, g] = self.coeffs;
        let half = T::lit(0.5);
        (a * a + c * c + g * g
            + (b * half) * (b * half) * T::lit(2.0)
            + (e * half) * (e * half) * T::lit(2.0)
            + (f * half) * (f * half) * T::lit(2.0))
        .sqrt()
    }

    /// Roots of q(1, i, −z) (monic in z after normalization): the foci of the
    /// dual ellipse, or the dual point pair when the conic is reducible.
    pub fn foci(&self) -> (Complex<T>, Complex<T>) {
        let [a, b, e, c, f, g] = self.coeffs;
        // q(1, i, -z) = g z² − (e + if) z + (a − c + ib)
        let lin = Complex::new(e, f) / g;
        let con = Complex::new(a - c, b) / g;
        quadratic_roots(lin, con)
    }
}

/// Roots of z² − s·z + p.
fn quadratic_roots<T: Scalar>(s: Complex<T>, p: Complex<T>) -> (Complex<T>, Complex<T>) {
    let half = T::lit(0.5);
    let disc = s * s - p * T::lit(4.0);
    let sq = disc.sqrt();
    let r1 = (s + sq) * half;
    let r2 = (s - sq) * half;
    (r1, r2)
}

/// Roots of a complex cubic given as `[z⁰, z¹, z², z³]` coefficients.
pub fn cubic_roots<T: Scalar>(c: &[Complex<T>; 4]) -> [Complex<T>; 3] {
    let lead = c[3];
    let a = c[2] / lead;
    let b = c[1] / lead;
    let d = c[0] / lead;
    // depress: z = t − a/3  →  t³ + pt + q
    let third = T::one() / T::lit(3.0);
    let shift = a * third;
    let p = b - a * a * third;
    let q = a * (a * a * T::lit(2.0) / T::lit(27.0)) - a * b * third + d;
    let half = T::lit(0.5);
    let disc = (q * half) * (q * half) + (p * third) * (p * third) * (p * third);
    let sq = disc.sqrt();
    let mut u3 = -q * half + sq;
    if u3.norm() < (q * half - sq).norm() {
        u3 = -q * half - sq;
    }
    let omega = Complex::new(-half, T::lit(0.75).sqrt());
    if u3.norm() == T::zero() {
        // triple root of the depressed cubic (p = q = 0) or p≠0 degenerate
        let t = (-q).cbrt_principal();
        return [t - shift, t * omega - shift, t * omega * omega - shift];
    }
    let u = u3.cbrt_principal();
    let mut roots = [Complex::new(T::zero(), T::zero()); 3];
    let mut w = Complex::new(T::one(), T::zero());
    for r in roots.iter_mut() {
        let uw = u * w;
        *r = uw - p / (uw * T::lit(3.0)) - shift;
        w = w * omega;
    }
    roots
}

trait CbrtPrincipal {
    fn cbrt_principal(self) -> Self;
}

impl<T: Scalar> CbrtPrincipal for Complex<T> {
    fn cbrt_principal(self) -> Self {
        if self.norm() == T::zero() {
            return self;
        }
        Complex::from_polar(self.norm().cbrt(), self.arg() / T::lit(3.0))
    }
}

/// Fixed, well-conditioned sample points for the coefficient solve
/// (Vandermonde condition ≈ 12).
const SAMPLES: [(f64, f64, f64); 10] = [
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
    (1.0, 1.0, 0.0),
    (1.0, 0.0, 1.0),
    (0.0, 1.0, 1.0),
    (1.0, -1.0, 0.0),
    (1.0, 0.0, -1.0),
    (0.0, 1.0, -1.0),
    (1.0, 1.0, 1.0),
];

fn monomials<T: Scalar>(x: T, y: T, z: T) -> [T; 10] {
    [
        x * x * x,
        x * x * y,
        x * x * z,
        x * y * y,
        x * y * z,
        x * z * z,
        y * y * y,
        y * y * z,
        y * z * z,
        z * z * z,
    ]
}

/// Determinant of a 3×3 complex matrix.
fn det3<T: Scalar>(m: &ComplexMatrix<T>) -> Complex<T> {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// p_A(x, y, z) = det(x·Re A + y·Im A + z·I) evaluated directly.
pub fn kippenhahn_eval<T: Scalar>(a: &ComplexMatrix<T>, x: T, y: T, z: T) -> T {
    let re = a.real_part();
    let im = a.imag_part();
    let m = re
        .scale(Complex::new(x, T::zero()))
        .add(&im.scale(Complex::new(y, T::zero())))
        .add(&ComplexMatrix::identity(a.dim()).scale(Complex::new(z, T::zero())));
    det3(&m).re
}

/// Coefficients of the Kippenhahn cubic of a 3×3 matrix, by determinant
/// sampling and a 10×10 linear solve.
pub fn kippenhahn_cubic<T: Scalar>(a: &ComplexMatrix<T>) -> Result<KippenhahnCubic<T>> {
    if a.dim() != 3 {
        return Err(ZdiError::InvalidDimension {
            expected: 3,
            got: a.dim(),
        });
    }
    let mut system = [[T::zero(); 11]; 10];
    for (row, &(x, y, z)) in SAMPLES.iter().enumerate() {
        let (x, y, z) = (T::lit(x), T::lit(y), T::lit(z));
        let mono = monomials(x, y, z);
        system[row][..10].copy_from_slice(&mono);
        system[row][10] = kippenhahn_eval(a, x, y, z);
    }
    let coeffs = solve10(&mut system)?;
    Ok(KippenhahnCubic { coeffs })
}

/// Gaussian elimination with partial pivoting on the fixed 10×10 system.
fn solve10<T: Scalar>(aug: &mut [[T; 11]; 10]) -> Result<[T; 10]> {
    let n = 10;
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if aug[r][col].abs() > aug[piv][col].abs() {
                piv = r;
            }
        }
        if aug[piv][col].abs() < T::epsilon() * T::lit(1e3) {
            return Err(ZdiError::AssertionFailed(
                "singular sample system for cubic coefficients".into(),
            ));
        }
        aug.swap(col, piv);
        for r in (col + 1)..n {
            let factor = aug[r][col] / aug[col][col];
            for c in col..=n {
                let sub = aug[col][c] * factor;
                aug[r][c] = aug[r][c] - sub;
            }
        }
    }
    let mut x = [T::zero(); 10];
    for row in (0..n).rev() {
        let mut acc = aug[row][10];
        for c in (row + 1)..n {
            acc = acc - aug[row][c] * x[c];
        }
        x[row] = acc / aug[row][row];
    }
    Ok(x)
}

/// Divide the cubic by z. Succeeds iff every z-free coefficient (x³, x²y,
/// xy², y³) is at most `eps_f` in magnitude.
pub fn factor_out_z<T: Scalar>(c: &KippenhahnCubic<T>, eps_f: T) -> Result<QuadraticForm<T>> {
    let z_free = [c.coeffs[0], c.coeffs[1], c.coeffs[3], c.coeffs[6]];
    let max_coeff = z_free.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if max_coeff > eps_f {
        return Err(ZdiError::NotDivisible {
            max_coeff: max_coeff.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(QuadraticForm {
        coeffs: [
            c.coeffs[2], // x²z → x²
            c.coeffs[4], // xyz → xy
            c.coeffs[5], // xz² → xz
            c.coeffs[7], // y²z → y²
            c.coeffs[8], // yz² → yz
            c.coeffs[9], // z³ → z²
        ],
    })
}

/// Outcome of the 3×3 d = 2 test.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification3x3<T> {
    /// W(B) is an elliptic disc containing 0; eigenvalues are 0 and the foci.
    EllipticWithZero {
        foci: (Complex<T>, Complex<T>),
    },
    /// W(B) is a line segment containing 0; eigenvalues are 0 and the endpoints.
    DegenerateSegment {
        endpoints: (Complex<T>, Complex<T>),
    },
    Other,
}

impl<T> Classification3x3<T> {
    /// True exactly when the classification certifies d = 2.
    pub fn is_index_two(&self) -> bool {
        !matches!(self, Classification3x3::Other)
    }
}

/// Classify a 3×3 matrix: does the Kippenhahn route certify d(B) = 2?
///
/// Steps: require z | p_B; read the candidate foci from q(1, i, −z); recover
/// the dual's squared minor axis c² = 4(Re z₁·Re z₂ − q(1,0,0)); test
/// |z₁| + |z₂| ≤ √(|z₁−z₂|² + c²) for membership of 0; sanity-check that the
/// cubic's roots are {0, z₁, z₂}; split elliptic vs segment on the symmetric
/// determinant of q.
pub fn classify_3x3<T: Scalar>(b: &ComplexMatrix<T>, tau: T) -> Result<Classification3x3<T>> {
    if b.dim() != 3 {
        return Err(ZdiError::InvalidDimension {
            expected: 3,
            got: b.dim(),
        });
    }
    let fro = b.frobenius_norm();
    if fro <= tau {
        // the zero matrix has d = 3, not 2
        return Ok(Classification3x3::Other);
    }
    let scale = T::one().max(fro);
    let p = kippenhahn_cubic(b)?;
    let eps_f = T::lit(1e-8).max(T::epsilon() * T::lit(1e3)) * scale * scale * scale;
    let q = match factor_out_z(&p, eps_f) {
        Ok(q) => q,
        Err(ZdiError::NotDivisible { .. }) => return Ok(Classification3x3::Other),
        Err(e) => return Err(e),
    };

    let (z1, z2) = q.foci();
    let a_coeff = q.coeffs[0] / q.coeffs[5];
    let c_sq_raw = (z1.re * z2.re - a_coeff) * T::lit(4.0);
    if c_sq_raw < -T::lit(1e-6) * scale * scale {
        return Ok(Classification3x3::Other);
    }
    let c_sq = c_sq_raw.max(T::zero());
    let major = ((z1 - z2).norm_sqr() + c_sq).sqrt();
    let mem_tol = T::lit(1e-7) * scale;
    if z1.norm() + z2.norm() > major + mem_tol {
        return Ok(Classification3x3::Other);
    }

    // Eigenvalues of B must be {0, z1, z2}: automatic when the factorization
    // is exact, asserted here against cube-root conditioning.
    let roots = cubic_roots(&p.characteristic_poly());
    let root_tol = T::lit(1e-4) * scale;
    if !multiset_matches(&roots, &[Complex::new(T::zero(), T::zero()), z1, z2], root_tol) {
        return Ok(Classification3x3::Other);
    }

    let degenerate = q.symmetric_det().abs() <= T::lit(1e-9) * q.norm();
    if degenerate {
        Ok(Classification3x3::DegenerateSegment {
            endpoints: (z1, z2),
        })
    } else {
        Ok(Classification3x3::EllipticWithZero { foci: (z1, z2) })
    }
}

fn multiset_matches<T: Scalar>(got: &[Complex<T>; 3], want: &[Complex<T>; 3], tol: T) -> bool {
    let mut used = [false; 3];
    'outer: for g in got {
        for (j, w) in want.iter().enumerate() {
            if !used[j] && (*g - *w).norm() <= tol {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn zero_matrix_cubic_is_z_cubed() {
        let p = kippenhahn_cubic(&ComplexMatrix::<f64>::zeros(3)).unwrap();
        for (i, &v) in p.coeffs.iter().enumerate() {
            if i == 9 {
                assert!((v - 1.0).abs() < 1e-12);
            } else {
                assert!(v.abs() < 1e-12);
            }
        }
        let q = factor_out_z(&p, 1e-9).unwrap();
        assert!((q.coeffs[5] - 1.0).abs() < 1e-12); // z²
    }

    #[test]
    fn diag_100_factors_as_z_times_line_pair() {
        let a = ComplexMatrix::<f64>::diagonal_real(&[1.0, 0.0, 0.0]);
        let p = kippenhahn_cubic(&a).unwrap();
        // p = z²(x + z): coefficients xz² = 1, z³ = 1, rest 0
        assert!((p.coeffs[5] - 1.0).abs() < 1e-12);
        assert!((p.coeffs[9] - 1.0).abs() < 1e-12);
        assert!((p.evaluate(0.3, -0.4, 0.9) - 0.9 * 0.9 * (0.3 + 0.9)).abs() < 1e-12);
        let q = factor_out_z(&p, 1e-9).unwrap();
        // q = z(x+z): reducible
        assert!(q.symmetric_det().abs() < 1e-12);
    }

    #[test]
    fn cubic_poly_roots_are_eigenvalues() {
        // upper triangular with eigenvalues 1, 2i, -3
        let a = ComplexMatrix::<f64>::from_rows(&[
            vec![(1.0, 0.0), (0.5, 0.2), (0.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 2.0), (1.0, -1.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (-3.0, 0.0)],
        ])
        .unwrap();
        let p = kippenhahn_cubic(&a).unwrap();
        let roots = cubic_roots(&p.characteristic_poly());
        let want = [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)];
        assert!(multiset_matches(&roots, &want, 1e-8));
    }

    #[test]
    fn classification_examples() {
        let tau = 1e-8;
        // circular disc: nilpotent bidiagonal, foci both 0
        let mut b = ComplexMatrix::<f64>::zeros(3);
        b[(0, 1)] = c(1.0, 0.0);
        b[(1, 2)] = c(1.0, 0.0);
        match classify_3x3(&b, tau).unwrap() {
            Classification3x3::EllipticWithZero { foci } => {
                assert!(foci.0.norm() < 1e-6 && foci.1.norm() < 1e-6);
            }
            other => panic!("expected elliptic, got {other:?}"),
        }

        // d = 1 counterexample
        let mut b2 = ComplexMatrix::<f64>::zeros(3);
        b2[(0, 1)] = c(1.0, 0.0);
        b2[(0, 2)] = c(1.0, 0.0);
        b2[(1, 2)] = c(1.0, 0.0);
        assert_eq!(classify_3x3(&b2, tau).unwrap(), Classification3x3::Other);

        // Hermitian segment [-1, 1] with interior 0
        let b3 = ComplexMatrix::<f64>::diagonal_real(&[1.0, -1.0, 0.0]);
        match classify_3x3(&b3, tau).unwrap() {
            Classification3x3::DegenerateSegment { endpoints } => {
                let (e1, e2) = endpoints;
                assert!((e1.norm() - 1.0).abs() < 1e-8 && (e2.norm() - 1.0).abs() < 1e-8);
            }
            other => panic!("expected segment, got {other:?}"),
        }

        // diag(0,0,1): segment with 0 as an endpoint, d = 2
        let b4 = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        assert!(classify_3x3(&b4, tau).unwrap().is_index_two());

        // diag(0,1,2): 0 outside the dual segment [1,2], d = 1
        let b5 = ComplexMatrix::<f64>::diagonal_real(&[0.0, 1.0, 2.0]);
        assert_eq!(classify_3x3(&b5, tau).unwrap(), Classification3x3::Other);

        // zero matrix: d = 3
        assert_eq!(
            classify_3x3(&ComplexMatrix::<f64>::zeros(3), tau).unwrap(),
            Classification3x3::Other
        );

        // no zero eigenvalue at all
        let b6 = ComplexMatrix::<f64>::diagonal_real(&[1.0, 2.0, 3.0]);
        assert_eq!(classify_3x3(&b6, tau).unwrap(), Classification3x3::Other);
    }

    #[test]
    fn general_corner_block_is_index_two() {
        // B with a 2×2 zero corner has d(B) = 2 for any nonzero tail.
        let b = ComplexMatrix::<f64>::from_rows(&[
            vec![(0.0, 0.0), (0.0, 0.0), (0.7, -0.3)],
            vec![(0.0, 0.0), (0.0, 0.0), (-1.2, 0.4)],
            vec![(0.5, 0.9), (0.3, 0.0), (1.1, -0.6)],
        ])
        .unwrap();
        assert!(classify_3x3(&b, 1e-8).unwrap().is_index_two());
        let sweep = crate::sweep::zdi_general(&b, &crate::sweep::SweepConfig::default()).unwrap();
        assert_eq!(sweep.d, 2);
    }
}
