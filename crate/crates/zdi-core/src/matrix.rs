//! Dense complex square matrices and the elementary operations every other
//! module builds on: real part, rotation by `e^{-iθ}`, adjoints, direct sums,
//! and seeded random unitaries for similarity tests.

use crate::error::{Result, ZdiError};
use crate::scalar::Scalar;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::ops::{Index, IndexMut};

/// Dense n×n complex matrix, row-major.
///
/// Construction validates squareness and finiteness; after that all
/// operations are total. Values are immutable from the caller's point of
/// view unless explicitly built up through `IndexMut`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    /// Build from row-major data; `data.len()` must be `n·n` and every entry finite.
    pub fn new(n: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(ZdiError::InvalidDimension {
                expected: n * n,
                got: data.len(),
            });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(ZdiError::NonFinite {
                    row: idx / n,
                    col: idx % n,
                });
            }
        }
        Ok(Self { n, data })
    }

    /// Build from nested rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[Vec<(T, T)>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(ZdiError::InvalidDimension {
                    expected: n,
                    got: row.len(),
                });
            }
            for &(re, im) in row {
                data.push(Complex::new(re, im));
            }
        }
        Self::new(n, data)
    }

    /// Zero matrix of size n.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    /// Identity matrix of size n.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn diagonal_real(entries: &[T]) -> Self {
        let zs: Vec<Complex<T>> = entries
            .iter()
            .map(|&x| Complex::new(x, T::zero()))
            .collect();
        Self::diagonal(&zs)
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Conjugate transpose A*.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Transpose A^T.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Real part (A + A*)/2, Hermitian by construction.
    pub fn real_part(&self) -> Self {
        let n = self.n;
        let half = T::lit(0.5);
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * half;
                out[(i, j)] = z;
            }
        }
        out
    }

    /// Imaginary part (A − A*)/(2i), Hermitian by construction.
    pub fn imag_part(&self) -> Self {
        let n = self.n;
        let half = T::lit(0.5);
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let d = (self[(i, j)] - self[(j, i)].conj()) * half;
                // d / i = -i·d
                out[(i, j)] = Complex::new(d.im, -d.re);
            }
        }
        out
    }

    /// Elementwise multiplication by `e^{-iθ}`.
    pub fn rotate(&self, theta: T) -> Self {
        let phase = Complex::from_polar(T::one(), -theta);
        self.scale(phase)
    }

    /// Elementwise multiplication by a complex scalar.
    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    /// Matrix sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Matrix difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// Matrix product A·B.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product A·x.
    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.n);
        let n = self.n;
        let mut out = vec![Complex::new(T::zero(), T::zero()); n];
        for i in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                acc += self[(i, j)] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// ‖A − A*‖_F, the Hermitian deviation.
    pub fn hermitian_deviation(&self) -> T {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    /// True when ‖A − A*‖ ≤ tol·max(1, ‖A‖).
    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol * T::one().max(self.frobenius_norm())
    }

    /// True when the commutator ‖AA* − A*A‖ ≤ tol·max(1, ‖A‖²).
    pub fn is_normal(&self, tol: T) -> bool {
        let adj = self.adjoint();
        let comm = self.mul(&adj).sub(&adj.mul(self));
        let scale = T::one().max(self.frobenius_norm() * self.frobenius_norm());
        comm.frobenius_norm() <= tol * scale
    }

    /// Block-diagonal direct sum of the given parts.
    pub fn direct_sum(parts: &[&Self]) -> Self {
        let n: usize = parts.iter().map(|p| p.n).sum();
        let mut out = Self::zeros(n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.n {
                for j in 0..p.n {
                    out[(off + i, off + j)] = p[(i, j)];
                }
            }
            off += p.n;
        }
        out
    }

    /// Pad with an m×m zero block: A ⊕ 0_m.
    pub fn pad_with_zeros(&self, m: usize) -> Self {
        let mut out = Self::zeros(self.n + m);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

/// Default zero-classification tolerance: `1e-8·max(1, ‖A‖_F)`, with a floor
/// a couple of decades above machine epsilon so f32 stays usable.
pub fn default_zero_tol<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let base = T::lit(1e-8).max(T::epsilon() * T::lit(100.0));
    base * T::one().max(a.frobenius_norm())
}

/// U*·A·U for unitary U.
pub fn unitary_conjugate<T: Scalar>(u: &ComplexMatrix<T>, a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    u.adjoint().mul(&a.mul(u))
}

/// Haar-ish random unitary: complex Gaussian sample, then modified
/// Gram-Schmidt with a reorthogonalization pass. Deterministic per seed.
pub fn random_unitary<T: Scalar>(n: usize, seed: u64) -> ComplexMatrix<T>
where
    StandardNormal: Distribution<T>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: T = StandardNormal.sample(&mut rng);
                    let im: T = StandardNormal.sample(&mut rng);
                    Complex::new(re, im)
                })
                .collect()
        })
        .collect();

    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let proj = dot(&cols[i], &cols[j]);
                for k in 0..n {
                    let v = cols[i][k];
                    cols[j][k] -= v * proj;
                }
            }
        }
        let norm = vec_norm(&cols[j]);
        for k in 0..n {
            cols[j][k] = cols[j][k] / norm;
        }
    }

    let mut u = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u[(i, j)] = cols[j][i];
        }
    }
    u
}

/// Standard inner product ⟨x, y⟩ = Σ conj(x_i)·y_i.
pub fn dot<T: Scalar>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.conj() * b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z)
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<T: Scalar>(x: &[Complex<T>]) -> T {
    x.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt()
}
