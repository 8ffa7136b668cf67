//! Rectangular column frames: ordered sets of vectors in ℂ^n, used for
//! kernel bases, deflation bases, and candidate isometries V with V*V = I.

use crate::error::{Result, ZdiError};
use crate::matrix::{dot, vec_norm, ComplexMatrix};
use crate::scalar::Scalar;
use num_complex::Complex;

/// n×k complex matrix stored as k columns of length n.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T> {
    rows: usize,
    cols: Vec<Vec<Complex<T>>>,
}

impl<T: Scalar> Frame<T> {
    /// Build from columns; every column must have length `rows`.
    pub fn from_columns(rows: usize, cols: Vec<Vec<Complex<T>>>) -> Result<Self> {
        for c in &cols {
            if c.len() != rows {
                return Err(ZdiError::InvalidDimension {
                    expected: rows,
                    got: c.len(),
                });
            }
        }
        Ok(Self { rows, cols })
    }

    /// Frame with no columns (the k = 0 certificate).
    pub fn empty(rows: usize) -> Self {
        Self { rows, cols: Vec::new() }
    }

    /// First k standard basis vectors of ℂ^n.
    pub fn standard_basis(rows: usize, k: usize) -> Self {
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let mut e = vec![Complex::new(T::zero(), T::zero()); rows];
            e[j] = Complex::new(T::one(), T::zero());
            cols.push(e);
        }
        Self { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn k(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[Complex<T>] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<Complex<T>>] {
        &self.cols
    }

    pub fn push_column(&mut self, col: Vec<Complex<T>>) {
        assert_eq!(col.len(), self.rows);
        self.cols.push(col);
    }

    /// Gram matrix V*V (k×k, Hermitian PSD). For an empty frame this returns
    /// a 1×1 zero placeholder; callers guard on `k() == 0` first.
    pub fn gram(&self) -> ComplexMatrix<T> {
        let k = self.k();
        let mut m = ComplexMatrix::zeros(k.max(1));
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = dot(&self.cols[i], &self.cols[j]);
            }
        }
        m
    }

    /// Compression V*AV (k×k).
    pub fn compress(&self, a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let k = self.k();
        assert!(k > 0, "compression of an empty frame");
        let av: Vec<Vec<Complex<T>>> = self.cols.iter().map(|c| a.matvec(c)).collect();
        let mut m = ComplexMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = dot(&self.cols[i], &av[j]);
            }
        }
        m
    }

    /// ‖V*V − I_k‖_F.
    pub fn isometry_residual(&self) -> T {
        let k = self.k();
        if k == 0 {
            return T::zero();
        }
        let g = self.gram();
        g.sub(&ComplexMatrix::identity(k)).frobenius_norm()
    }

    /// ‖V*AV‖_F.
    pub fn compression_norm(&self, a: &ComplexMatrix<T>) -> T {
        if self.k() == 0 {
            return T::zero();
        }
        self.compress(a).frobenius_norm()
    }

    /// Apply a matrix columnwise: A·V.
    pub fn apply(&self, a: &ComplexMatrix<T>) -> Frame<T> {
        Frame {
            rows: self.rows,
            cols: self.cols.iter().map(|c| a.matvec(c)).collect(),
        }
    }

    /// Orthonormalize in place by modified Gram-Schmidt with a second pass;
    /// drops columns whose residual norm falls below `drop_tol`.
    pub fn orthonormalize(&mut self, drop_tol: T) {
        let mut kept: Vec<Vec<Complex<T>>> = Vec::with_capacity(self.cols.len());
        for col in self.cols.drain(..) {
            let mut v = col;
            for _pass in 0..2 {
                for u in &kept {
                    let proj = dot(u, &v);
                    for k in 0..v.len() {
                        let uk = u[k];
                        v[k] -= uk * proj;
                    }
                }
            }
            let norm = vec_norm(&v);
            if norm > drop_tol {
                for z in &mut v {
                    *z = *z / norm;
                }
                kept.push(v);
            }
        }
        self.cols = kept;
    }

    /// Nearest isometry in Frobenius norm: V·(V*V)^{-1/2}, via the
    /// eigendecomposition of the k×k Gram matrix.
    pub fn polar(&self) -> Result<Frame<T>> {
        let k = self.k();
        if k == 0 {
            return Ok(self.clone());
        }
        let g = self.gram();
        let eig = crate::eig::hermitian_eig(&g)?;
        // inv sqrt of eigenvalues; Gram is PSD so clamp tiny negatives
        let floor = T::epsilon() * T::lit(16.0) * T::one().max(g.frobenius_norm());
        let inv_sqrt: Vec<T> = eig
            .values()
            .iter()
            .map(|&s| T::one() / s.max(floor).sqrt())
            .collect();
        // W = U diag(inv_sqrt) U*
        let u = eig.vectors();
        let mut w = ComplexMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = Complex::new(T::zero(), T::zero());
                for l in 0..k {
                    acc += u[(i, l)] * Complex::new(inv_sqrt[l], T::zero()) * u[(j, l)].conj();
                }
                w[(i, j)] = acc;
            }
        }
        // out = V·W
        let mut out_cols = vec![vec![Complex::new(T::zero(), T::zero()); self.rows]; k];
        for (j, out_col) in out_cols.iter_mut().enumerate() {
            for l in 0..k {
                let wlj = w[(l, j)];
                for r in 0..self.rows {
                    out_col[r] += self.cols[l][r] * wlj;
                }
            }
        }
        Frame::from_columns(self.rows, out_cols)
    }

    /// Right-multiply by a small k×k matrix: (V·M)_{·j} = Σ_l V_{·l} M_{lj}.
    pub fn mul_small(&self, m: &ComplexMatrix<T>) -> Frame<T> {
        let k = self.k();
        assert!(k > 0 && m.dim() == k);
        let mut cols = vec![vec![Complex::new(T::zero(), T::zero()); self.rows]; k];
        for (j, out) in cols.iter_mut().enumerate() {
            for l in 0..k {
                let mlj = m[(l, j)];
                for r in 0..self.rows {
                    out[r] += self.cols[l][r] * mlj;
                }
            }
        }
        Frame {
            rows: self.rows,
            cols,
        }
    }

    /// Columnwise `self + α·other`.
    pub fn add_scaled(&self, alpha: Complex<T>, other: &Frame<T>) -> Frame<T> {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.k(), other.k());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x + y * alpha).collect())
            .collect();
        Frame {
            rows: self.rows,
            cols,
        }
    }

    /// Frobenius norm of the frame as a matrix.
    pub fn frobenius_norm(&self) -> T {
        self.cols
            .iter()
            .flat_map(|c| c.iter())
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Extend to an orthonormal basis of ℂ^n; returns the complement columns.
    pub fn orthonormal_complement(&self) -> Frame<T> {
        let n = self.rows;
        let mut all = self.clone();
        for j in 0..n {
            let mut e = vec![Complex::new(T::zero(), T::zero()); n];
            e[j] = Complex::new(T::one(), T::zero());
            all.push_column(e);
        }
        all.orthonormalize(T::lit(0.5).sqrt() * T::lit(1e-6));
        let comp_cols: Vec<Vec<Complex<T>>> = all.cols.into_iter().skip(self.k()).collect();
        Frame {
            rows: n,
            cols: comp_cols,
        }
    }
}
