//! Zero-dilation index toolkit.
//!
//! For an n×n complex matrix A, the zero-dilation index d(A) is the largest k
//! such that the k×k zero matrix is a compression of A, equivalently the
//! largest k with 0 ∈ Λ_k(A) (the rank-k numerical range). This crate
//! computes d(A) by a full-circle angle sweep over the signatures of
//! Re(e^{-iθ}A), provides exact fast paths for Hermitian, normal, and
//! weighted permutation matrices, analyzes the structural consequences of a
//! large index (zero-summand deflation, the d = n−1 characterization through
//! 3×3 Kippenhahn cubics), constructs verified isometry certificates
//! exhibiting a 0_k compression, and approximates Λ_k(A) by supporting
//! half-planes.
//!
//! All numeric kernels are generic over the real scalar (`f32`/`f64`);
//! concrete aliases live at the crate root.

pub mod arcs;
pub mod certify;
pub mod eig;
pub mod error;
pub mod frame;
pub mod inertia;
pub mod matrix;
pub mod range;
pub mod scalar;
pub mod special;
pub mod structure;
pub mod sweep;

pub use error::{Result, ZdiError};
pub use matrix::{default_zero_tol, random_unitary, unitary_conjugate, ComplexMatrix};
pub use scalar::Scalar;

/// f64 complex matrix, the workhorse precision.
pub type Matrix64 = ComplexMatrix<f64>;
/// f32 complex matrix.
pub type Matrix32 = ComplexMatrix<f32>;
/// f64 column frame (candidate isometry / basis).
pub type Frame64 = frame::Frame<f64>;
/// f64 sweep configuration.
pub type SweepConfig64 = sweep::SweepConfig<f64>;
/// f64 index result.
pub type ZdiResult64 = sweep::ZdiResult<f64>;
