//! Exact fast paths for structured matrices: Hermitian signature counts,
//! normal spectra via circular separation, weighted permutation matrices via
//! the cycle/path decomposition, and direct sums.

pub mod direct_sum;
pub mod hermitian;
pub mod normal;
pub mod perm;

pub use direct_sum::{direct_sum_zdi, DirectSumReport};
pub use hermitian::zdi_hermitian;
pub use normal::{
    classify_normal_extremal, normal_eig, zdi_normal, ExtremalClass, NormalClassification,
    NormalSpectrum,
};
pub use perm::{
    cycle_pair_rule, decompose_weighted_permutation, zdi_cycle, zdi_path,
    zdi_weighted_permutation, CycleComponent, CycleIndex, EvenExceptional, PathComponent,
    PermDecomposition,
};
