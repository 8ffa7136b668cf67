//! Weighted permutation matrices: cycle/path decomposition and the exact
//! index formula
//!
//!   d(A) = Σ_j ⌊n_j/2⌋ + Σ_k ⌈m_k/2⌉
//!        + min_θ #{odd cycles j : (−1)^{(n_j−1)/2} cos(n_jθ − α_j) > 0},
//!
//! where the minimum is p minus the maximum stabbing number of the per-cycle
//! negativity arc sets S_j. Arcs are open: the minimum avoids the zeros of
//! the cosine factors.

use crate::arcs::{max_stabbing, Arc, ArcSet};
use crate::error::{Result, ZdiError};
use crate::matrix::ComplexMatrix;
use crate::scalar::{arg_two_pi, wrap_two_pi, Scalar};
use crate::sweep::{Method, ZdiResult};
use num_complex::Complex;

/// A cycle component: vertices v_0 → v_1 → … → v_{n−1} → v_0 with weight
/// `weights[s]` on the edge out of v_s (the last weight is the corner).
#[derive(Debug, Clone, PartialEq)]
pub struct CycleComponent<T> {
    pub vertices: Vec<usize>,
    pub weights: Vec<Complex<T>>,
}

impl<T: Scalar> CycleComponent<T> {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// α_j = Σ arg w_s with arg ∈ [0, 2π).
    pub fn angle_sum(&self) -> T {
        self.weights
            .iter()
            .fold(T::zero(), |acc, &w| acc + arg_two_pi(w))
    }

    pub fn is_odd(&self) -> bool {
        self.size() % 2 == 1
    }
}

/// A path component: vertices v_0 → … → v_{m−1} with `weights[s]` on the edge
/// out of v_s; a single vertex (m = 1) is a 1×1 zero block.
#[derive(Debug, Clone, PartialEq)]
pub struct PathComponent<T> {
    pub vertices: Vec<usize>,
    pub weights: Vec<Complex<T>>,
}

impl<T: Scalar> PathComponent<T> {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Cycle/path decomposition of a weighted permutation matrix under
/// permutation similarity.
#[derive(Debug, Clone, PartialEq)]
pub struct PermDecomposition<T> {
    pub cycles: Vec<CycleComponent<T>>,
    pub paths: Vec<PathComponent<T>>,
    n: usize,
}

impl<T: Scalar> PermDecomposition<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of odd cycles (p in the index formula).
    pub fn odd_cycle_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_odd()).count()
    }

    /// Rebuild the matrix from the stored vertex labels; exact round trip.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let mut a = ComplexMatrix::zeros(self.n);
        for c in &self.cycles {
            let m = c.size();
            for s in 0..m {
                a[(c.vertices[s], c.vertices[(s + 1) % m])] = c.weights[s];
            }
        }
        for p in &self.paths {
            for s in 0..p.weights.len() {
                a[(p.vertices[s], p.vertices[s + 1])] = p.weights[s];
            }
        }
        a
    }
}

/// Decompose a weighted permutation matrix (at most one nonzero per row and
/// per column, entries with |a_ij| ≤ τ treated as zero).
///
/// Rejects matrices violating the row/column constraint and matrices with
/// nonzero diagonal fixed points (1-cycles): the cycle forms require size ≥ 2,
/// so 1-cycles are routed through the direct-sum path by callers.
pub fn decompose_weighted_permutation<T: Scalar>(
    a: &ComplexMatrix<T>,
    tau: T,
) -> Result<PermDecomposition<T>> {
    let n = a.dim();
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].norm() > tau {
                if succ[i].is_some() {
                    return Err(ZdiError::NotWeightedPermutation { row: i, col: j });
                }
                if pred[j].is_some() {
                    return Err(ZdiError::NotWeightedPermutation { row: i, col: j });
                }
                succ[i] = Some(j);
                pred[j] = Some(i);
            }
        }
    }
    for i in 0..n {
        if succ[i] == Some(i) {
            return Err(ZdiError::OneCycle { index: i });
        }
    }

    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    let mut paths = Vec::new();

    // Paths start where nothing points in.
    for start in 0..n {
        if visited[start] || pred[start].is_some() {
            continue;
        }
        let mut vertices = vec![start];
        let mut weights = Vec::new();
        visited[start] = true;
        let mut cur = start;
        while let Some(next) = succ[cur] {
            weights.push(a[(cur, next)]);
            visited[next] = true;
            vertices.push(next);
            cur = next;
        }
        paths.push(PathComponent { vertices, weights });
    }
    // Remaining unvisited vertices sit on cycles.
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut vertices = vec![start];
        let mut weights = Vec::new();
        visited[start] = true;
        let mut cur = start;
        loop {
            let next = succ[cur].expect("cycle vertex has a successor");
            weights.push(a[(cur, next)]);
            if next == start {
                break;
            }
            visited[next] = true;
            vertices.push(next);
            cur = next;
        }
        debug_assert!(vertices.len() >= 2);
        cycles.push(CycleComponent { vertices, weights });
    }

    Ok(PermDecomposition { cycles, paths, n })
}

/// d of a weighted path block of size m: ⌈m/2⌉, independent of the weights.
pub fn zdi_path(m: usize) -> usize {
    assert!(m >= 1);
    m.div_ceil(2)
}

/// The negativity set S_j of a cycle: the open arcs where
/// `(−1)^{(n−1)/2} cos(nθ − α) < 0`, each of length π/n, n arcs per circle.
pub fn cycle_negative_arcs<T: Scalar>(n: usize, alpha: T) -> ArcSet<T> {
    let nf = T::from_usize(n).unwrap();
    let length = T::PI() / nf;
    let sigma_positive = ((n - 1) / 2) % 2 == 0;
    let offset = if sigma_positive {
        // cos < 0 on (α + π/2 + 2mπ, α + 3π/2 + 2mπ) scaled by 1/n
        T::FRAC_PI_2()
    } else {
        // cos > 0 on (α − π/2 + 2mπ, α + π/2 + 2mπ) scaled by 1/n
        -T::FRAC_PI_2()
    };
    let arcs = (0..n)
        .map(|m| {
            let two_m_pi = T::TAU() * T::from_usize(m).unwrap();
            Arc::new((alpha + offset + two_m_pi) / nf, length)
        })
        .collect();
    ArcSet::new(arcs)
}

/// Exceptional behavior of an even cycle (Lemma-4.2(a) data).
#[derive(Debug, Clone, PartialEq)]
pub struct EvenExceptional<T> {
    /// Whether |w_1w_3⋯w_{n−1}| = |w_2w_4⋯w_n| holds.
    pub equality: bool,
    /// The θ values (mod 2π) where i_{≥0} = n/2 + 1; empty unless `equality`.
    pub thetas: Vec<T>,
}

/// Index data for one cycle block.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleIndex<T> {
    /// d = ⌊n/2⌋.
    pub d: usize,
    /// For odd n: the arc set where i_{≥0} attains d.
    pub attaining_arcs: Option<ArcSet<T>>,
    /// For even n: the exceptional-equality report.
    pub even_exceptional: Option<EvenExceptional<T>>,
}

/// d of a weighted cycle block: ⌊n/2⌋, plus the witness arcs (odd n) or the
/// exceptional-θ report (even n).
pub fn zdi_cycle<T: Scalar>(weights: &[Complex<T>]) -> CycleIndex<T> {
    let n = weights.len();
    assert!(n >= 2, "cycle needs size ≥ 2");
    debug_assert!(weights.iter().all(|w| w.norm() > T::zero()));
    let alpha: T = weights.iter().fold(T::zero(), |acc, &w| acc + arg_two_pi(w));
    let d = n / 2;
    if n % 2 == 1 {
        CycleIndex {
            d,
            attaining_arcs: Some(cycle_negative_arcs(n, alpha)),
            even_exceptional: None,
        }
    } else {
        let mut odd_prod = T::one();
        let mut even_prod = T::one();
        for (i, w) in weights.iter().enumerate() {
            if i % 2 == 0 {
                odd_prod *= w.norm(); // w_1, w_3, … (1-based odd)
            } else {
                even_prod *= w.norm();
            }
        }
        let equality =
            (odd_prod - even_prod).abs() <= T::lit(1e-10) * T::one().max(odd_prod.max(even_prod));
        let thetas = if equality {
            // θ = (α + mπ)/n with m even when n/2 is even, m odd otherwise.
            let parity = if (n / 2) % 2 == 0 { 0 } else { 1 };
            let nf = T::from_usize(n).unwrap();
            let mut ts: Vec<T> = (0..n)
                .map(|j| {
                    let m = 2 * j + parity;
                    wrap_two_pi((alpha + T::PI() * T::from_usize(m).unwrap()) / nf)
                })
                .collect();
            ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            ts
        } else {
            Vec::new()
        };
        CycleIndex {
            d,
            attaining_arcs: None,
            even_exceptional: Some(EvenExceptional { equality, thetas }),
        }
    }
}

/// Exact d(A) for a decomposed weighted permutation matrix.
pub fn zdi_weighted_permutation<T: Scalar>(dec: &PermDecomposition<T>) -> ZdiResult<T> {
    let base: usize = dec.cycles.iter().map(|c| c.size() / 2).sum::<usize>()
        + dec.paths.iter().map(|p| zdi_path(p.size())).sum::<usize>();
    let odd: Vec<&CycleComponent<T>> = dec.cycles.iter().filter(|c| c.is_odd()).collect();
    let p = odd.len();
    if p == 0 {
        return ZdiResult {
            d: base,
            theta_witness: T::zero(),
            lambda_minima: None,
            method: Method::WeightedPermutation,
        };
    }
    // Flatten all S_j arcs; arcs of one set are disjoint, so the stabbing
    // count equals the number of sets hit.
    let mut arcs: Vec<Arc<T>> = Vec::new();
    for c in &odd {
        arcs.extend(cycle_negative_arcs(c.size(), c.angle_sum()).arcs);
    }
    let (stab, witness) = max_stabbing(&arcs);
    debug_assert!(stab <= p);
    ZdiResult {
        d: base + (p - stab),
        theta_witness: witness,
        lambda_minima: None,
        method: Method::WeightedPermutation,
    }
}

/// Direct rule for a direct sum of exactly two cycles (sizes m, n ≥ 2):
/// d = ⌊m/2⌋ + ⌊n/2⌋ + 1 exactly when m = n is odd and Σ(arg b_j − arg c_j)
/// is an odd multiple of π; otherwise the sum of the parts.
pub fn cycle_pair_rule<T: Scalar>(b_weights: &[Complex<T>], c_weights: &[Complex<T>]) -> usize {
    let m = b_weights.len();
    let n = c_weights.len();
    assert!(m >= 2 && n >= 2);
    let base = m / 2 + n / 2;
    if m != n || m % 2 == 0 {
        return base;
    }
    let beta: T = b_weights
        .iter()
        .fold(T::zero(), |acc, &w| acc + arg_two_pi(w));
    let gamma: T = c_weights
        .iter()
        .fold(T::zero(), |acc, &w| acc + arg_two_pi(w));
    let ratio = (beta - gamma).abs() / T::PI();
    let rounded = ratio.round();
    let is_odd_multiple = (ratio - rounded).abs() <= T::lit(1e-9)
        && (rounded.to_usize().map(|r| r % 2 == 1).unwrap_or(false));
    if is_odd_multiple {
        base + 1
    } else {
        base
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn cycle_matrix(weights: &[Complex<f64>]) -> ComplexMatrix<f64> {
        let n = weights.len();
        let mut a = ComplexMatrix::zeros(n);
        for i in 0..n - 1 {
            a[(i, i + 1)] = weights[i];
        }
        a[(n - 1, 0)] = weights[n - 1];
        a
    }

    #[test]
    fn decomposes_shift_and_bidiagonal() {
        let shift = cycle_matrix(&[c(1.0, 0.0); 4]);
        let dec = decompose_weighted_permutation(&shift, 1e-10).unwrap();
        assert_eq!(dec.cycles.len(), 1);
        assert_eq!(dec.cycles[0].size(), 4);
        assert!(dec.cycles[0].angle_sum().abs() < 1e-14);

        let mut bi = ComplexMatrix::<f64>::zeros(3);
        bi[(0, 1)] = c(2.0, 0.0);
        bi[(1, 2)] = c(-1.0, 0.0);
        let dec = decompose_weighted_permutation(&bi, 1e-10).unwrap();
        assert_eq!(dec.paths.len(), 1);
        assert_eq!(dec.paths[0].size(), 3);
        assert_eq!(dec.reconstruct(), bi);
    }

    #[test]
    fn rejects_double_entries_and_one_cycles() {
        let mut bad = ComplexMatrix::<f64>::zeros(2);
        bad[(0, 0)] = c(1.0, 0.0);
        bad[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            decompose_weighted_permutation(&bad, 1e-10),
            Err(ZdiError::NotWeightedPermutation { .. })
        ));
        let diag = ComplexMatrix::diagonal_real(&[1.0, 0.0]);
        assert!(matches!(
            decompose_weighted_permutation(&diag, 1e-10),
            Err(ZdiError::OneCycle { index: 0 })
        ));
    }

    #[test]
    fn path_index_is_ceil_half() {
        assert_eq!(zdi_path(1), 1);
        assert_eq!(zdi_path(2), 1);
        assert_eq!(zdi_path(5), 3);
    }

    #[test]
    fn cycle_index_examples() {
        // n=4, all ones: exceptional equality, θ ∈ {0, π/2, π, 3π/2} (n/2 even → m even)
        let idx = zdi_cycle(&[c(1.0, 0.0); 4]);
        assert_eq!(idx.d, 2);
        let exc = idx.even_exceptional.unwrap();
        assert!(exc.equality);
        assert_eq!(exc.thetas.len(), 4);
        for (t, want) in exc.thetas.iter().zip([0.0, 1.0, 2.0, 3.0]) {
            assert!((t - want * std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        }

        let idx = zdi_cycle(&[c(1.0, 0.0); 3]);
        assert_eq!(idx.d, 1);
        let arcs = idx.attaining_arcs.unwrap();
        assert!((arcs.measure() - std::f64::consts::PI).abs() < 1e-12);

        let idx = zdi_cycle(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(idx.d, 1);
        assert!(!idx.even_exceptional.unwrap().equality);
    }

    #[test]
    fn weighted_permutation_formula_cases() {
        // cycle(3, ones) ⊕ path(2): d = 1 + 1 + 0 (positive weights, Prop 4.8)
        let c3 = cycle_matrix(&[c(1.0, 0.0); 3]);
        let mut p2 = ComplexMatrix::<f64>::zeros(2);
        p2[(0, 1)] = c(3.0, 0.0);
        let a = ComplexMatrix::direct_sum(&[&c3, &p2]);
        let dec = decompose_weighted_permutation(&a, 1e-10).unwrap();
        assert_eq!(zdi_weighted_permutation(&dec).d, 2);

        // two 3-cycles, all ones: d = 2
        let a2 = ComplexMatrix::direct_sum(&[&c3, &c3]);
        let dec2 = decompose_weighted_permutation(&a2, 1e-10).unwrap();
        assert_eq!(zdi_weighted_permutation(&dec2).d, 2);

        // two 3-cycles, one weight negated: angle sums differ by π → d = 3
        let c3neg = cycle_matrix(&[c(-1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let a3 = ComplexMatrix::direct_sum(&[&c3, &c3neg]);
        let dec3 = decompose_weighted_permutation(&a3, 1e-10).unwrap();
        assert_eq!(zdi_weighted_permutation(&dec3).d, 3);
    }

    #[test]
    fn pair_rule_matches_formula() {
        let b = vec![c(1.0, 0.0); 3];
        let five = vec![c(1.0, 0.0); 5];
        assert_eq!(cycle_pair_rule::<f64>(&b, &five), 3);
        assert_eq!(cycle_pair_rule::<f64>(&b, &b), 2);
        let cneg = vec![c(-1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        assert_eq!(cycle_pair_rule::<f64>(&b, &cneg), 3);
        let four = vec![c(1.0, 0.0); 4];
        assert_eq!(cycle_pair_rule::<f64>(&four, &four), 4);
    }
}
