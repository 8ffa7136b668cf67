//! Isometry certificates: V with V*V = I_k and V*AV ≈ 0_k, witnessing
//! d(A) ≥ k.
//!
//! `verify` is the sole arbiter — constructors never self-certify. Hermitian
//! and diagonalized-normal inputs get direct constructions; everything else
//! goes through a seeded multi-start descent on ‖V*AV‖_F over the isometry
//! manifold, with a projected-gradient step and polar retraction.

use crate::error::{Result, ZdiError};
use crate::frame::Frame;
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::special::normal::{zdi_normal, NormalSpectrum};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

/// A candidate isometry with its verification residuals.
#[derive(Debug, Clone)]
pub struct IsometryCertificate<T> {
    pub v: Frame<T>,
    pub k: usize,
    /// ‖V*V − I_k‖_F.
    pub residual_iso: T,
    /// ‖V*AV‖_F.
    pub residual_zero: T,
}

/// Default isometry residual bound.
pub fn default_eps_v<T: Scalar>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e3))
}

/// Default zero-compression residual bound (relative to ‖A‖).
pub fn default_eps_z<T: Scalar>() -> T {
    T::lit(1e-8).max(T::epsilon() * T::lit(1e5))
}

/// Check both residual bounds: ‖V*V − I‖ ≤ ε_V and ‖V*AV‖ ≤ ε_Z·‖A‖.
/// Independent of however V was constructed.
pub fn verify<T: Scalar>(
    a: &ComplexMatrix<T>,
    v: &Frame<T>,
    eps_v: T,
    eps_z: T,
) -> Result<(bool, T, T)> {
    if v.rows() != a.dim() || v.k() > a.dim() {
        return Err(ZdiError::DimensionMismatch {
            n: a.dim(),
            rows: v.rows(),
            cols: v.k(),
        });
    }
    let residual_iso = v.isometry_residual();
    let residual_zero = v.compression_norm(a);
    let ok = residual_iso <= eps_v && residual_zero <= eps_z * a.frobenius_norm();
    Ok((ok, residual_iso, residual_zero))
}

/// Package a frame into a certificate (residuals recorded, not judged).
pub fn certificate_for<T: Scalar>(a: &ComplexMatrix<T>, v: Frame<T>) -> IsometryCertificate<T> {
    let residual_iso = v.isometry_residual();
    let residual_zero = v.compression_norm(a);
    IsometryCertificate {
        k: v.k(),
        v,
        residual_iso,
        residual_zero,
    }
}

/// Constructive certificate for Hermitian H realizing k = min(i_{≥0}, i_{≤0}):
/// every kernel eigenvector, plus one mixed vector
/// (√(−λ_j)·u_i + √(λ_i)·w_j)/√(λ_i − λ_j) per positive/negative pair.
/// Disjoint eigenvectors keep all cross terms zero.
pub fn construct_hermitian<T: Scalar>(
    h: &ComplexMatrix<T>,
    tau: T,
) -> Result<IsometryCertificate<T>> {
    let eig = crate::eig::hermitian_eig(h)?;
    let n = h.dim();
    let values = eig.values();
    let mut positives: Vec<usize> = Vec::new();
    let mut negatives: Vec<usize> = Vec::new();
    let mut zeros: Vec<usize> = Vec::new();
    for (j, &v) in values.iter().enumerate() {
        if v > tau {
            positives.push(j);
        } else if v < -tau {
            negatives.push(j);
        } else {
            zeros.push(j);
        }
    }
    // most negative first, so the largest positives pair with the deepest negatives
    negatives.reverse();

    let mut v = Frame::empty(n);
    for &j in &zeros {
        v.push_column(eig.eigenvector(j));
    }
    for (&i, &j) in positives.iter().zip(&negatives) {
        let (lp, ln) = (values[i], values[j]);
        let u = eig.eigenvector(i);
        let w = eig.eigenvector(j);
        let denom = (lp - ln).sqrt();
        let cu = Complex::new((-ln).sqrt() / denom, T::zero());
        let cw = Complex::new(lp.sqrt() / denom, T::zero());
        let col: Vec<Complex<T>> = u
            .iter()
            .zip(&w)
            .map(|(&a, &b)| a * cu + b * cw)
            .collect();
        v.push_column(col);
    }
    Ok(certificate_for(h, v))
}

/// Certificate for a diagonalized normal matrix, with the optimality flag.
#[derive(Debug, Clone)]
pub struct NormalCertificate<T> {
    pub certificate: IsometryCertificate<T>,
    /// The exact index from the spectrum.
    pub target_d: usize,
    /// True when greedy matching fell short of the exact index.
    pub suboptimal: bool,
}

/// Greedy isotropic construction for a normal matrix given its spectrum and
/// a matching eigenbasis (nonzero eigenvalues first, kernel last — the
/// `normal_eig` layout). Pairs with 0 on the connecting segment give one
/// vector each, disjoint triples with 0 in the hull give one vector each,
/// kernel vectors come along for free. Best-effort: k may fall short of d.
pub fn construct_diagonal_normal<T: Scalar>(
    spec: &NormalSpectrum<T>,
    eigenbasis: &ComplexMatrix<T>,
) -> NormalCertificate<T> {
    let n = spec.n();
    assert_eq!(eigenbasis.dim(), n);
    let eigs = spec.nonzero();
    let m = eigs.len();
    let column = |j: usize| -> Vec<Complex<T>> { (0..n).map(|i| eigenbasis[(i, j)]).collect() };

    let mut v = Frame::empty(n);
    for j in m..n {
        v.push_column(column(j));
    }

    let seg_tol = T::lit(1e-9);
    let mut used = vec![false; m];
    // pairs: 0 on the segment [λ_i, λ_j] ⇔ |λ_i| + |λ_j| = |λ_i − λ_j|
    for i in 0..m {
        if used[i] {
            continue;
        }
        for j in (i + 1)..m {
            if used[j] {
                continue;
            }
            let (li, lj) = (eigs[i], eigs[j]);
            let slack = li.norm() + lj.norm() - (li - lj).norm();
            if slack.abs() <= seg_tol * (li.norm() + lj.norm()) {
                let t = lj.norm() / (li.norm() + lj.norm());
                let ci = Complex::new(t.sqrt(), T::zero());
                let cj = Complex::new((T::one() - t).sqrt(), T::zero());
                let (ui, uj) = (column(i), column(j));
                let col: Vec<Complex<T>> = ui
                    .iter()
                    .zip(&uj)
                    .map(|(&x, &y)| x * ci + y * cj)
                    .collect();
                v.push_column(col);
                used[i] = true;
                used[j] = true;
                break;
            }
        }
    }
    // triples among the leftovers: nonnegative barycentric weights for 0
    let remaining: Vec<usize> = (0..m).filter(|&i| !used[i]).collect();
    let r = remaining.len();
    'triples: for a_i in 0..r {
        if used[remaining[a_i]] {
            continue;
        }
        for b_i in (a_i + 1)..r {
            if used[remaining[b_i]] {
                continue;
            }
            for c_i in (b_i + 1)..r {
                if used[remaining[c_i]] {
                    continue;
                }
                let (ia, ib, ic) = (remaining[a_i], remaining[b_i], remaining[c_i]);
                if let Some(w) = hull_weights(eigs[ia], eigs[ib], eigs[ic]) {
                    let cols = [column(ia), column(ib), column(ic)];
                    let mut col = vec![Complex::new(T::zero(), T::zero()); n];
                    for (t, src) in w.iter().zip(&cols) {
                        let c = Complex::new(t.sqrt(), T::zero());
                        for (dst, &s) in col.iter_mut().zip(src) {
                            *dst += s * c;
                        }
                    }
                    v.push_column(col);
                    used[ia] = true;
                    used[ib] = true;
                    used[ic] = true;
                    continue 'triples;
                }
            }
        }
    }

    let target_d = zdi_normal(spec).d;
    let k = v.k();
    // residuals against A = U diag(λ) U* reconstructed from the inputs
    let mut lambda = eigs.to_vec();
    lambda.resize(n, Complex::new(T::zero(), T::zero()));
    let a = eigenbasis
        .mul(&ComplexMatrix::diagonal(&lambda))
        .mul(&eigenbasis.adjoint());
    NormalCertificate {
        certificate: certificate_for(&a, v),
        target_d,
        suboptimal: k < target_d,
    }
}

/// Barycentric weights (t_a, t_b, t_c) ≥ 0 with Σt = 1 and t·(λ_a, λ_b, λ_c) = 0.
fn hull_weights<T: Scalar>(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Option<[T; 3]> {
    // solve [Re a  Re b  Re c; Im a  Im b  Im c; 1 1 1] t = (0, 0, 1)
    let m = [
        [a.re, b.re, c.re],
        [a.im, b.im, c.im],
        [T::one(), T::one(), T::one()],
    ];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let scale = a.norm().max(b.norm()).max(c.norm());
    if det.abs() <= T::lit(1e-12) * scale * scale {
        return None;
    }
    // Cramer for rhs (0,0,1): only the third column of the adjugate matters
    let t0 = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    let t1 = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    let t2 = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    let floor = -T::lit(1e-12);
    if t0 >= floor && t1 >= floor && t2 >= floor {
        Some([t0.max(T::zero()), t1.max(T::zero()), t2.max(T::zero())])
    } else {
        None
    }
}

/// Multi-start descent configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig<T> {
    pub restarts: usize,
    pub max_iters: usize,
    pub eps_v: T,
    pub eps_z: T,
}

impl<T: Scalar> Default for SearchConfig<T> {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 2500,
            eps_v: default_eps_v::<T>(),
            eps_z: default_eps_z::<T>(),
        }
    }
}

/// Objective ‖V*AV‖²_F and its Euclidean gradient 2(AVM* + A*VM), M = V*AV.
fn objective_grad<T: Scalar>(
    a: &ComplexMatrix<T>,
    adj: &ComplexMatrix<T>,
    v: &Frame<T>,
) -> (T, Frame<T>) {
    let m = v.compress(a);
    let f = m.frobenius_norm();
    let av = v.apply(a);
    let asv = v.apply(adj);
    let two = Complex::new(T::lit(2.0), T::zero());
    let g = av
        .mul_small(&m.adjoint())
        .add_scaled(Complex::new(T::one(), T::zero()), &asv.mul_small(&m))
        .mul_scalar(two);
    (f * f, g)
}

impl<T: Scalar> Frame<T> {
    fn mul_scalar(&self, c: Complex<T>) -> Frame<T> {
        let cols = self
            .columns()
            .iter()
            .map(|col| col.iter().map(|&z| z * c).collect())
            .collect();
        Frame::from_columns(self.rows(), cols).expect("same shape")
    }
}

fn random_isometry<T: Scalar>(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Frame<T>>
where
    StandardNormal: Distribution<T>,
{
    let cols: Vec<Vec<Complex<T>>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: T = StandardNormal.sample(rng);
                    let im: T = StandardNormal.sample(rng);
                    Complex::new(re, im)
                })
                .collect()
        })
        .collect();
    Frame::from_columns(n, cols)?.polar()
}

/// Seed a start from the Hermitian construction at a coarse witness angle:
/// the real part at the count-minimizing θ already has a large isotropic
/// subspace, which is an excellent basin for the full objective.
fn witness_start<T: Scalar>(
    a: &ComplexMatrix<T>,
    k_target: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Frame<T>>
where
    StandardNormal: Distribution<T>,
{
    let n = a.dim();
    let tau = crate::matrix::default_zero_tol(a);
    let coarse = 180usize;
    let step = T::TAU() / T::from_usize(coarse).unwrap();
    let mut best = (usize::MAX, T::zero());
    for i in 0..coarse {
        let t = step * T::from_usize(i).unwrap();
        let h = a.rotate(t).real_part();
        let tri = crate::inertia::tridiagonalize(&h);
        let c = n - tri.count_less_than(-tau);
        if c < best.0 {
            best = (c, t);
        }
    }
    let h = a.rotate(best.1).real_part();
    let cert = construct_hermitian(&h, tau)?;
    let mut v = cert.v;
    while v.k() > k_target {
        let mut cols = v.columns().to_vec();
        cols.pop();
        v = Frame::from_columns(n, cols)?;
    }
    while v.k() < k_target {
        let col: Vec<Complex<T>> = (0..n)
            .map(|_| {
                let re: T = StandardNormal.sample(rng);
                let im: T = StandardNormal.sample(rng);
                Complex::new(re, im)
            })
            .collect();
        v.push_column(col);
    }
    v.polar()
}

fn descend<T: Scalar>(
    a: &ComplexMatrix<T>,
    adj: &ComplexMatrix<T>,
    mut v: Frame<T>,
    cfg: &SearchConfig<T>,
    stop_f: T,
) -> Result<(Frame<T>, T)> {
    let fro2 = (a.frobenius_norm() * a.frobenius_norm()).max(T::epsilon());
    let mut eta = T::lit(0.25) / fro2;
    let (mut f, mut g) = objective_grad(a, adj, &v);
    for _ in 0..cfg.max_iters {
        if f <= stop_f {
            break;
        }
        let minus_eta = Complex::new(-eta, T::zero());
        let cand = v.add_scaled(minus_eta, &g).polar()?;
        let (fc, gc) = objective_grad(a, adj, &cand);
        if fc < f {
            v = cand;
            f = fc;
            g = gc;
            eta = (eta * T::lit(1.3)).min(T::lit(1e3) / fro2);
        } else {
            eta = eta * T::lit(0.4);
            if eta < T::lit(1e-12) / fro2 {
                break;
            }
        }
    }
    Ok((v, f))
}

/// Seeded multi-start search for an isometry with V*AV ≈ 0_{k_target}.
///
/// Starts run independently (in parallel); all verified successes are
/// collected and the lowest restart index wins, so the result is a
/// deterministic function of (seed, restarts). Failure only means the search
/// did not find a witness, not that d(A) < k_target.
pub fn construct_search<T: Scalar>(
    a: &ComplexMatrix<T>,
    k_target: usize,
    cfg: &SearchConfig<T>,
    seed: u64,
) -> Result<IsometryCertificate<T>>
where
    StandardNormal: Distribution<T>,
{
    let n = a.dim();
    assert!(k_target >= 1 && k_target <= n, "need 1 ≤ k_target ≤ n");
    let adj = a.adjoint();
    let stop = cfg.eps_z * a.frobenius_norm() * T::lit(0.3);
    let stop_f = stop * stop;

    let outcomes: Vec<(usize, Result<(Frame<T>, T)>)> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            let start = if r == 0 {
                witness_start(a, k_target, &mut rng)
            } else {
                random_isometry(n, k_target, &mut rng)
            };
            let out = start.and_then(|v0| descend(a, &adj, v0, cfg, stop_f));
            (r, out)
        })
        .collect();

    let mut best_residual = T::infinity();
    let mut winner: Option<(usize, IsometryCertificate<T>)> = None;
    for (r, out) in outcomes {
        let (v, _f) = out?;
        let (ok, riso, rzero) = verify(a, &v, cfg.eps_v, cfg.eps_z)?;
        best_residual = best_residual.min(rzero);
        if ok && winner.as_ref().map(|(wr, _)| r < *wr).unwrap_or(true) {
            winner = Some((
                r,
                IsometryCertificate {
                    k: v.k(),
                    v,
                    residual_iso: riso,
                    residual_zero: rzero,
                },
            ));
        }
    }
    match winner {
        Some((_, cert)) => Ok(cert),
        None => Err(ZdiError::SearchFailed {
            best_residual: best_residual.to_f64().unwrap_or(f64::NAN),
            restarts: cfg.restarts,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_unitary, unitary_conjugate};

    #[test]
    fn verify_standard_basis_block() {
        let a = ComplexMatrix::<f64>::from_rows(&[
            vec![(0.0, 0.0), (0.0, 0.0), (1.0, 1.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (2.0, 0.0)],
            vec![(3.0, 0.0), (4.0, 0.0), (5.0, 0.0)],
        ])
        .unwrap();
        let v = Frame::standard_basis(3, 2);
        let (ok, riso, rzero) = verify(&a, &v, 1e-10, 1e-8).unwrap();
        assert!(ok && riso < 1e-14 && rzero < 1e-14);

        // V*V = I forces V*IV = I ≠ 0
        let (ok, _, _) = verify(&ComplexMatrix::<f64>::identity(3), &v, 1e-10, 1e-8).unwrap();
        assert!(!ok);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ComplexMatrix::<f64>::identity(3);
        let v = Frame::standard_basis(2, 1);
        assert!(matches!(
            verify(&a, &v, 1e-10, 1e-8),
            Err(ZdiError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hermitian_construction_matches_fast_path() {
        let tau = 1e-8;
        let h = ComplexMatrix::<f64>::diagonal_real(&[1.0, -1.0]);
        let cert = construct_hermitian(&h, tau).unwrap();
        assert_eq!(cert.k, 1);
        let col = cert.v.column(0);
        assert!((col[0].norm_sqr() - 0.5).abs() < 1e-12);
        let (ok, _, _) = verify(&h, &cert.v, 1e-10, 1e-8).unwrap();
        assert!(ok);

        let h2 = ComplexMatrix::<f64>::diagonal_real(&[2.0, -1.0, 0.0]);
        let cert2 = construct_hermitian(&h2, tau).unwrap();
        assert_eq!(cert2.k, 2);
        assert!(verify(&h2, &cert2.v, 1e-10, 1e-8).unwrap().0);

        let h3 = ComplexMatrix::<f64>::diagonal_real(&[1.0, 2.0, 3.0]);
        assert_eq!(construct_hermitian(&h3, tau).unwrap().k, 0);
    }

    #[test]
    fn hermitian_construction_under_conjugation() {
        let u = random_unitary::<f64>(6, 17);
        let d = ComplexMatrix::<f64>::diagonal_real(&[3.0, 1.0, 0.5, 0.0, -2.0, -4.0]);
        let h = unitary_conjugate(&u, &d);
        let cert = construct_hermitian(&h, 1e-8).unwrap();
        assert_eq!(cert.k, 3); // min(i≥0, i≤0) = min(4, 3)
        let (ok, _, rz) = verify(&h, &cert.v, 1e-10, 1e-8).unwrap();
        assert!(ok, "zero residual {rz}");
    }

    #[test]
    fn normal_greedy_pairs_and_triples() {
        let tau = 1e-8;
        // {1, −1}: one pair
        let eigs = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        let a = ComplexMatrix::diagonal(&eigs);
        let spec = NormalSpectrum::from_eigenvalues(&eigs, tau);
        let nc = construct_diagonal_normal(&spec, &ComplexMatrix::identity(2));
        assert_eq!(nc.certificate.k, 1);
        assert!(!nc.suboptimal);
        assert!(verify(&a, &nc.certificate.v, 1e-10, 1e-8).unwrap().0);

        // cube roots of unity: one triple
        let w = 2.0 * std::f64::consts::PI / 3.0;
        let eigs3 = [
            Complex::new(1.0, 0.0),
            Complex::from_polar(1.0, w),
            Complex::from_polar(1.0, 2.0 * w),
        ];
        let a3 = ComplexMatrix::diagonal(&eigs3);
        let spec3 = NormalSpectrum::from_eigenvalues(&eigs3, tau);
        let nc3 = construct_diagonal_normal(&spec3, &ComplexMatrix::identity(3));
        assert_eq!(nc3.certificate.k, 1);
        assert!(verify(&a3, &nc3.certificate.v, 1e-10, 1e-8).unwrap().0);

        // {1, 2}: nothing to take
        let eigs2 = [Complex::new(1.0, 0.0), Complex::new(2.0, 0.0)];
        let spec2 = NormalSpectrum::from_eigenvalues(&eigs2, tau);
        let nc2 = construct_diagonal_normal(&spec2, &ComplexMatrix::identity(2));
        assert_eq!(nc2.certificate.k, 0);
    }

    #[test]
    fn search_finds_and_fails_correctly() {
        let cfg = SearchConfig::<f64> {
            restarts: 8,
            ..Default::default()
        };
        // diag(0,0,1) at k=2: spanned by e1, e2
        let a = ComplexMatrix::<f64>::diagonal_real(&[0.0, 0.0, 1.0]);
        let cert = construct_search(&a, 2, &cfg, 7).unwrap();
        assert_eq!(cert.k, 2);
        assert!(verify(&a, &cert.v, cfg.eps_v, cfg.eps_z).unwrap().0);

        // cyclic shift n = 4 at k = 2
        let mut shift = ComplexMatrix::<f64>::zeros(4);
        for i in 0..3 {
            shift[(i, i + 1)] = Complex::new(1.0, 0.0);
        }
        shift[(3, 0)] = Complex::new(1.0, 0.0);
        let cert = construct_search(&shift, 2, &cfg, 11).unwrap();
        assert!(verify(&shift, &cert.v, cfg.eps_v, cfg.eps_z).unwrap().0);

        // diag(1,2) has d = 0: k = 1 must fail
        let bad = ComplexMatrix::<f64>::diagonal_real(&[1.0, 2.0]);
        assert!(matches!(
            construct_search(&bad, 1, &cfg, 3),
            Err(ZdiError::SearchFailed { .. })
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig::<f64> {
            restarts: 6,
            ..Default::default()
        };
        let u = random_unitary::<f64>(4, 5);
        let mut j = ComplexMatrix::<f64>::zeros(4);
        j[(0, 1)] = Complex::new(1.0, 0.0);
        j[(1, 2)] = Complex::new(1.0, 0.0);
        j[(2, 3)] = Complex::new(1.0, 0.0);
        let a = unitary_conjugate(&u, &j);
        let c1 = construct_search(&a, 2, &cfg, 99).unwrap();
        let c2 = construct_search(&a, 2, &cfg, 99).unwrap();
        assert_eq!(c1.v, c2.v);
    }
}
