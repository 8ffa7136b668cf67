//! Report assembly: every subcommand produces one serializable struct, so a
//! JSON report is byte-identical across identical invocations (timestamps
//! are opt-out via --no-timestamp). Every numeric claim is reproducible from
//! the recorded config.

use crate::io::{is_weighted_permutation, ClassHint, CliError, MatrixDocument};
use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};
use zdi_core::certify::{
    construct_diagonal_normal, construct_hermitian, default_eps_v, default_eps_z, verify,
};
use zdi_core::special::{
    classify_normal_extremal, decompose_weighted_permutation, normal_eig, zdi_hermitian,
    zdi_normal, zdi_weighted_permutation, ExtremalClass,
};
use zdi_core::structure::{
    boundary_extreme_analysis, characterize_n_minus_1, deflate_zero_with_index, kernel_dimension,
    Classification3x3,
};
use zdi_core::sweep::{zdi_general, ZdiResult};
use zdi_core::{Matrix64, SweepConfig64, ZdiError};

#[derive(Debug, Clone, Serialize)]
pub struct MatrixInfo {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_hint: Option<String>,
}

impl MatrixInfo {
    pub fn new(doc: &MatrixDocument) -> Self {
        Self {
            n: doc.n,
            name: doc.name().map(str::to_owned),
            class_hint: doc.class_hint().map(|c| c.name().to_owned()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigInfo {
    pub grid: usize,
    pub refine_iters: usize,
    pub theta_tol: f64,
    pub zero_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ConfigInfo {
    pub fn new(cfg: &SweepConfig64, a: &Matrix64, seed: Option<u64>) -> Self {
        Self {
            grid: cfg.grid_points,
            refine_iters: cfg.refine_iters,
            theta_tol: cfg.theta_tol,
            zero_tol: cfg.resolve_zero_tol(a),
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub zero_tol: f64,
    pub hermitian_rel_tol: f64,
    pub certificate_eps_v: f64,
    pub certificate_eps_z: f64,
}

impl Tolerances {
    pub fn new(zero_tol: f64) -> Self {
        Self {
            zero_tol,
            hermitian_rel_tol: 1e-8,
            certificate_eps_v: default_eps_v::<f64>(),
            certificate_eps_z: default_eps_z::<f64>(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexReport {
    pub d: usize,
    pub theta_witness: f64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_minima: Option<Vec<f64>>,
}

impl IndexReport {
    pub fn new(r: &ZdiResult<f64>) -> Self {
        Self {
            d: r.d,
            theta_witness: r.theta_witness,
            method: r.method.name().to_owned(),
            lambda_minima: r.lambda_minima.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum FastPath {
    Hermitian {
        d: usize,
        i_plus: usize,
        i_zero: usize,
        i_minus: usize,
    },
    Normal {
        d: usize,
        kernel_dim: usize,
        nonzero_count: usize,
        extremal_class: String,
        condition_discrepancy: bool,
    },
    WeightedPermutation {
        d: usize,
        cycle_sizes: Vec<usize>,
        path_sizes: Vec<usize>,
    },
}

impl FastPath {
    pub fn d(&self) -> usize {
        match self {
            FastPath::Hermitian { d, .. }
            | FastPath::Normal { d, .. }
            | FastPath::WeightedPermutation { d, .. } => *d,
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            FastPath::Hermitian { .. } => "hermitian",
            FastPath::Normal { .. } => "normal",
            FastPath::WeightedPermutation { .. } => "weighted-permutation",
        }
    }
}

fn extremal_name(c: ExtremalClass) -> &'static str {
    match c {
        ExtremalClass::Lower => "lower",
        ExtremalClass::Upper => "upper",
        ExtremalClass::Interior => "interior",
    }
}

fn classification_name(c: &Classification3x3<f64>) -> &'static str {
    match c {
        Classification3x3::EllipticWithZero { .. } => "elliptic-with-zero",
        Classification3x3::DegenerateSegment { .. } => "degenerate-segment",
        Classification3x3::Other => "other",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GuaranteeCheck {
    pub applies: bool,
    pub required: usize,
    pub actual: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeflationJson {
    pub reducing_multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guaranteed_lower_bound: Option<usize>,
    pub reconstruction_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexNMinusOne {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_class: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryJson {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extreme: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_from_boundary: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureJson {
    /// d > ⌊n/2⌋ forces dim ker A ≥ 2d − n.
    pub zero_eigenvalue_guarantee: GuaranteeCheck,
    /// d > ⌊2n/3⌋ forces dim(ker A ∩ ker A*) ≥ 3d − 2n.
    pub reducing_eigenvalue_guarantee: GuaranteeCheck,
    pub deflation: DeflationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_n_minus_1: Option<IndexNMinusOne>,
    pub boundary: BoundaryJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateSummary {
    pub construction: String,
    pub k: usize,
    pub residual_iso: f64,
    pub residual_zero: f64,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suboptimal: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub matrix: MatrixInfo,
    pub config: ConfigInfo,
    pub tolerances: Tolerances,
    pub general: IndexReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fast_path: Option<FastPath>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fast_path_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    pub structure: StructureJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

pub fn timestamp_now(enabled: bool) -> Option<u64> {
    if enabled {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    } else {
        None
    }
}

/// Detect the structural class used for the fast path; a verified hint wins.
fn effective_class(a: &Matrix64, hint: Option<ClassHint>) -> Option<ClassHint> {
    if let Some(h) = hint {
        return Some(h);
    }
    let tol = 1e-8;
    if a.is_hermitian(tol) {
        Some(ClassHint::Hermitian)
    } else if is_weighted_permutation(a, tol) {
        Some(ClassHint::WeightedPermutation)
    } else if a.is_normal(tol) {
        Some(ClassHint::Normal)
    } else {
        None
    }
}

/// Full analysis: general sweep, fast path with agreement check, structural
/// guarantees, boundary report, and a constructive certificate when one is
/// available for the class.
pub fn analyze(
    doc: &MatrixDocument,
    a: &Matrix64,
    cfg: &SweepConfig64,
    with_timestamp: bool,
) -> Result<AnalysisReport, CliError> {
    let n = a.dim();
    let tau = cfg.resolve_zero_tol(a);
    let general = zdi_general(a, cfg)?;
    let d = general.d;

    let mut fast_path = None;
    let mut fast_path_note = None;
    let mut certificate = None;
    match effective_class(a, doc.class_hint()) {
        Some(ClassHint::Hermitian) => {
            let fast = zdi_hermitian(a, tau)?;
            let vals = zdi_core::eig::hermitian_eigenvalues(a)?;
            let sig = zdi_core::inertia::signature(&vals, tau);
            fast_path = Some(FastPath::Hermitian {
                d: fast.d,
                i_plus: sig.i_plus,
                i_zero: sig.i_zero,
                i_minus: sig.i_minus,
            });
            let cert = construct_hermitian(a, tau)?;
            let (ok, riso, rzero) = verify(a, &cert.v, default_eps_v(), default_eps_z())?;
            certificate = Some(CertificateSummary {
                construction: "hermitian-pairs".into(),
                k: cert.k,
                residual_iso: riso,
                residual_zero: rzero,
                verified: ok,
                suboptimal: None,
            });
        }
        Some(ClassHint::WeightedPermutation) => {
            match decompose_weighted_permutation(a, tau) {
                Ok(dec) => {
                    let fast = zdi_weighted_permutation(&dec);
                    fast_path = Some(FastPath::WeightedPermutation {
                        d: fast.d,
                        cycle_sizes: dec.cycles.iter().map(|c| c.size()).collect(),
                        path_sizes: dec.paths.iter().map(|p| p.size()).collect(),
                    });
                }
                Err(ZdiError::OneCycle { index }) => {
                    fast_path_note = Some(format!(
                        "weighted permutation with a diagonal fixed point at index {index}; \
                         closed form needs cycle sizes >= 2, engine value used"
                    ));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Some(ClassHint::Normal) => {
            let (spec, basis) = normal_eig(a, tau)?;
            let fast = zdi_normal(&spec);
            let cls = classify_normal_extremal(&spec, 1e-9);
            fast_path = Some(FastPath::Normal {
                d: fast.d,
                kernel_dim: spec.kernel_dim(),
                nonzero_count: spec.nonzero().len(),
                extremal_class: extremal_name(cls.class).to_owned(),
                condition_discrepancy: cls.discrepancy,
            });
            let nc = construct_diagonal_normal(&spec, &basis);
            let (ok, riso, rzero) = verify(a, &nc.certificate.v, default_eps_v(), default_eps_z())?;
            certificate = Some(CertificateSummary {
                construction: "normal-greedy".into(),
                k: nc.certificate.k,
                residual_iso: riso,
                residual_zero: rzero,
                verified: ok,
                suboptimal: Some(nc.suboptimal),
            });
        }
        _ => {}
    }
    let agreement = fast_path.as_ref().map(|f| f.d() == d);
    if agreement == Some(false) {
        return Err(CliError::Core(ZdiError::AssertionFailed(format!(
            "fast path ({}) gives d = {}, general sweep gives d = {}",
            fast_path.as_ref().unwrap().class_name(),
            fast_path.as_ref().unwrap().d(),
            d
        ))));
    }

    // structural guarantees, asserted on every analysis run
    let ker = kernel_dimension(a, tau)?;
    let zero_guarantee = {
        let applies = d > n / 2;
        let required = if applies { 2 * d - n } else { 0 };
        let ok = !applies || ker >= required;
        if !ok {
            return Err(CliError::Core(ZdiError::AssertionFailed(format!(
                "kernel dimension {ker} below the guaranteed 2d-n = {required}"
            ))));
        }
        GuaranteeCheck {
            applies,
            required,
            actual: ker,
            ok,
        }
    };
    let deflation = deflate_zero_with_index(a, d, cfg)?;
    let reducing_guarantee = GuaranteeCheck {
        applies: 3 * d > 2 * n,
        required: deflation.guaranteed_lower_bound.unwrap_or(0),
        actual: deflation.reducing_multiplicity,
        ok: true, // deflate_zero_with_index errors if violated
    };
    let deflation_json = DeflationJson {
        reducing_multiplicity: deflation.reducing_multiplicity,
        block_dim: deflation.b.as_ref().map(|b| b.dim()),
        guaranteed_lower_bound: deflation.guaranteed_lower_bound,
        reconstruction_residual: deflation.reconstruction_residual,
    };
    let index_n_minus_1 = if n >= 3 {
        let rep = characterize_n_minus_1(a, cfg)?;
        Some(IndexNMinusOne {
            holds: rep.holds,
            block_class: rep.classification.as_ref().map(|c| classification_name(c).to_owned()),
        })
    } else {
        None
    };
    let boundary = match boundary_extreme_analysis(a, cfg) {
        Ok(rep) => BoundaryJson {
            applicable: true,
            reason: None,
            extreme: Some(rep.extreme),
            d_from_boundary: rep.d,
        },
        Err(ZdiError::NotOnBoundary { reason }) => BoundaryJson {
            applicable: false,
            reason: Some(reason.to_owned()),
            extreme: None,
            d_from_boundary: None,
        },
        Err(e) => return Err(e.into()),
    };

    Ok(AnalysisReport {
        matrix: MatrixInfo::new(doc),
        config: ConfigInfo::new(cfg, a, None),
        tolerances: Tolerances::new(tau),
        general: IndexReport::new(&general),
        fast_path,
        fast_path_note,
        agreement,
        structure: StructureJson {
            zero_eigenvalue_guarantee: zero_guarantee,
            reducing_eigenvalue_guarantee: reducing_guarantee,
            deflation: deflation_json,
            index_n_minus_1,
            boundary,
        },
        certificate,
        timestamp: timestamp_now(with_timestamp),
    })
}

pub fn render_analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(
        &mut out,
        format!(
            "matrix          n={}{}",
            r.matrix.n,
            r.matrix
                .name
                .as_deref()
                .map(|s| format!("  ({s})"))
                .unwrap_or_default()
        ),
    );
    push(&mut out, format!("d               {}", r.general.d));
    push(
        &mut out,
        format!("theta_witness   {:.12}", r.general.theta_witness),
    );
    push(&mut out, format!("method          {}", r.general.method));
    if let Some(fp) = &r.fast_path {
        push(
            &mut out,
            format!(
                "fast_path       {} (d={}, agreement={})",
                fp.class_name(),
                fp.d(),
                r.agreement.unwrap_or(false)
            ),
        );
    } else if let Some(note) = &r.fast_path_note {
        push(&mut out, format!("fast_path       none ({note})"));
    } else {
        push(&mut out, "fast_path       none".into());
    }
    let s = &r.structure;
    push(
        &mut out,
        format!(
            "deflation       multiplicity={} residual={:.3e}{}",
            s.deflation.reducing_multiplicity,
            s.deflation.reconstruction_residual,
            s.deflation
                .guaranteed_lower_bound
                .map(|b| format!(" guaranteed>={b}"))
                .unwrap_or_default()
        ),
    );
    if let Some(x) = &s.index_n_minus_1 {
        push(
            &mut out,
            format!(
                "index = n-1     {}{}",
                x.holds,
                x.block_class
                    .as_deref()
                    .map(|c| format!(" ({c})"))
                    .unwrap_or_default()
            ),
        );
    }
    push(
        &mut out,
        format!(
            "boundary        {}",
            if s.boundary.applicable {
                format!(
                    "0 on boundary, extreme={}{}",
                    s.boundary.extreme.unwrap_or(false),
                    s.boundary
                        .d_from_boundary
                        .map(|d| format!(", d={d}"))
                        .unwrap_or_default()
                )
            } else {
                s.boundary.reason.clone().unwrap_or_default()
            }
        ),
    );
    if let Some(c) = &r.certificate {
        push(
            &mut out,
            format!(
                "certificate     {} k={} verified={} (iso={:.2e}, zero={:.2e})",
                c.construction, c.k, c.verified, c.residual_iso, c.residual_zero
            ),
        );
    }
    push(
        &mut out,
        format!(
            "tolerances      zero={:.3e} eps_v={:.3e} eps_z={:.3e}",
            r.tolerances.zero_tol, r.tolerances.certificate_eps_v, r.tolerances.certificate_eps_z
        ),
    );
    out
}
