//! Matrix and certificate JSON documents.
//!
//! Matrices travel as `{"n": 2, "entries": [[[re, im], ...], ...]}` with an
//! optional metadata block carrying a name and a class hint. Hints are
//! verified before any fast path dispatches on them; a wrong hint is an
//! error, never a silent fallback.

use serde::{Deserialize, Serialize};
use zdi_core::frame::Frame;
use zdi_core::{Matrix64, ZdiError};

/// Errors surfaced by the CLI layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] ZdiError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 2 for a failed certificate search, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(ZdiError::SearchFailed { .. }) => 2,
            _ => 1,
        }
    }
}

/// Structural class hint carried by a matrix document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassHint {
    General,
    Hermitian,
    Normal,
    WeightedPermutation,
}

impl ClassHint {
    pub fn name(&self) -> &'static str {
        match self {
            ClassHint::General => "general",
            ClassHint::Hermitian => "hermitian",
            ClassHint::Normal => "normal",
            ClassHint::WeightedPermutation => "weighted-permutation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassHint>,
}

/// The on-disk matrix format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    /// Row-major nested [re, im] pairs.
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &Matrix64, metadata: Option<Metadata>) -> Self {
        let n = m.dim();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            n,
            entries,
            metadata,
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix64, CliError> {
        let rows: Vec<Vec<(f64, f64)>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|&[re, im]| (re, im)).collect())
            .collect();
        Matrix64::from_rows(&rows).map_err(|e| match e {
            ZdiError::InvalidDimension { .. } | ZdiError::NonFinite { .. } => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Core(other),
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref().and_then(|m| m.name.as_deref())
    }

    pub fn class_hint(&self) -> Option<ClassHint> {
        self.metadata.as_ref().and_then(|m| m.class)
    }
}

/// Parse and validate a matrix document from JSON text.
pub fn parse_matrix(text: &str) -> Result<MatrixDocument, CliError> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if doc.n == 0 {
        return Err(CliError::Validation("n must be at least 1".into()));
    }
    if doc.entries.len() != doc.n || doc.entries.iter().any(|r| r.len() != doc.n) {
        return Err(CliError::Validation(format!(
            "entries shape does not match n = {}",
            doc.n
        )));
    }
    for (i, row) in doc.entries.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::Validation(format!(
                    "non-finite entry at ({i}, {j})"
                )));
            }
        }
    }
    Ok(doc)
}

/// Serialize a document; `parse(serialize(m)) == m` bit-exactly.
pub fn serialize_matrix(doc: &MatrixDocument) -> String {
    serde_json::to_string_pretty(doc).expect("matrix document serializes")
}

/// Verify a class hint against the matrix; wrong hints are validation errors.
pub fn verify_class_hint(a: &Matrix64, hint: ClassHint) -> Result<(), CliError> {
    let tol = 1e-8;
    let ok = match hint {
        ClassHint::General => true,
        ClassHint::Hermitian => a.is_hermitian(tol),
        ClassHint::Normal => a.is_normal(tol),
        ClassHint::WeightedPermutation => is_weighted_permutation(a, tol),
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "class hint '{}' failed verification",
            hint.name()
        )))
    }
}

/// Row/column nonzero-count check (1-cycles allowed here; they only rule out
/// the closed-form fast path, not membership in the class).
pub fn is_weighted_permutation(a: &Matrix64, rel_tol: f64) -> bool {
    let n = a.dim();
    let tau = rel_tol * 1f64.max(a.frobenius_norm());
    for i in 0..n {
        if (0..n).filter(|&j| a[(i, j)].norm() > tau).count() > 1 {
            return false;
        }
        if (0..n).filter(|&j| a[(j, i)].norm() > tau).count() > 1 {
            return false;
        }
    }
    true
}

/// Serializable isometry certificate: the n×k matrix V column by column,
/// with residuals, for external re-verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub n: usize,
    pub k: usize,
    /// Columns of V as n-vectors of [re, im] pairs.
    pub columns: Vec<Vec<[f64; 2]>>,
    pub residual_iso: f64,
    pub residual_zero: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CertificateDocument {
    pub fn from_certificate(
        cert: &zdi_core::certify::IsometryCertificate<f64>,
        matrix_name: Option<String>,
        seed: Option<u64>,
    ) -> Self {
        let columns = cert
            .v
            .columns()
            .iter()
            .map(|col| col.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            n: cert.v.rows(),
            k: cert.k,
            columns,
            residual_iso: cert.residual_iso,
            residual_zero: cert.residual_zero,
            matrix_name,
            seed,
        }
    }

    pub fn to_frame(&self) -> Result<Frame<f64>, CliError> {
        let cols = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|&[re, im]| num_complex::Complex::new(re, im))
                    .collect()
            })
            .collect();
        Frame::from_columns(self.n, cols).map_err(CliError::Core)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_jordan_block() {
        let doc = parse_matrix(r#"{"n":2,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#).unwrap();
        let m = doc.to_matrix().unwrap();
        assert_eq!(m[(0, 1)].re, 1.0);
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn shape_mismatch_is_validation_error() {
        let res = parse_matrix(r#"{"n":3,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#);
        assert!(matches!(res, Err(CliError::Validation(_))));
    }

    #[test]
    fn bad_entry_is_parse_error() {
        let res = parse_matrix(r#"{"n":1,"entries":[[[1, "x"]]]}"#);
        assert!(matches!(res, Err(CliError::Parse(_))));
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let text = serialize_matrix(&MatrixDocument {
            n: 2,
            entries: vec![
                vec![[0.1 + 0.2, -0.0], [1.0 / 3.0, 2e-308]],
                vec![[-1.5e300, 0.0], [f64::MIN_POSITIVE, 1.0]],
            ],
            metadata: Some(Metadata {
                name: Some("fixture".into()),
                class: Some(ClassHint::General),
            }),
        });
        let doc = parse_matrix(&text).unwrap();
        assert_eq!(serialize_matrix(&doc), text);
    }

    #[test]
    fn hint_verification() {
        let herm = Matrix64::diagonal_real(&[1.0, -1.0]);
        assert!(verify_class_hint(&herm, ClassHint::Hermitian).is_ok());
        let mut jd = Matrix64::zeros(2);
        jd[(0, 1)] = num_complex::Complex::new(1.0, 0.0);
        assert!(verify_class_hint(&jd, ClassHint::Hermitian).is_err());
        assert!(verify_class_hint(&jd, ClassHint::WeightedPermutation).is_ok());
        assert!(verify_class_hint(&jd, ClassHint::Normal).is_err());
    }
}
