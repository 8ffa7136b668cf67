//! `zdi` — zero-dilation index toolkit.
//!
//! Subcommands: `compute` (general angle sweep), `range` (rank-k numerical
//! range polygon + SVG/CSV export), `analyze` (fast paths, structural
//! guarantees, certificates), `certify` (verified isometry certificates),
//! `oracle` (dense-grid reference value). Exit codes: 0 ok, 1 parse /
//! validation / numeric errors, 2 failed certificate search.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use zdi_cli::io::{
    parse_matrix, verify_class_hint, CertificateDocument, CliError, MatrixDocument,
};
use zdi_cli::report::{
    analyze, render_analysis_text, timestamp_now, ConfigInfo, IndexReport, MatrixInfo,
};
use zdi_cli::{polygon_csv, svg};
use zdi_core::certify::{
    construct_diagonal_normal, construct_hermitian, construct_search, default_eps_v,
    default_eps_z, verify, IsometryCertificate, SearchConfig,
};
use zdi_core::frame::Frame;
use zdi_core::special::normal_eig;
use zdi_core::sweep::{zdi_bruteforce_oracle, zdi_general};
use zdi_core::{Matrix64, SweepConfig64};

#[derive(Parser)]
#[command(name = "zdi", version, about = "Zero-dilation index of complex matrices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Input matrix JSON file.
    path: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Angle-sweep grid size N.
    #[arg(long, default_value_t = 720)]
    grid: usize,
    /// Absolute zero tolerance τ (default: 1e-8·max(1, ‖A‖_F)).
    #[arg(long)]
    tol: Option<f64>,
    /// Omit the timestamp field from reports.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute d(A) by the general angle sweep.
    Compute {
        #[command(flatten)]
        common: Common,
    },
    /// Outer-approximate the rank-k numerical range by supporting half-planes.
    Range {
        #[command(flatten)]
        common: Common,
        /// Rank k of the range.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Number of support directions.
        #[arg(long, default_value_t = 720)]
        points: usize,
        /// Write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the CSV export (theta,support then vertex block) to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Full analysis: fast paths, structural guarantees, certificates.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Construct a verified isometry certificate exhibiting a 0_k compression.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Target k (default: the computed d(A)).
        #[arg(long)]
        k: Option<usize>,
        /// Seed for the multi-start search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reference d(A) by count minimization on a dense grid, no refinement.
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Dense grid size (default: 7200·n).
        #[arg(long)]
        dense: Option<usize>,
    },
}

fn init_threads() {
    if let Ok(v) = std::env::var("ZDI_THREADS") {
        if let Ok(t) = v.trim().parse::<usize>() {
            if t > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zdi: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(common: &Common) -> Result<(MatrixDocument, Matrix64, SweepConfig64), CliError> {
    let text = std::fs::read_to_string(&common.path)?;
    let doc = parse_matrix(&text)?;
    let a = doc.to_matrix()?;
    if let Some(hint) = doc.class_hint() {
        verify_class_hint(&a, hint)?;
    }
    let mut cfg = SweepConfig64::default().with_grid(common.grid);
    if let Some(t) = common.tol {
        if !(t >= 0.0) {
            return Err(CliError::Validation("--tol must be nonnegative".into()));
        }
        cfg = cfg.with_zero_tol(t);
    }
    Ok((doc, a, cfg))
}

fn emit<R: Serialize>(format: Format, report: &R, text: String) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("report serializes")
            );
        }
        Format::Text => print!("{text}"),
    }
}

#[derive(Serialize)]
struct ComputeReport {
    matrix: MatrixInfo,
    config: ConfigInfo,
    zdi: IndexReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn cmd_compute(common: Common) -> Result<(), CliError> {
    let (doc, a, cfg) = load(&common)?;
    let r = zdi_general(&a, &cfg)?;
    let report = ComputeReport {
        matrix: MatrixInfo::new(&doc),
        config: ConfigInfo::new(&cfg, &a, None),
        zdi: IndexReport::new(&r),
        timestamp: timestamp_now(!common.no_timestamp),
    };
    let text = format!(
        "d = {}\ntheta_witness = {:.12}\nmethod = {}\n",
        r.d, r.theta_witness, r.method.name()
    );
    emit(common.format, &report, text);
    Ok(())
}

#[derive(Serialize)]
struct RangeReport {
    matrix: MatrixInfo,
    k: usize,
    points: usize,
    empty: bool,
    vertex_count: usize,
    area: f64,
    diameter: f64,
    vertices: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    csv_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn cmd_range(
    common: Common,
    k: usize,
    points: usize,
    svg_path: Option<PathBuf>,
    csv_path: Option<PathBuf>,
) -> Result<(), CliError> {
    let (doc, a, _cfg) = load(&common)?;
    if k == 0 || k > a.dim() {
        return Err(CliError::Validation(format!(
            "--k must be in 1..={}",
            a.dim()
        )));
    }
    let poly = zdi_core::range::range_polygon(&a, k, points)?;
    if let Some(p) = &svg_path {
        let title = format!(
            "rank-{k} numerical range{}",
            doc.name().map(|s| format!(" of {s}")).unwrap_or_default()
        );
        std::fs::write(p, svg::render_polygon(&poly.vertices, &title))?;
    }
    if let Some(p) = &csv_path {
        std::fs::write(p, polygon_csv(&poly))?;
    }
    let report = RangeReport {
        matrix: MatrixInfo::new(&doc),
        k,
        points,
        empty: poly.empty,
        vertex_count: poly.vertices.len(),
        area: poly.area(),
        diameter: poly.diameter(),
        vertices: poly.vertices.iter().map(|v| [v.re, v.im]).collect(),
        svg_path: svg_path.as_deref().map(path_str),
        csv_path: csv_path.as_deref().map(path_str),
        timestamp: timestamp_now(!common.no_timestamp),
    };
    let text = format!(
        "k = {}\nempty = {}\nvertices = {}\narea = {:.6}\ndiameter = {:.6}\n",
        k,
        poly.empty,
        poly.vertices.len(),
        poly.area(),
        poly.diameter()
    );
    emit(common.format, &report, text);
    Ok(())
}

fn path_str(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn cmd_analyze(common: Common) -> Result<(), CliError> {
    let (doc, a, cfg) = load(&common)?;
    let report = analyze(&doc, &a, &cfg, !common.no_timestamp)?;
    let text = render_analysis_text(&report);
    emit(common.format, &report, text);
    Ok(())
}

#[derive(Serialize)]
struct CertifyReport {
    matrix: MatrixInfo,
    k_target: usize,
    construction: String,
    verified: bool,
    residual_iso: f64,
    residual_zero: f64,
    certificate: CertificateDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn cmd_certify(common: Common, k: Option<usize>, seed: u64) -> Result<(), CliError> {
    let (doc, a, cfg) = load(&common)?;
    let tau = cfg.resolve_zero_tol(&a);
    let k_target = match k {
        Some(k) => k,
        None => zdi_general(&a, &cfg)?.d,
    };
    if k_target > a.dim() {
        return Err(CliError::Validation(format!(
            "--k must be at most n = {}",
            a.dim()
        )));
    }

    let (cert, construction) = if k_target == 0 {
        (
            zdi_core::certify::certificate_for(&a, Frame::empty(a.dim())),
            "empty".to_owned(),
        )
    } else if a.is_hermitian(1e-8) {
        let full = construct_hermitian(&a, tau)?;
        match truncate_certificate(&a, full, k_target) {
            Some(c) => (c, "hermitian-pairs".to_owned()),
            None => (search(&a, k_target, seed)?, "search".to_owned()),
        }
    } else if a.is_normal(1e-8) {
        let (spec, basis) = normal_eig(&a, tau)?;
        let nc = construct_diagonal_normal(&spec, &basis);
        match truncate_certificate(&a, nc.certificate, k_target) {
            Some(c) => (c, "normal-greedy".to_owned()),
            None => (search(&a, k_target, seed)?, "search".to_owned()),
        }
    } else {
        (search(&a, k_target, seed)?, "search".to_owned())
    };

    let (ok, riso, rzero) = verify(&a, &cert.v, default_eps_v(), default_eps_z())?;
    let report = CertifyReport {
        matrix: MatrixInfo::new(&doc),
        k_target,
        construction: construction.clone(),
        verified: ok,
        residual_iso: riso,
        residual_zero: rzero,
        certificate: CertificateDocument::from_certificate(
            &cert,
            doc.name().map(str::to_owned),
            Some(seed),
        ),
        timestamp: timestamp_now(!common.no_timestamp),
    };
    let text = format!(
        "k = {}\nconstruction = {}\nverified = {}\nresidual_iso = {:.3e}\nresidual_zero = {:.3e}\n",
        cert.k, construction, ok, riso, rzero
    );
    emit(common.format, &report, text);
    Ok(())
}

/// Keep the first k columns of a constructive certificate (all prefixes stay
/// isotropic and orthonormal); `None` when the construction fell short.
fn truncate_certificate(
    a: &Matrix64,
    cert: IsometryCertificate<f64>,
    k_target: usize,
) -> Option<IsometryCertificate<f64>> {
    if cert.k < k_target {
        return None;
    }
    let cols = cert.v.columns()[..k_target].to_vec();
    let v = Frame::from_columns(a.dim(), cols).ok()?;
    Some(zdi_core::certify::certificate_for(a, v))
}

fn search(a: &Matrix64, k_target: usize, seed: u64) -> Result<IsometryCertificate<f64>, CliError> {
    let cfg = SearchConfig::<f64>::default();
    construct_search(a, k_target, &cfg, seed).map_err(CliError::Core)
}

#[derive(Serialize)]
struct OracleReport {
    matrix: MatrixInfo,
    dense_n: usize,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn cmd_oracle(common: Common, dense: Option<usize>) -> Result<(), CliError> {
    let (doc, a, _cfg) = load(&common)?;
    let dense_n = dense.unwrap_or(7200 * a.dim());
    let d = zdi_bruteforce_oracle(&a, dense_n);
    let report = OracleReport {
        matrix: MatrixInfo::new(&doc),
        dense_n,
        d,
        timestamp: timestamp_now(!common.no_timestamp),
    };
    emit(
        common.format,
        &report,
        format!("d = {d}\ndense_n = {dense_n}\n"),
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Compute { common } => cmd_compute(common),
        Cmd::Range {
            common,
            k,
            points,
            svg,
            csv,
        } => cmd_range(common, k, points, svg, csv),
        Cmd::Analyze { common } => cmd_analyze(common),
        Cmd::Certify { common, k, seed } => cmd_certify(common, k, seed),
        Cmd::Oracle { common, dense } => cmd_oracle(common, dense),
    }
}
