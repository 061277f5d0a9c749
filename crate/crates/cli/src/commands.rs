use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use gdis_core::{
    convert_ordering, convert_vector_ordering, disentangle, is_orthosymplectic, linalg::asymmetry,
    ortho_diagonalize, ppt_test, quantum_condition_check, random_covariance,
    symplectic_eigenvalues, symplectic_polar, werner_wolf_check, williamson_with_tol, CheckReport,
    CovarianceMatrix, Error, GaussianState, Matrix, ModePartition, Ordering, PptReport, PptVerdict,
    SeparabilityWitness, Vector, DEFAULT_TOL,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::document::{
    from_rows, render_text, to_rows, to_vec, CheckJson, DisentangleReport, InputDocument,
    MatrixDocument, OrderingTag, PolarReport, PptCommandReport, PptJson, ReportHeader,
    ValidateReport, WilliamsonReport, INGEST_SYMMETRY_TOL, INGEST_SYMMETRY_WARN,
};
use crate::{EXIT_FAIL, EXIT_INTERNAL, EXIT_MALFORMED, EXIT_OK};

/// Margins re-derived from a serialized report must match to this precision.
const REVERIFY_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "gdis",
    version,
    about = "Disentangle Gaussian states by symplectic rotations"
)]
pub struct Cli {
    /// Relative tolerance for every verification gate.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Machine-readable JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Human-readable report (default).
    #[arg(long, global = true)]
    pub text: bool,
    /// Override the document's hbar (warns when they differ).
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the quantum condition and report the symplectic spectrum.
    Validate { files: Vec<PathBuf> },
    /// Construct the disentangling rotation and its separability witness.
    Disentangle { files: Vec<PathBuf> },
    /// Partial-transpose entanglement test.
    Ppt { files: Vec<PathBuf> },
    /// Williamson normal form.
    Williamson { files: Vec<PathBuf> },
    /// Symplectic polar decomposition of a matrix document `{"S": [[...]]}`.
    Polar { file: Option<PathBuf> },
    /// Write a random valid covariance document.
    Random {
        #[arg(long = "nA")]
        n_a: usize,
        #[arg(long = "nB")]
        n_b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest single-mode squeezing parameter.
        #[arg(long, default_value_t = 1.0)]
        squeeze: f64,
        /// Symplectic eigenvalues are drawn from [hbar/2, hbar/2 (1 + mix)].
        #[arg(long, default_value_t = 1.0)]
        mix: f64,
    },
    /// Re-express a covariance document in another variable ordering.
    Convert {
        #[arg(long, value_enum)]
        to: OrderingArg,
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum OrderingArg {
    Interleaved,
    Blocked,
}

impl From<OrderingArg> for OrderingTag {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Interleaved => OrderingTag::Interleaved,
            OrderingArg::Blocked => OrderingTag::Blocked,
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Per-input result before rendering.
struct FileOutcome {
    code: i32,
    report: Option<serde_json::Value>,
    diagnostics: Vec<String>,
}

impl FileOutcome {
    fn failed(code: i32, message: impl Into<String>) -> Self {
        FileOutcome {
            code,
            report: None,
            diagnostics: vec![message.into()],
        }
    }
}

#[derive(Clone, Copy)]
struct Settings {
    tol: f64,
    hbar: Option<f64>,
}

pub fn run(cli: Cli, stdin: &mut dyn Read) -> Outcome {
    let settings = Settings {
        tol: cli.tol,
        hbar: cli.hbar,
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Outcome {
            code: EXIT_MALFORMED,
            stderr: format!("error: --tol must be positive, got {}\n", cli.tol),
            ..Outcome::default()
        };
    }
    let json = cli.json;
    match cli.command {
        Command::Validate { files } => batch(files, stdin, json, move |b| validate(b, settings)),
        Command::Disentangle { files } => {
            batch(files, stdin, json, move |b| disentangle_cmd(b, settings))
        }
        Command::Ppt { files } => batch(files, stdin, json, move |b| ppt_cmd(b, settings)),
        Command::Williamson { files } => {
            batch(files, stdin, json, move |b| williamson_cmd(b, settings))
        }
        Command::Polar { file } => batch(file.into_iter().collect(), stdin, json, move |b| {
            polar_cmd(b, settings)
        }),
        Command::Random {
            n_a,
            n_b,
            seed,
            squeeze,
            mix,
        } => random_cmd(n_a, n_b, seed, squeeze, mix, settings.hbar.unwrap_or(1.0)),
        Command::Convert { to, file } => {
            let bytes = match read_input(file.as_ref(), stdin) {
                Ok(b) => b,
                Err(e) => return malformed(e),
            };
            convert_cmd(&bytes, to.into())
        }
    }
}

fn malformed(message: String) -> Outcome {
    Outcome {
        code: EXIT_MALFORMED,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Vec<u8>, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
        }
        _ => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(buf)
        }
    }
}

/// Runs `job` on every input (concurrently when there are several) and
/// renders the per-file reports in input order.
fn batch<F>(files: Vec<PathBuf>, stdin: &mut dyn Read, json: bool, job: F) -> Outcome
where
    F: Fn(&[u8]) -> FileOutcome + Sync,
{
    let files = if files.is_empty() {
        vec![PathBuf::from("-")]
    } else {
        files
    };
    let mut inputs = Vec::with_capacity(files.len());
    for f in &files {
        inputs.push(read_input(Some(f), stdin));
    }
    let outcomes: Vec<FileOutcome> = if inputs.len() == 1 {
        vec![run_one(&inputs[0], &job)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = inputs
                .iter()
                .map(|input| scope.spawn(|| run_one(input, &job)))
                .collect();
            handles
                .into_iter()
                .map(|h| {
                    h.join()
                        .unwrap_or_else(|_| FileOutcome::failed(EXIT_INTERNAL, "worker panicked"))
                })
                .collect()
        })
    };

    let mut out = Outcome::default();
    let multi = files.len() > 1;
    let mut reports = Vec::new();
    for (file, outcome) in files.iter().zip(outcomes) {
        out.code = out.code.max(outcome.code);
        for d in &outcome.diagnostics {
            if multi {
                out.stderr.push_str(&format!("{}: {d}\n", file.display()));
            } else {
                out.stderr.push_str(&format!("{d}\n"));
            }
        }
        if let Some(report) = outcome.report {
            if json {
                reports.push(report);
            } else {
                if multi {
                    out.stdout.push_str(&format!("== {} ==\n", file.display()));
                }
                out.stdout.push_str(&render_text(&report));
            }
        }
    }
    if json && !reports.is_empty() {
        let value = if multi {
            serde_json::Value::Array(reports)
        } else {
            reports.pop().unwrap()
        };
        out.stdout = serde_json::to_string_pretty(&value).expect("reports serialize") + "\n";
    }
    out
}

fn run_one<F: Fn(&[u8]) -> FileOutcome>(input: &Result<Vec<u8>, String>, job: &F) -> FileOutcome {
    match input {
        Ok(bytes) => job(bytes),
        Err(e) => FileOutcome::failed(EXIT_MALFORMED, format!("error: {e}")),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::QuantumConditionViolated { .. }
        | Error::NotPositiveDefinite
        | Error::NotSymplectic { .. } => EXIT_FAIL,
        Error::Verification { .. }
        | Error::Canonicalization(_)
        | Error::Pairing(_)
        | Error::NotOrthosymplectic { .. } => EXIT_INTERNAL,
        Error::InvalidPartition { .. }
        | Error::BadShape { .. }
        | Error::DimensionMismatch { .. }
        | Error::NotSymmetric { .. }
        | Error::HbarMismatch { .. }
        | Error::InvalidParameter(_)
        | Error::NonFinite => EXIT_MALFORMED,
    }
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn header(command: &str, bytes: &[u8], tol: f64) -> ReportHeader {
    ReportHeader {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        input_digest: format!("sha256:{}", digest(bytes)),
        tolerance: tol,
    }
}

fn to_value<T: Serialize>(report: &T) -> serde_json::Value {
    serde_json::to_value(report).expect("reports serialize")
}

struct Ingested {
    cov: CovarianceMatrix,
    mean: Vector,
    warnings: Vec<String>,
}

/// Parses and validates a covariance document. Schema problems map to exit
/// code 2; a matrix that is not positive definite maps to exit code 1.
fn ingest(bytes: &[u8], settings: Settings) -> Result<Ingested, FileOutcome> {
    let doc: InputDocument = serde_json::from_slice(bytes).map_err(|e| {
        FileOutcome::failed(EXIT_MALFORMED, format!("error: malformed document: {e}"))
    })?;
    let mut warnings = Vec::new();
    let partition = doc.partition().ok_or_else(|| {
        FileOutcome::failed(EXIT_MALFORMED, "error: n_A and n_B must both be at least 1")
    })?;
    let sigma = from_rows(&doc.sigma).ok_or_else(|| {
        FileOutcome::failed(
            EXIT_MALFORMED,
            "error: sigma must be a non-empty rectangular array",
        )
    })?;
    if sigma.nrows() != partition.dim() || sigma.ncols() != partition.dim() {
        return Err(FileOutcome::failed(
            EXIT_MALFORMED,
            format!(
                "error: sigma is {}x{} but 2(n_A + n_B) = {}",
                sigma.nrows(),
                sigma.ncols(),
                partition.dim()
            ),
        ));
    }
    let mut hbar = doc.hbar;
    if let Some(flag) = settings.hbar {
        if flag != doc.hbar {
            warnings.push(format!(
                "warning: --hbar {flag} overrides the document's hbar = {}",
                doc.hbar
            ));
        }
        hbar = flag;
    }
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(FileOutcome::failed(
            EXIT_MALFORMED,
            format!("error: hbar must be positive, got {hbar}"),
        ));
    }
    let asym = asymmetry(&sigma);
    if asym > INGEST_SYMMETRY_TOL {
        return Err(FileOutcome::failed(
            EXIT_MALFORMED,
            format!("error: sigma is not symmetric (relative asymmetry {asym:e})"),
        ));
    }
    if asym > INGEST_SYMMETRY_WARN {
        warnings.push(format!(
            "warning: sigma symmetrized (relative asymmetry {asym:e})"
        ));
    }
    let ordering: Ordering = doc.ordering.into();
    let cov = CovarianceMatrix::with_ordering(sigma, hbar, partition, ordering).map_err(|e| {
        let mut out = FileOutcome::failed(exit_code(&e), format!("error: {e}"));
        out.diagnostics.splice(0..0, warnings.iter().cloned());
        out
    })?;
    let mean = match &doc.mean {
        None => Vector::zeros(partition.dim()),
        Some(m) if m.len() == partition.dim() => {
            convert_vector_ordering(&Vector::from_row_slice(m), ordering, Ordering::Interleaved)
                .expect("even length checked")
        }
        Some(m) => {
            return Err(FileOutcome::failed(
                EXIT_MALFORMED,
                format!(
                    "error: mean has length {}, expected {}",
                    m.len(),
                    partition.dim()
                ),
            ))
        }
    };
    Ok(Ingested {
        cov,
        mean,
        warnings,
    })
}

fn with_warnings(mut outcome: FileOutcome, warnings: Vec<String>) -> FileOutcome {
    outcome.diagnostics.splice(0..0, warnings);
    outcome
}

fn validate(bytes: &[u8], settings: Settings) -> FileOutcome {
    let Ingested {
        cov,
        mean,
        warnings,
    } = match ingest(bytes, settings) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let check = quantum_condition_check(&cov, settings.tol);
    let nu = match symplectic_eigenvalues(&cov) {
        Ok(nu) => nu,
        Err(e) => {
            return with_warnings(
                FileOutcome::failed(exit_code(&e), format!("error: {e}")),
                warnings,
            )
        }
    };
    let purity = if check.pass {
        GaussianState::new(cov.clone(), mean)
            .ok()
            .map(|s| s.purity())
    } else {
        None
    };
    let p = cov.partition();
    let report = ValidateReport {
        header: header("validate", bytes, settings.tol),
        hbar: cov.hbar(),
        n_a: p.n_a(),
        n_b: p.n_b(),
        verdict: if check.pass {
            "quantum state"
        } else {
            "violates the quantum condition"
        }
        .into(),
        quantum_condition: CheckJson::from(&check),
        symplectic_eigenvalues: nu,
        purity,
    };
    FileOutcome {
        code: if check.pass { EXIT_OK } else { EXIT_FAIL },
        report: Some(to_value(&report)),
        diagnostics: warnings,
    }
}

fn ppt_json(report: &PptReport) -> PptJson {
    PptJson {
        verdict: report.verdict.to_string(),
        entangled: report.verdict == PptVerdict::Entangled,
        min_symplectic_eigenvalue: report.min_nu,
        check: CheckJson::from(&report.check),
    }
}

fn ppt_cmd(bytes: &[u8], settings: Settings) -> FileOutcome {
    let Ingested { cov, warnings, .. } = match ingest(bytes, settings) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let report = ppt_test(&cov, settings.tol);
    let p = cov.partition();
    let doc = PptCommandReport {
        header: header("ppt", bytes, settings.tol),
        hbar: cov.hbar(),
        n_a: p.n_a(),
        n_b: p.n_b(),
        ppt: ppt_json(&report),
    };
    FileOutcome {
        code: if report.check.pass {
            EXIT_OK
        } else {
            EXIT_FAIL
        },
        report: Some(to_value(&doc)),
        diagnostics: warnings,
    }
}

fn reorder(m: &Matrix, to: Ordering) -> Matrix {
    convert_ordering(m, Ordering::Interleaved, to)
        .expect("phase-space matrices have even dimension")
}

fn williamson_cmd(bytes: &[u8], settings: Settings) -> FileOutcome {
    let Ingested { cov, warnings, .. } = match ingest(bytes, settings) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let form = match williamson_with_tol(&cov, settings.tol) {
        Ok(f) => f,
        Err(e) => {
            return with_warnings(
                FileOutcome::failed(exit_code(&e), format!("error: {e}")),
                warnings,
            )
        }
    };
    let ordering = cov.source_ordering();
    let report = WilliamsonReport {
        header: header("williamson", bytes, settings.tol),
        hbar: cov.hbar(),
        ordering: ordering.into(),
        symplectic_eigenvalues: form.nu.clone(),
        s: to_rows(&reorder(&form.s, ordering)),
        residuals: [
            ("reconstruction".to_string(), form.reconstruction_residual),
            ("symplectic".to_string(), form.symplectic_residual),
        ]
        .into_iter()
        .collect(),
    };
    FileOutcome {
        code: EXIT_OK,
        report: Some(to_value(&report)),
        diagnostics: warnings,
    }
}

fn polar_cmd(bytes: &[u8], settings: Settings) -> FileOutcome {
    let doc: MatrixDocument = match serde_json::from_slice(bytes) {
        Ok(d) => d,
        Err(e) => {
            return FileOutcome::failed(EXIT_MALFORMED, format!("error: malformed document: {e}"))
        }
    };
    let ordering: Ordering = doc.ordering.into();
    let s = match from_rows(&doc.s).map(|m| convert_ordering(&m, ordering, Ordering::Interleaved)) {
        Some(Ok(s)) => s,
        Some(Err(e)) => return FileOutcome::failed(EXIT_MALFORMED, format!("error: {e}")),
        None => {
            return FileOutcome::failed(
                EXIT_MALFORMED,
                "error: S must be a non-empty rectangular array",
            )
        }
    };
    let result = symplectic_polar(&s, settings.tol)
        .and_then(|polar| ortho_diagonalize(&polar.p, settings.tol).map(|rot| (polar, rot)));
    let (polar, rot) = match result {
        Ok(r) => r,
        Err(e) => return FileOutcome::failed(exit_code(&e), format!("error: {e}")),
    };
    let mut residuals: std::collections::BTreeMap<String, f64> =
        polar.residuals.iter().cloned().collect();
    residuals.extend(
        rot.residuals
            .iter()
            .map(|(k, v)| (format!("rotation_{k}"), *v)),
    );
    let report = PolarReport {
        header: header("polar", bytes, settings.tol),
        ordering: ordering.into(),
        p: to_rows(&reorder(&polar.p, ordering)),
        r: to_rows(&reorder(&polar.r, ordering)),
        u: to_rows(&reorder(&rot.u, ordering)),
        lambdas: rot.lambdas.clone(),
        residuals,
    };
    FileOutcome {
        code: EXIT_OK,
        report: Some(to_value(&report)),
        diagnostics: Vec::new(),
    }
}

fn disentangle_cmd(bytes: &[u8], settings: Settings) -> FileOutcome {
    let Ingested { cov, warnings, .. } = match ingest(bytes, settings) {
        Ok(i) => i,
        Err(e) => return e,
    };
    let result = match disentangle(&cov, settings.tol) {
        Ok(r) => r,
        Err(e) => {
            return with_warnings(
                FileOutcome::failed(exit_code(&e), format!("error: {e}")),
                warnings,
            )
        }
    };
    let p = cov.partition();
    let ordering = cov.source_ordering();
    let report = DisentangleReport {
        header: header("disentangle", bytes, settings.tol),
        hbar: cov.hbar(),
        n_a: p.n_a(),
        n_b: p.n_b(),
        ordering: ordering.into(),
        verdict: "separable after rotation".into(),
        quantum_condition: CheckJson::from(&result.quantum),
        symplectic_eigenvalues: result.nu().to_vec(),
        lambdas: result.lambdas.clone(),
        s: to_rows(&reorder(result.admissible.s(), ordering)),
        p: to_rows(&reorder(&result.polar.p, ordering)),
        r: to_rows(&reorder(&result.polar.r, ordering)),
        u: to_rows(&reorder(&result.u, ordering)),
        sigma_u: to_rows(&result.sigma_u.sigma_in(ordering)),
        sigma_a: to_rows(&reorder(&result.witness.sigma_a, ordering)),
        sigma_b: to_rows(&reorder(&result.witness.sigma_b, ordering)),
        werner_wolf: CheckJson::from(&result.werner_wolf),
        ppt_input: ppt_json(&ppt_test(&cov, settings.tol)),
        ppt_rotated: ppt_json(&ppt_test(&result.sigma_u, settings.tol)),
        residuals: result.residuals.iter().cloned().collect(),
    };

    // re-verify exactly what will be written
    let text = serde_json::to_string(&report).expect("reports serialize");
    let parsed: DisentangleReport = serde_json::from_str(&text).expect("reports parse back");
    let mut diagnostics = warnings;
    let code = match reverify_disentangle_report(&parsed) {
        Ok(check)
            if check.pass && (check.margin - report.werner_wolf.margin).abs() <= REVERIFY_TOL =>
        {
            EXIT_OK
        }
        Ok(check) => {
            diagnostics.push(format!(
                "error: serialized witness does not re-verify (margin {} vs stored {})",
                check.margin, report.werner_wolf.margin
            ));
            EXIT_INTERNAL
        }
        Err(e) => {
            diagnostics.push(format!("error: serialized report does not re-verify: {e}"));
            EXIT_INTERNAL
        }
    };
    FileOutcome {
        code,
        report: Some(to_value(&report)),
        diagnostics,
    }
}

/// Rebuilds `(Σ_U, Σ_A, Σ_B)` and `U` from a parsed report, checks `U` is a
/// symplectic rotation, and re-runs the Werner-Wolf check at the report's
/// tolerance.
pub fn reverify_disentangle_report(report: &DisentangleReport) -> Result<CheckReport, Error> {
    let partition = ModePartition::new(report.n_a, report.n_b)?;
    let ordering: Ordering = report.ordering.into();
    let tol = report.header.tolerance;
    let matrix = |rows: &[Vec<f64>]| {
        from_rows(rows)
            .ok_or(Error::InvalidParameter("ragged matrix in report".into()))
            .and_then(|m| convert_ordering(&m, ordering, Ordering::Interleaved))
    };
    let u = matrix(&report.u)?;
    let rotation = is_orthosymplectic(&u, tol);
    if !rotation.pass {
        return Err(Error::NotOrthosymplectic {
            residual: -rotation.margin,
        });
    }
    let sigma_u = CovarianceMatrix::new(matrix(&report.sigma_u)?, report.hbar, partition)?;
    let witness = SeparabilityWitness {
        sigma_a: matrix(&report.sigma_a)?,
        sigma_b: matrix(&report.sigma_b)?,
        hbar: report.hbar,
    };
    werner_wolf_check(&sigma_u, &witness, tol)
}

fn random_cmd(n_a: usize, n_b: usize, seed: u64, squeeze: f64, mix: f64, hbar: f64) -> Outcome {
    let partition = match ModePartition::new(n_a, n_b) {
        Ok(p) => p,
        Err(e) => return malformed(e.to_string()),
    };
    if !(hbar.is_finite() && hbar > 0.0) {
        return malformed(format!("hbar must be positive, got {hbar}"));
    }
    let cov = match random_covariance(partition, hbar, seed, squeeze, mix) {
        Ok(c) => c,
        Err(e) => return malformed(e.to_string()),
    };
    let doc = InputDocument {
        hbar,
        ordering: OrderingTag::Interleaved,
        n_a,
        n_b,
        sigma: to_rows(cov.sigma()),
        mean: None,
    };
    Outcome {
        code: EXIT_OK,
        stdout: serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n",
        stderr: String::new(),
    }
}

fn convert_cmd(bytes: &[u8], to: OrderingTag) -> Outcome {
    let mut doc: InputDocument = match serde_json::from_slice(bytes) {
        Ok(d) => d,
        Err(e) => return malformed(format!("malformed document: {e}")),
    };
    let Some(partition) = doc.partition() else {
        return malformed("n_A and n_B must both be at least 1".into());
    };
    let sigma = match from_rows(&doc.sigma) {
        Some(m) if m.nrows() == partition.dim() && m.ncols() == partition.dim() => m,
        _ => return malformed(format!("sigma must be {0}x{0}", partition.dim())),
    };
    let (from, target): (Ordering, Ordering) = (doc.ordering.into(), to.into());
    doc.sigma = to_rows(&convert_ordering(&sigma, from, target).expect("checked shape"));
    if let Some(mean) = &doc.mean {
        if mean.len() != partition.dim() {
            return malformed(format!(
                "mean has length {}, expected {}",
                mean.len(),
                partition.dim()
            ));
        }
        let v = convert_vector_ordering(&Vector::from_row_slice(mean), from, target)
            .expect("checked length");
        doc.mean = Some(to_vec(&v));
    }
    doc.ordering = to;
    Outcome {
        code: EXIT_OK,
        stdout: serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n",
        stderr: String::new(),
    }
}
