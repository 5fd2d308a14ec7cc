//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input (including a
//! certificate that fails verification), 3 search budget exhausted or
//! method inconclusive.

mod codec;
pub mod matfile;
pub mod report;
pub mod serde_bigint;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::concordance::{
    build_slice_certificate, derive_reduced_form, g4_lower_bound_signature, slice_certificate_from_change,
    tau_chain_report, verify_metabolizer, Conclusion, ConcordanceError, DerivedFormCertificate, SliceCertificate,
    TauChainReport,
};
use crate::exactmat::{IntMatrix, IntVector};
use crate::qform::{
    find_primitive_isotropic, symplectic_completion, IsotropicCertificate, IsotropicSearch, NotFoundReason, QformError,
    QuadForm, SearchBudget,
};
use crate::seifert::{Omega, SeifertForm};
use crate::torus::{torus_seifert_matrix, TorusKnotParams};

pub use matfile::{format_matrix, parse_matrix, read_matrix, write_matrix, MatFileError, MatrixFile};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "knotsplit",
    version,
    about = "Exact Seifert-form computations and slice certificates"
)]
struct Cli {
    /// Write the primary artifact (a matrix file, or the report) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest sup-norm tried by the isotropic search.
    #[arg(long, global = true, default_value_t = 8)]
    max_norm: u64,
    /// Wall-clock limit for the isotropic search, in seconds.
    #[arg(long, global = true, default_value_t = 120.0)]
    time_budget: f64,
    /// Also write every matrix of a certificate into this directory.
    #[arg(long, global = true)]
    matrices: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seifert matrix of the torus knot T(p, q).
    Torus { p: u64, q: u64 },
    /// Alexander polynomial, signatures, Arf invariant and genus of V.
    Invariants { seifert: PathBuf },
    /// Tristram-Levine signature at omega ("-1", "i", "-i" or "a/b").
    Signature {
        seifert: PathBuf,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        omega: String,
    },
    /// Primitive isotropic vector of a symmetric form (or of V + V^T).
    Isotropic { form: PathBuf },
    /// Symplectic basis with first row z for a skew form (or for V - V^T).
    Complete { form: PathBuf, vector: PathBuf },
    /// V* = P V P^T with vanishing corner entry.
    Derive { seifert: PathBuf },
    /// Metabolizer for V ⊕ (-V*), from the derived form or a given change.
    CertifySlice {
        seifert: PathBuf,
        #[arg(long)]
        change: Option<PathBuf>,
    },
    /// Checks that M spans a metabolizer of W.
    VerifyMetabolizer { form: PathBuf, metabolizer: PathBuf },
    /// Re-verifies a JSON report written by derive, certify-slice,
    /// paper-chain, isotropic or complete.
    VerifyCertificate { report: PathBuf },
    /// The full tau argument for T(p, q).
    PaperChain { p: u64, q: u64 },
}

/// Failure with its exit code and a one-line message.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl ToString) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }

    fn inconclusive(message: impl ToString) -> Self {
        CliError {
            code: EXIT_INCONCLUSIVE,
            message: message.to_string(),
        }
    }
}

impl From<MatFileError> for CliError {
    fn from(e: MatFileError) -> Self {
        CliError::invalid(e)
    }
}

impl From<ConcordanceError> for CliError {
    fn from(e: ConcordanceError) -> Self {
        match e {
            ConcordanceError::DefiniteForm | ConcordanceError::BudgetExhausted(_) => CliError::inconclusive(e),
            ConcordanceError::Qform(QformError::BudgetExhausted { .. }) => CliError::inconclusive(e),
            other => CliError::invalid(other),
        }
    }
}

/// What a command produced: a report, an optional matrix artifact for
/// `--out`, extra matrices for `--matrices`, and the exit code.
struct Outcome {
    report: Report,
    artifact: Option<IntMatrix>,
    matrices: Vec<(&'static str, IntMatrix)>,
    code: i32,
}

impl Outcome {
    fn new(report: Report) -> Self {
        Outcome {
            report,
            artifact: None,
            matrices: Vec::new(),
            code: EXIT_OK,
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Reports go to stdout, diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("knotsplit: {}", e.message);
            e.code
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let budget = SearchBudget::new(
        cli.max_norm,
        Duration::try_from_secs_f64(cli.time_budget).map_err(|_| CliError {
            code: EXIT_USAGE,
            message: format!("invalid --time-budget {}", cli.time_budget),
        })?,
    )
    .map_err(|e| CliError {
        code: EXIT_USAGE,
        message: e.to_string(),
    })?;
    let outcome = match &cli.command {
        Command::Torus { p, q } => torus(*p, *q)?,
        Command::Invariants { seifert } => invariants(&read_seifert(seifert)?)?,
        Command::Signature { seifert, omega } => signature(&read_seifert(seifert)?, omega)?,
        Command::Isotropic { form } => isotropic(&read_matrix(form)?, &budget)?,
        Command::Complete { form, vector } => complete(&read_matrix(form)?, &read_matrix(vector)?)?,
        Command::Derive { seifert } => derive(&read_seifert(seifert)?, &budget)?,
        Command::CertifySlice { seifert, change } => {
            let change = change.as_ref().map(read_matrix).transpose()?;
            certify_slice(&read_seifert(seifert)?, change.as_ref(), &budget)?
        }
        Command::VerifyMetabolizer { form, metabolizer } => {
            verify_metabolizer_cmd(&read_seifert(form)?, &read_matrix(metabolizer)?)?
        }
        Command::VerifyCertificate { report } => verify_certificate_file(report)?,
        Command::PaperChain { p, q } => paper_chain(*p, *q, &budget)?,
    };
    emit(cli, &outcome)?;
    Ok(outcome.code)
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    if let Some(dir) = &cli.matrices {
        fs::create_dir_all(dir).map_err(|e| CliError::invalid(format!("{}: {e}", dir.display())))?;
        for (name, m) in &outcome.matrices {
            write_matrix(dir.join(format!("{name}.mat")), m)?;
        }
    }
    let rendered = if cli.json {
        outcome.report.render_json()
    } else {
        outcome.report.render_text()
    };
    match (&cli.out, &outcome.artifact) {
        (Some(path), Some(m)) if !cli.json => {
            write_matrix(path, m)?;
            print(&rendered)
        }
        (Some(path), _) => write_file(path, &rendered),
        (None, _) => print(&rendered),
    }
}

fn print(s: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::invalid(format!("stdout: {e}")))
}

fn write_file(path: &Path, s: &str) -> Result<(), CliError> {
    fs::write(path, s).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

fn read_seifert(path: &Path) -> Result<SeifertForm, CliError> {
    let m = read_matrix(path)?;
    SeifertForm::new(m, path.display().to_string()).map_err(CliError::invalid)
}

fn torus(p: u64, q: u64) -> Result<Outcome, CliError> {
    let params = TorusKnotParams::new(p, q).map_err(CliError::invalid)?;
    let v = torus_seifert_matrix(p, q).map_err(CliError::invalid)?;
    let report = Report::new("torus")
        .with("p", params.p())
        .with("q", params.q())
        .with("genus", params.genus())
        .with("dimension", v.dimension())
        .with("matrix", v.matrix());
    let mut out = Outcome::new(report);
    out.matrices.push(("V", v.matrix().clone()));
    out.artifact = Some(v.matrix().clone());
    Ok(out)
}

/// Invariants shared by `invariants` and the congruence checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub dimension: usize,
    pub genus: usize,
    #[serde(with = "serde_bigint")]
    pub intersection_det: num_bigint::BigInt,
    pub alexander: crate::seifert::LaurentPoly,
    pub alexander_text: String,
    pub signature: i64,
    pub arf: u8,
    pub tristram_levine_minus_one: Option<i64>,
    pub tristram_levine_i: Option<i64>,
    pub tristram_levine_minus_i: Option<i64>,
    pub signature_g4_bound: i64,
}

impl InvariantSummary {
    pub fn of(v: &SeifertForm) -> Self {
        let tl = |w| v.tristram_levine(w).ok();
        let alexander = v.alexander_polynomial();
        InvariantSummary {
            dimension: v.dimension(),
            genus: v.genus(),
            intersection_det: (v.matrix() - &v.matrix().transpose()).det().expect("square"),
            alexander_text: alexander.to_string(),
            alexander,
            signature: v.signature(),
            arf: v.arf_invariant(),
            tristram_levine_minus_one: tl(Omega::MinusOne),
            tristram_levine_i: tl(Omega::I),
            tristram_levine_minus_i: tl(Omega::MinusI),
            signature_g4_bound: g4_lower_bound_signature(v),
        }
    }
}

fn invariants(v: &SeifertForm) -> Result<Outcome, CliError> {
    let summary = InvariantSummary::of(v);
    Ok(Outcome::new(Report::from_serialize("invariants", &summary)))
}

fn signature(v: &SeifertForm, omega: &str) -> Result<Outcome, CliError> {
    let omega: Omega = omega.parse().map_err(CliError::invalid)?;
    let sigma = v.tristram_levine(omega).map_err(CliError::invalid)?;
    let (a, b) = omega.as_fraction();
    let report = Report::new("signature")
        .with("omega", omega.to_string())
        .with("omega_fraction", format!("{a}/{b}"))
        .with("tristram_levine", sigma);
    Ok(Outcome::new(report))
}

/// Accepts a symmetric Q directly; any other square matrix is read as a
/// Seifert matrix and replaced by V + V^T.
fn as_quadratic(m: &IntMatrix) -> Result<QuadForm, CliError> {
    if !m.is_square() {
        return Err(CliError::invalid(format!(
            "form must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let sym = if m.is_symmetric() {
        m.clone()
    } else {
        log::info!("input is not symmetric; using V + V^T");
        m + &m.transpose()
    };
    QuadForm::new(sym).map_err(CliError::invalid)
}

/// Skew matrices are used as they are; anything else is read as V and
/// replaced by V - V^T.
fn as_skew(m: &IntMatrix) -> Result<IntMatrix, CliError> {
    if !m.is_square() {
        return Err(CliError::invalid(format!(
            "form must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(if m.is_skew_symmetric() {
        m.clone()
    } else {
        log::info!("input is not skew-symmetric; using V - V^T");
        m - &m.transpose()
    })
}

#[derive(Serialize, Deserialize)]
struct IsotropicReport {
    form: IntMatrix,
    certificate: IsotropicCertificate,
}

fn isotropic(m: &IntMatrix, budget: &SearchBudget) -> Result<Outcome, CliError> {
    let q = as_quadratic(m)?;
    let search = find_primitive_isotropic(&q, budget).map_err(|e| match e {
        QformError::BudgetExhausted { .. } => CliError::inconclusive(e),
        other => CliError::invalid(other),
    })?;
    match search {
        IsotropicSearch::Found(cert) => {
            let z = cert.z.as_row_matrix();
            let mut out = Outcome::new(Report::from_serialize(
                "isotropic",
                &IsotropicReport {
                    form: q.matrix().clone(),
                    certificate: cert,
                },
            ));
            out.matrices.push(("Q", q.matrix().clone()));
            out.matrices.push(("z", z.clone()));
            out.artifact = Some(z);
            Ok(out)
        }
        IsotropicSearch::NotFound { reason, radius } => {
            let message = match reason {
                NotFoundReason::Definite => "not found: form is definite".to_string(),
                NotFoundReason::RadiusExhausted => {
                    format!("not found: no isotropic vector with sup-norm <= {radius}")
                }
            };
            eprintln!("{message}");
            let mut out = Outcome::new(
                Report::new("isotropic")
                    .with("found", false)
                    .with("reason", reason)
                    .with("radius", radius)
                    .with("message", &message),
            );
            out.code = EXIT_INCONCLUSIVE;
            Ok(out)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CompletionReport {
    intersection_form: IntMatrix,
    z: IntVector,
    change: IntMatrix,
}

fn complete(form: &IntMatrix, z: &IntMatrix) -> Result<Outcome, CliError> {
    let j = as_skew(form)?;
    if z.rows() != 1 {
        return Err(CliError::invalid(format!(
            "vector file must have 1 row, got {}",
            z.rows()
        )));
    }
    let z = IntVector(z.row(0).to_vec());
    let p = symplectic_completion(&j, &z).map_err(CliError::invalid)?;
    let mut out = Outcome::new(Report::from_serialize(
        "complete",
        &CompletionReport {
            intersection_form: j.clone(),
            z,
            change: p.matrix().clone(),
        },
    ));
    out.matrices.push(("J", j));
    out.matrices.push(("P", p.matrix().clone()));
    out.artifact = Some(p.into_matrix());
    Ok(out)
}

fn derived_matrices(d: &DerivedFormCertificate) -> Vec<(&'static str, IntMatrix)> {
    vec![
        ("V", d.original.matrix().clone()),
        ("z", d.iso.z.as_row_matrix()),
        ("P", d.change.matrix().clone()),
        ("Vstar", d.derived.matrix().clone()),
    ]
}

fn slice_matrices(s: &SliceCertificate) -> Vec<(&'static str, IntMatrix)> {
    vec![("W", s.sum_form.matrix().clone()), ("M", s.metabolizer.clone())]
}

fn derive(v: &SeifertForm, budget: &SearchBudget) -> Result<Outcome, CliError> {
    let cert = derive_reduced_form(v, budget)?;
    let report = Report::from_serialize("derive", &cert)
        .with("g4_bound", cert.g4_bound())
        .with("invariants_original", InvariantSummary::of(&cert.original))
        .with("invariants_derived", InvariantSummary::of(&cert.derived));
    let mut out = Outcome::new(report);
    out.matrices = derived_matrices(&cert);
    out.artifact = Some(cert.derived.matrix().clone());
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct SliceReport {
    derived: Option<DerivedFormCertificate>,
    slice: SliceCertificate,
}

fn certify_slice(v: &SeifertForm, change: Option<&IntMatrix>, budget: &SearchBudget) -> Result<Outcome, CliError> {
    let (derived, slice) = match change {
        Some(p) => (None, slice_certificate_from_change(v, p)?),
        None => {
            let d = derive_reduced_form(v, budget)?;
            let s = build_slice_certificate(&d)?;
            (Some(d), s)
        }
    };
    let mut matrices = derived.as_ref().map(derived_matrices).unwrap_or_default();
    matrices.extend(slice_matrices(&slice));
    let artifact = slice.metabolizer.clone();
    let mut out = Outcome::new(Report::from_serialize("certify-slice", &SliceReport { derived, slice }));
    out.matrices = matrices;
    out.artifact = Some(artifact);
    Ok(out)
}

fn verify_metabolizer_cmd(w: &SeifertForm, m: &IntMatrix) -> Result<Outcome, CliError> {
    let ok = verify_metabolizer(w, m)?;
    let mut out = Outcome::new(
        Report::new("verify-metabolizer")
            .with("metabolizer", ok)
            .with("rows", m.rows())
            .with("dimension", w.dimension()),
    );
    if !ok {
        eprintln!("not a metabolizer");
        out.code = EXIT_INVALID;
    }
    Ok(out)
}

fn paper_chain(p: u64, q: u64, budget: &SearchBudget) -> Result<Outcome, CliError> {
    let chain = tau_chain_report(p, q, budget)?;
    let mut matrices = chain.derived.as_ref().map(derived_matrices).unwrap_or_default();
    if let Some(s) = &chain.slice {
        matrices.extend(slice_matrices(s));
    }
    let code = match chain.conclusion {
        Conclusion::SummandEstablished => EXIT_OK,
        Conclusion::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let mut out = Outcome::new(Report::from_serialize("paper-chain", &chain));
    out.matrices = matrices;
    out.code = code;
    Ok(out)
}

/// Re-checks a report produced with `--json`, reading nothing but the
/// report itself. Returns what was verified.
pub fn verify_report_json(text: &str) -> Result<String, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::invalid(format!("not JSON: {e}")))?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::invalid("report has no \"kind\" field"))?
        .to_string();
    let fail = |what: &str| CliError::invalid(format!("{kind} report does not verify: {what}"));
    let parse_err = |e: serde_json::Error| CliError::invalid(format!("malformed {kind} report: {e}"));
    match kind.as_str() {
        "isotropic" => {
            let r: IsotropicReport = serde_json::from_value(value).map_err(parse_err)?;
            let q = QuadForm::new(r.form).map_err(CliError::invalid)?;
            if !r.certificate.verify(&q) {
                return Err(fail("z Q z^T != 0 or z not primitive"));
            }
        }
        "complete" => {
            let r: CompletionReport = serde_json::from_value(value).map_err(parse_err)?;
            let n = r.intersection_form.rows();
            let good = r.change.is_square()
                && r.change.rows() == n
                && r.change.det().is_ok_and(|d| d == 1.into())
                && r.change.row(0) == r.z.entries()
                && r.change.congruence(&r.intersection_form).ok() == Some(IntMatrix::standard_symplectic(n));
            if !good {
                return Err(fail("P is not a symplectic basis with first row z"));
            }
        }
        "derive" => {
            let cert: DerivedFormCertificate = serde_json::from_value(value).map_err(parse_err)?;
            cert.verify().map_err(|e| fail(&e.to_string()))?;
        }
        "certify-slice" => {
            let r: SliceReport = serde_json::from_value(value).map_err(parse_err)?;
            if let Some(d) = &r.derived {
                d.verify().map_err(|e| fail(&e.to_string()))?;
                let expected = d.original.connected_sum(&d.derived.concordance_inverse());
                if expected.matrix() != r.slice.sum_form.matrix() {
                    return Err(fail("W is not V ⊕ (-V*)"));
                }
            }
            if !r.slice.verify().map_err(|e| fail(&e.to_string()))? {
                return Err(fail("M W M^T != 0 or M not primitive"));
            }
        }
        "paper-chain" => {
            let r: TauChainReport = serde_json::from_value(value).map_err(parse_err)?;
            r.verify().map_err(|e| fail(&e.to_string()))?;
        }
        other => return Err(CliError::invalid(format!("cannot verify reports of kind {other:?}"))),
    }
    Ok(kind)
}

fn verify_certificate_file(path: &Path) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let kind = verify_report_json(&text)?;
    Ok(Outcome::new(
        Report::new("verify-certificate")
            .with("verified", true)
            .with("certificate_kind", kind),
    ))
}
