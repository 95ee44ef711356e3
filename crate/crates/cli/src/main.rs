//! `kostant`: decompositions, order decisions, characters and separating
//! witnesses for elements of `SL(n, C)`, reported as JSON.
//!
//! Exit codes: 0 success, 1 mathematical negative, 2 input error,
//! 3 numerical failure.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kostant_core::cmjd::{cmjd_exact, cmjd_with, validate_cmjd, CmjdOptions, DEFAULT_TOL};
use kostant_core::io::{matrix_moduli, parse_hyperbolic, parse_matrix, MatrixJson, ModuliJson};
use kostant_core::linalg::DEFAULT_CLUSTER_TOL;
use kostant_core::order::{
    find_separating_character_capped, kostant_compare, permutohedron_certificate, HullCertificate,
    LogVector,
};
use kostant_core::selfcheck::{selfcheck, SelfcheckOptions, Suite};
use kostant_core::symchar::{
    abs_character_capped, abs_character_exact, rational_to_f64, spectral_radius_rep,
    spectral_radius_rep_exact, ModuliVector, RepSpec, DEFAULT_MODULI_CAP,
};
use kostant_core::Error;

use report::{
    CertifyReport, CharReport, DecomposeReport, ErrorReport, OrderReport, Report, WitnessReport,
};

#[derive(Parser)]
#[command(
    name = "kostant",
    version,
    about = "Complete multiplicative Jordan decompositions and Kostant's order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Residual tolerance, relative to the input norm.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Work in rational arithmetic where the input allows it.
    #[arg(long)]
    exact: bool,
    /// Largest representation dimension that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_MODULI_CAP)]
    dim_cap: u128,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor g = e·h·u.
    Decompose {
        #[arg(long)]
        g: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether the hyperbolic part of g1 dominates that of g2.
    Order {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate |χ_π| at a hyperbolic element.
    Char {
        /// Representation as JSON text, or a path to a JSON file.
        #[arg(long)]
        spec: String,
        /// Matrix or moduli document.
        #[arg(long)]
        h: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Find a representation whose character separates h1 from h2.
    Witness {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Certify permutohedron membership of log(h2) in the hull of log(h1).
    Certify {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the bundled invariant suites.
    Selfcheck {
        /// Run only this suite; may be repeated.
        #[arg(long)]
        suite: Vec<String>,
        /// Perturb every decomposition so the reconstruction suite fails.
        #[arg(long)]
        inject_fault: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn report(&self) -> ErrorReport {
        let (kind, message) = match self {
            Failure::Io(m) => ("io", m.clone()),
            Failure::Core(e) => (error_kind(e), e.to_string()),
        };
        ErrorReport {
            kind,
            message,
            exit_code: self.exit_code(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 2,
            Failure::Core(Error::OrderHolds) => 1,
            Failure::Core(e) if e.is_numerical() => 3,
            Failure::Core(Error::DimensionCap { .. }) => 3,
            Failure::Core(_) => 2,
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonConvergence { .. } => "non_convergence",
        Error::IllConditioned(_) => "ill_conditioned",
        Error::Singular => "singular",
        Error::NotUnipotent { .. } => "not_unipotent",
        Error::NotHyperbolic(_) => "not_hyperbolic",
        Error::Overflow => "overflow",
        Error::BadIndex { .. } => "bad_index",
        Error::DimensionCap { .. } => "dimension_cap",
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::NonPositive => "non_positive",
        Error::SumMismatch { .. } => "sum_mismatch",
        Error::NotSeparable { .. } => "not_separable",
        Error::OrderHolds => "order_holds",
        Error::PreconditionFailed(_) => "precondition_failed",
        Error::Unsupported(_) => "unsupported",
        Error::NotExact(_) => "not_exact",
        Error::Parse(_) => "parse",
    }
}

type Outcome = Result<(Report, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn check_common(c: &Common) -> Result<(), Failure> {
    if !(c.tol > 0.0 && c.tol.is_finite()) {
        return Err(Error::Parse("--tol must be positive".into()).into());
    }
    if c.dim_cap < 1 {
        return Err(Error::Parse("--dim-cap must be at least 1".into()).into());
    }
    Ok(())
}

fn hyperbolic(path: &Path, c: &Common) -> Result<ModuliVector, Failure> {
    Ok(parse_hyperbolic(
        &read(path)?,
        c.exact,
        DEFAULT_CLUSTER_TOL,
    )?)
}

fn decompose(g: &Path, c: &Common) -> Outcome {
    let input = parse_matrix(&read(g)?)?;
    let n = input.matrix.rows();
    if c.exact {
        let eigenvalues = input.exact_eigenvalues().ok_or_else(|| {
            Error::NotExact("exact mode needs supplied eigenvalues or a triangular matrix".into())
        })?;
        let moduli = matrix_moduli(&input, true, DEFAULT_CLUSTER_TOL)?;
        let t = cmjd_exact(&input.exact, &eigenvalues)?;
        let verified = t.verify(&input.exact);
        let report = DecomposeReport {
            exact: true,
            n,
            e: MatrixJson::from_exact(&t.e),
            h: MatrixJson::from_exact(&t.h),
            u: MatrixJson::from_exact(&t.u),
            moduli: ModuliJson::from_moduli(&moduli),
            residuals: None,
            validation: None,
            verified: Some(verified),
        };
        return Ok((Report::Decompose(report), if verified { 0 } else { 3 }));
    }
    let opts = CmjdOptions {
        tol: c.tol,
        ..CmjdOptions::default()
    };
    let t = cmjd_with(&input.matrix, &opts)?;
    let validation = validate_cmjd(&input.matrix, &t, c.tol);
    let code = if validation.pass { 0 } else { 3 };
    let report = DecomposeReport {
        exact: false,
        n,
        e: MatrixJson::from_matrix(&t.e),
        h: MatrixJson::from_matrix(&t.h),
        u: MatrixJson::from_matrix(&t.u),
        moduli: ModuliJson::from_moduli(&ModuliVector::new(t.moduli.clone())?),
        residuals: Some(t.residuals),
        validation: Some(validation),
        verified: None,
    };
    Ok((Report::Decompose(report), code))
}

fn order(g1: &Path, g2: &Path, c: &Common) -> Outcome {
    let (x, y) = (hyperbolic(g1, c)?, hyperbolic(g2, c)?);
    let verdict = kostant_compare(&x, &y)?;
    let holds = verdict.geq();
    let report = OrderReport {
        relation: verdict.relation,
        holds,
        x: ModuliJson::from_moduli(&x),
        y: ModuliJson::from_moduli(&y),
        verdict,
    };
    Ok((Report::Order(report), if holds { 0 } else { 1 }))
}

fn parse_spec(text: &str) -> Result<RepSpec, Failure> {
    let json = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        read(Path::new(text))?
    };
    serde_json::from_str(&json).map_err(|e| Error::Parse(format!("representation: {e}")).into())
}

fn character(spec: &str, h: &Path, c: &Common) -> Outcome {
    let spec = parse_spec(spec)?;
    let x = hyperbolic(h, c)?;
    spec.validate(x.len())?;
    let dimension = spec.dim(x.len())?;
    let (chi, spectral_radius, chi_exact) = if x.is_exact() {
        let exact = abs_character_exact(&spec, &x)?;
        let radius = rational_to_f64(&spectral_radius_rep_exact(&spec, &x)?);
        (
            rational_to_f64(&exact),
            radius,
            c.exact.then(|| exact.to_string()),
        )
    } else {
        (
            abs_character_capped(&spec, &x, c.dim_cap)?,
            spectral_radius_rep(&spec, &x)?,
            None,
        )
    };
    if !(chi.is_finite() && spectral_radius.is_finite()) {
        return Err(Error::Overflow.into());
    }
    let report = CharReport {
        spectral_radius,
        spec,
        dimension,
        x: ModuliJson::from_moduli(&x),
        chi,
        chi_exact,
    };
    Ok((Report::Char(report), 0))
}

fn witness(h1: &Path, h2: &Path, c: &Common) -> Outcome {
    let (x, y) = (hyperbolic(h1, c)?, hyperbolic(h2, c)?);
    let w = find_separating_character_capped(&x, &y, c.dim_cap)?;
    Ok((Report::Witness(WitnessReport::from(w)), 0))
}

fn certify(h1: &Path, h2: &Path, c: &Common) -> Outcome {
    let (x, y) = (hyperbolic(h1, c)?, hyperbolic(h2, c)?);
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        }
        .into());
    }
    let lx = LogVector::from_moduli(&x.sl_normalized()).centered();
    let ly = LogVector::from_moduli(&y.sl_normalized()).centered();
    let certificate = permutohedron_certificate(&lx, &ly)?;
    let (member, replay_verified) = match &certificate {
        HullCertificate::Member(cert) => (true, Some(cert.verify(c.tol))),
        HullCertificate::Separated(_) => (false, None),
    };
    let code = match replay_verified {
        Some(false) => 3,
        _ if member => 0,
        _ => 1,
    };
    let report = CertifyReport {
        member,
        x_log: lx.values().to_vec(),
        y_log: ly.values().to_vec(),
        certificate,
        replay_verified,
    };
    Ok((Report::Certify(report), code))
}

fn run_selfcheck(suite: &[String], inject_fault: bool) -> Outcome {
    let suites = suite
        .iter()
        .map(|s| s.parse::<Suite>())
        .collect::<Result<Vec<_>, _>>()?;
    let report = selfcheck(&SelfcheckOptions {
        suites,
        inject_fault,
    });
    let code = if report.pass { 0 } else { 3 };
    Ok((Report::Selfcheck(report), code))
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, out) = match &cli.command {
        Command::Decompose { g, common } => (
            check_common(common).and_then(|_| decompose(g, common)),
            common.out.clone(),
        ),
        Command::Order { g1, g2, common } => (
            check_common(common).and_then(|_| order(g1, g2, common)),
            common.out.clone(),
        ),
        Command::Char { spec, h, common } => (
            check_common(common).and_then(|_| character(spec, h, common)),
            common.out.clone(),
        ),
        Command::Witness { h1, h2, common } => (
            check_common(common).and_then(|_| witness(h1, h2, common)),
            common.out.clone(),
        ),
        Command::Certify { h1, h2, common } => (
            check_common(common).and_then(|_| certify(h1, h2, common)),
            common.out.clone(),
        ),
        Command::Selfcheck {
            suite,
            inject_fault,
            out,
        } => (run_selfcheck(suite, *inject_fault), out.clone()),
    };
    let (report, code) = match outcome {
        Ok(r) => r,
        Err(f) => {
            let report = f.report();
            eprintln!("kostant: {}", report.message);
            let code = report.exit_code as u8;
            (Report::Error(report), code)
        }
    };
    if let Err(f) = emit(&report, out.as_deref()) {
        eprintln!("kostant: {}", f.report().message);
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
