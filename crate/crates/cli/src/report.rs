//! Report documents written by each subcommand.

use kostant_core::cmjd::{CmjdResiduals, ValidationReport};
use kostant_core::io::{MatrixJson, ModuliJson};
use kostant_core::order::{HullCertificate, OrderVerdict, Relation, SeparatingWitness};
use kostant_core::selfcheck::SelfcheckReport;
use kostant_core::symchar::RepSpec;
use serde::Serialize;

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Decompose(DecomposeReport),
    Order(OrderReport),
    Char(CharReport),
    Witness(WitnessReport),
    Certify(CertifyReport),
    Selfcheck(SelfcheckReport),
    Error(ErrorReport),
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub exact: bool,
    pub n: usize,
    pub e: MatrixJson,
    pub h: MatrixJson,
    pub u: MatrixJson,
    pub moduli: ModuliJson,
    /// Float mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<CmjdResiduals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    /// Exact mode only: every identity holds in rational arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct OrderReport {
    pub relation: Relation,
    pub holds: bool,
    pub x: ModuliJson,
    pub y: ModuliJson,
    pub verdict: OrderVerdict,
}

#[derive(Debug, Serialize)]
pub struct CharReport {
    pub spec: RepSpec,
    pub dimension: u128,
    pub x: ModuliJson,
    /// `|χ|` at the hyperbolic element.
    pub chi: f64,
    /// Exact value as a fraction, with `--exact` on rational moduli.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_exact: Option<String>,
    pub spectral_radius: f64,
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub m: u64,
    pub spec: RepSpec,
    pub dimension: u128,
    pub chi1: Option<f64>,
    pub chi2: Option<f64>,
    pub ln_chi1: f64,
    pub ln_chi2: f64,
    pub bound_m: u64,
}

impl From<SeparatingWitness> for WitnessReport {
    fn from(w: SeparatingWitness) -> Self {
        WitnessReport {
            k: w.k,
            m: w.m,
            spec: w.spec,
            dimension: w.dimension,
            chi1: w.chi_1,
            chi2: w.chi_2,
            ln_chi1: w.ln_chi_1,
            ln_chi2: w.ln_chi_2,
            bound_m: w.bound_m,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub member: bool,
    pub x_log: Vec<f64>,
    pub y_log: Vec<f64>,
    pub certificate: HullCertificate,
    /// Replay of the T-transform chain checks out (membership only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay_verified: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}
