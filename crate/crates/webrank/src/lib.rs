//! Exact and certified-precision computation of abelian relations and ranks
//! of germs of planar webs, analysis of webs with infinitesimal automorphisms
//! through the Lie operator on the relation space, and construction of the
//! dual webs of torus-invariant plane curves.
//!
//! The crate is organized around a handful of layers:
//!
//! * [`field`] — the coefficient fields: exact rationals and big floats.
//! * [`series`] — truncated bivariate power series, 1-form jets, the series
//!   Newton iteration and first-integral solvers.
//! * [`poly`] — univariate, bivariate and trivariate polynomials over the
//!   rationals, plus root isolation utilities.
//! * [`expr`] — the input expression parser.
//! * [`linalg`] — exact fraction-free and gap-certified floating kernels.
//! * [`web`] — the data model for foliation germs, webs and vector fields.
//! * [`solver`] — the abelian-relation linear system and rank certificates.
//! * [`symmetry`] — canonical first integrals, the Lie operator and its
//!   eigenstructure, structured relation bases and the rank-increment check.
//! * [`curves`] — torus-invariant curve families, dual webs and trace checks.
//! * [`report`], [`cli`] — machine-readable reports and the command line.

pub mod cli;
pub mod curves;
pub mod expr;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod series;
pub mod solver;
pub mod symmetry;
pub mod util;
pub mod web;

use thiserror::Error;

/// Crate-wide error type. Variants follow the failure modes of the
/// individual operations; [`Error::exit_code`] maps them onto the process
/// exit codes used by the command-line tool.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax: {msg} at byte {pos}")]
    Syntax { pos: usize, msg: String },
    #[error("validation: {0}")]
    Validation(String),
    #[error("variable-mismatch: {0}")]
    VariableMismatch(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("not-closed: {0}")]
    NotClosed(String),
    #[error("not-a-web: {0}")]
    NotAWeb(String),
    #[error("regularity: {0}")]
    Regularity(String),
    #[error("non-transverse: {0}")]
    NonTransverse(String),
    #[error("degenerate-basepoint: {0}")]
    DegenerateBasepoint(String),
    #[error("basepoint: {0}")]
    Basepoint(String),
    #[error("no-valid-basepoint: {0}")]
    NoValidBasepoint(String),
    #[error("adjoint-pole: {0}")]
    AdjointPole(String),
    #[error("out-of-range: {0}")]
    OutOfRange(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("numerical-instability: {0}")]
    Instability(String),
    #[error("theorem-violation: {0}")]
    TheoremViolation(String),
    #[error("internal-error: {0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 1 for validation-class errors, 2 for numerical
    /// instability, 3 for theorem violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Instability(_) => 2,
            Error::TheoremViolation(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
