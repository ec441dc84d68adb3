//! BRST charge construction and verification: ghost-extended presentations,
//! the cubic ghost term of the proposition-style construction, an
//! order-by-order ansatz solver for canonical ghosts, ghost/generator basis
//! changes with derived presentations, the double-complex checks,
//! Fock-space state conditions, and an independent operator-representation
//! oracle.

pub mod ansatz;
pub mod basis;
pub mod charge;
pub mod fock;
pub mod ghost;
pub mod oracle;
pub mod xsolve;

pub use ansatz::{solve_brst_ansatz, AnsatzOutcome, StageAmbiguity};
pub use basis::{
    apply_basis_change, derived_presentation, involution, BasisChange, ClosureReport,
    DerivedPresentation,
};
pub use charge::{
    build_c0, build_q, double_complex_check, verify_nilpotent, BrstCharge, DoubleComplexReport,
    NilpotencyOutcome, Provenance,
};
pub use fock::{fock_expand, fock_matrix_oracle, FockEquation, FockReport};
pub use ghost::{build_ghost_presentation, GhostAlgebra, GhostMode, GhostSystem};
pub use oracle::OracleRep;
pub use xsolve::{x_tensors_solve, TwistChoice, XSolveOutcome, XSolveStatus};

use alloc::string::String;
use core::fmt;

use crate::coeff::CoeffError;
use crate::ncpoly::NcError;
use crate::rewrite::RewriteError;
use crate::ybtensor::YbError;

#[derive(Clone, Debug)]
pub enum BrstError {
    /// A twist matrix failed a named consistency equation.
    InconsistentTwist(String),
    /// The braid matrix must be unitary (σ² = 1) for this construction.
    NonUnitarySigma,
    /// A cross-exchange matrix is singular, so relations cannot be oriented.
    SingularExchange,
    /// Ghost-number or parity grading violated; carries a description.
    Grading(String),
    /// Re-expression in the new generators failed; carries the residual
    /// description.
    ReExpression(String),
    /// A declared basis-change inverse failed its certificate.
    BadInverse(String),
    /// Structural mismatch (wrong counts, missing generators, ...).
    Structure(String),
    Rewrite(RewriteError),
    Nc(NcError),
    Coeff(CoeffError),
    Yb(YbError),
}

impl fmt::Display for BrstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrstError::InconsistentTwist(name) => {
                write!(f, "twist data fails consistency equation `{name}`")
            }
            BrstError::NonUnitarySigma => write!(f, "braid matrix is not unitary"),
            BrstError::SingularExchange => write!(f, "cross-exchange matrix is singular"),
            BrstError::Grading(msg) => write!(f, "grading violation: {msg}"),
            BrstError::ReExpression(msg) => write!(f, "re-expression failed: {msg}"),
            BrstError::BadInverse(msg) => write!(f, "inverse certificate failed: {msg}"),
            BrstError::Structure(msg) => write!(f, "structure error: {msg}"),
            BrstError::Rewrite(e) => write!(f, "{e}"),
            BrstError::Nc(e) => write!(f, "{e}"),
            BrstError::Coeff(e) => write!(f, "{e}"),
            BrstError::Yb(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BrstError {}

impl From<RewriteError> for BrstError {
    fn from(e: RewriteError) -> Self {
        BrstError::Rewrite(e)
    }
}

impl From<NcError> for BrstError {
    fn from(e: NcError) -> Self {
        BrstError::Nc(e)
    }
}

impl From<CoeffError> for BrstError {
    fn from(e: CoeffError) -> Self {
        BrstError::Coeff(e)
    }
}

impl From<YbError> for BrstError {
    fn from(e: YbError) -> Self {
        BrstError::Yb(e)
    }
}
