//! Numeric cross-checks, expression evaluation, report formats and the command
//! line for the exact boundary-term engine in [`kkw_core`].

pub mod expr;
pub mod oracle;
pub mod quadrature;
pub mod report;

pub use kkw_core;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("gamma matrices violate the Clifford relations by {0:e}")]
    RelationCheckFailed(f64),
    #[error("quadrature stalled at error estimate {estimate:e} (requested {tol:e})")]
    ToleranceNotReached { tol: f64, estimate: f64 },
    #[error("integrand decays like |xi|^-{0}, which is not integrable")]
    NotIntegrable(u32),
    #[error("no numeric model for dimension {0}")]
    UnsupportedDimension(u32),
    #[error(transparent)]
    Engine(#[from] kkw_core::Error),
}
