use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A product would contain two factors of `P`; no rewrite rule exists for `P^2`.
    #[error("product has P-degree 2; only P-degree <= 1 is modeled")]
    PDegreeOverflow,
    #[error("rational function has a polynomial part; the half-line projection is undefined for it")]
    ImproperRational,
    #[error("not integrable over the real line: numerator degree {numerator_degree} exceeds {max}")]
    NotIntegrable { numerator_degree: usize, max: usize },
    #[error("unsupported symbol: {0}")]
    UnsupportedSymbol(String),
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("expected a scalar value, found Clifford content in {0}")]
    NotScalar(String),
}

pub type Result<T> = core::result::Result<T, Error>;
