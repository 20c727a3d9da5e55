use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("denominator parameter {0} is a pole of the series")]
    SeriesPole(f64),
    #[error("series did not converge within {0} terms")]
    SeriesCap(usize),
    #[error("truncation too small: dropped tail {tail:e} exceeds {bound:e} at dim {dim}")]
    TailBound { dim: usize, tail: f64, bound: f64 },
    #[error("image of basis element {index} leaves the span (power z^{power})")]
    OutsideSpan { index: usize, power: usize },
    #[error("quadrature did not reach tolerance: estimated error {error:e} after {evals} evaluations")]
    Quadrature { error: f64, evals: usize },
    #[error("deformation scale l(l+1)-K = {0} is not positive")]
    NonPositiveScale(String),
}

pub type Result<T> = std::result::Result<T, Error>;
