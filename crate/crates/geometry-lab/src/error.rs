use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("Gram matrix at p = {p} is not positive definite with quadrature order {order}; try order ≥ {suggested}")]
    QuadratureResolution { p: usize, order: usize, suggested: usize },
    #[error("quadrature Gram disagrees with the closed form at p = {p}: relative deviation {deviation:e}")]
    GramMismatch { p: usize, deviation: f64 },
    #[error("Toeplitz matrix for `{observable}` at p = {p} is not Hermitian (deviation {deviation:e})")]
    NotHermitian { observable: String, p: usize, deviation: f64 },
    #[error("rank-deficient fit design over p in [{pmin}, {pmax}] ({samples} samples, {unknowns} unknowns, condition {condition:e})")]
    RankDeficient { pmin: usize, pmax: usize, samples: usize, unknowns: usize, condition: f64 },
    #[error("observable `{0}` is not defined on this model")]
    WrongModel(String),
    #[error("invalid level p = {0}")]
    BadLevel(usize),
}
