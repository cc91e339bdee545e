//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point is within {tol:e} of the ideal boundary")]
    NearBoundary { tol: f64 },
    #[error("point lies on the reflected diagonal (|1 + mu1 conj(mu2)| = {value:e})")]
    ReflectedDiagonal { value: f64 },
    #[error("coordinates are singular here: {0}")]
    ChartSingular(String),
    #[error("adapted frame is degenerate: |Delta| = {delta:e}")]
    DegenerateFrame { delta: f64 },
    #[error("induced metric is degenerate: det = {det:e}")]
    DegenerateMetric { det: f64 },
    #[error("surface is not Lagrangian (residual {residual:e})")]
    NotLagrangian { residual: f64 },
    #[error("chart has the wrong rank for this method: expected {expected}, found {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("surface has a flat point (kappa = {kappa:e})")]
    FlatPoint { kappa: f64 },
    #[error("pole of the chart inside the domain at {0}")]
    PoleInDomain(String),
    #[error("rho0 = {rho0:e} is not positive, no real r solves rho = -1")]
    NonPositiveRho0 { rho0: f64 },
    #[error("tangent vectors have different base geodesics")]
    BaseMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("evaluation failed: {0}")]
    Eval(#[from] crate::exprdsl::EvalError),
    #[error("parameter {0} is outside the chart domain")]
    OutOfDomain(crate::C64),
    #[error("no valid samples in the domain")]
    EmptyDomain,
}
