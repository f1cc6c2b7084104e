use thiserror::Error;

use crate::connection::WOneForm;
use crate::tensor::{SymField, VecField};

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis {0} is out of range, expected 1..=3")]
    InvalidAxis(usize),

    #[error("vector field is not curl-free; curl = {residual}")]
    NotCurlFree { residual: Box<VecField> },

    #[error("one-form is not closed under the coupled curl; residual = {residual}")]
    NotFlat { residual: Box<WOneForm> },

    #[error("strain violates the Saint-Venant equations; curl curl = {residual}")]
    SaintVenant { residual: Box<SymField> },

    #[error("matrix field is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("metric jet must have the identity as its zeroth-order part")]
    NonIdentityBackground,

    #[error("metric is singular at the requested point")]
    SingularMetric,

    #[error("selected block is not invertible: {rows}x{cols} with rank {rank}")]
    NonInvertibleBlock { rows: usize, cols: usize, rank: usize },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("operator `{op}` needs domain degree at least {min}, got {got}")]
    DegreeTooLow { op: String, min: i64, got: i64 },

    #[error("the vector v must be nonzero")]
    ZeroVector,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
