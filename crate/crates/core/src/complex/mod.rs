//! Exact linear algebra of truncated field spaces: operator matrices, chain
//! complexes, exactness, block cancellation and the Lambda^2 R^4 splitting.

pub mod chain;
pub mod lambda2;
pub mod linalg;
pub mod ops;
pub mod space;

pub use chain::{
    derive_elasticity, elasticity_complex, fully_reduced_complex, grad_curl_div_complex,
    halfway_complex, schur_reduce, verify_complex, w_complex, w_split_complex, ChainComplex,
    ComplexReport, ElasticityDerivation,
};
pub use lambda2::{lambda2_split, SkewMat4, Vec4};
pub use linalg::RatMatrix;
pub use ops::{matrix_of, LinOpMatrix, OperatorId};
pub use space::{GradedSpace, Slot, SlotKind};
