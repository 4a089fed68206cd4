//! Rewrite-presented Hopf algebras, with the FRT builder for matrix quantum groups.

mod algebra;
pub mod config;
mod element;
pub mod frt;
pub mod hopf;
mod tensor;

use thiserror::Error;

use crate::qscalar::ScalarError;

pub use algebra::{Algebra, FrtData, DEFAULT_MAX_WORD_LEN};
pub use config::InstanceConfig;
pub use element::{scalar_factor, AlgebraElement, Gen, Word};
pub use frt::{build_frt_instance, standard_r_matrix};
pub use hopf::verify_hopf_axioms;
pub use tensor::{TensorElement, TensorKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("degree cap exceeded: word length {len} > cap {cap}")]
    DegreeCap { len: usize, cap: usize },
    #[error("missing {table} entry for generator `{generator}`")]
    MissingEntry { table: String, generator: String },
    #[error("rewrite rule does not decrease in the monomial order: {0}")]
    NotTerminating(String),
    #[error("R-matrix fails the Yang-Baxter equation at entry {0}")]
    YangBaxter(String),
    #[error("R-matrix is not invertible")]
    SingularR,
    #[error("built instance fails Hopf axioms: {0}")]
    HopfAxioms(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid instance config: {0}")]
    Config(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
