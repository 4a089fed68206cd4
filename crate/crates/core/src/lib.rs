//! Exact symbolic engine for bicovariant differential calculus on quantum
//! groups given by the FRT construction.

pub mod calculus;
pub mod cartan;
pub mod dual;
pub mod linalg;
pub mod ncalg;
pub mod qscalar;
pub mod report;
pub mod suites;
pub mod wedge;
