//! Library side of the `qcartan` command: the expression language, the
//! `expressions` suite and report rendering.

pub mod checks;
pub mod dsl;
pub mod eval;
pub mod verify;
