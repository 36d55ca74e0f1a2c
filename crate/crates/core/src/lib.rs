//! Leavitt path algebras over exact fields, their boundary-path groupoids,
//! and the graded and ungraded simple modules built from them.

pub mod cycles;
pub mod field;
pub mod graph;
pub mod path;
pub mod algebra;
pub mod linalg;
pub mod groupoid;
pub mod rep;
pub mod classify;
