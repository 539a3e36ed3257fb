//! Exact matroid computation: rank oracles, connectivity, minor search,
//! structure detection and exhaustive statement verifiers.

pub mod budget;
pub mod catalog;
pub mod connectivity;
pub mod error;
pub mod field;
pub mod format;
pub mod iso;
pub mod limits;
pub mod matroid;
pub mod minors;
pub mod roundedness;
pub mod set;
pub mod structures;
pub mod theorems;

pub use error::{Error, Result};
pub use matroid::{Backend, Label, Matroid, Simplification};
pub use set::ElemSet;
