pub mod closure;
pub mod decomposition;
pub mod digraph;
pub mod error;
pub mod lie;
pub mod limits;
pub mod linalg;
pub mod report;
pub mod suite;
pub mod sym_tensor;

pub use error::{Error, Result};
pub use limits::Limits;
