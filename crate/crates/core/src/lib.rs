//! Exact computations with A∞/C∞-coalgebras, their extensions to tensor
//! algebras, and the L∞-bialgebra structures they induce on primitives.

pub mod associahedron;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod linf;
pub mod pipeline;
pub mod report;
pub mod structure;
pub mod ainf;
pub mod hopf;

pub use ainf::AInfCoalgebra;
pub use error::{Error, Result};
pub use report::Report;
pub use structure::Structure;
