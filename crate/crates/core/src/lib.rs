//! Exact computation of radicals for quiver path algebras, generalized matrix
//! rings and pointed Hopf algebras, with brute-force oracles on
//! finite-dimensional instances.

pub mod error;
pub mod findim;
pub mod gm_ring;
pub mod hopf;
pub mod linalg;
pub mod path_algebra;
pub mod quiver;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{SparseVec, Subspace};
pub use scalar::Cyclotomic;
