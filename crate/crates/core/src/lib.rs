//! Octonion arithmetic and eigenvalue problems for octonionic Hermitian
//! matrices.

pub mod cli;
pub mod eigen2;
pub mod eigen3;
pub mod error;
pub mod format;
pub mod identities;
pub mod linalg;
pub mod octonion;
pub mod sampling;
pub mod search;
pub mod spin;
pub mod syntax;
pub mod table;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Hermitian2, Hermitian3, OctMatrix, OctVector};
pub use octonion::Octonion;
pub use tolerance::Tolerance;
