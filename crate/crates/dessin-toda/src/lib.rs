//! Exact enumeration of dessins d'enfants, LUE correlators and strictly monotone
//! Hurwitz numbers, plus executable checks of the Toda-lattice and
//! Frobenius-manifold identities that connect them.

pub mod algebra;
pub mod barnes;
pub mod cli;
pub mod dessins;
pub mod genus;
pub mod error;
pub mod hurwitz;
pub mod lue;
pub mod oracles;
pub mod partitions;
pub mod toda;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
