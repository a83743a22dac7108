//! Exact descriptions of numerical ranges and C-numerical ranges of small
//! complex matrices, with sampling oracles that check every closed form.

pub mod cnr;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod nr2;
pub mod nr3;
pub mod oracle;
mod search;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, UnitVector, C64};
