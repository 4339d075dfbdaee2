//! Intersecting set families with prescribed covering number: named
//! constructions, exact covering numbers, shifting, closed-form bounds and
//! brute-force ground truth for `m(n, k, tau)`.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod family;
pub mod oracle;
pub mod shifting;
pub mod transversal;

pub use error::{Error, Result};
pub use family::{GroundParams, KSet, SetFamily, VertexSet};
