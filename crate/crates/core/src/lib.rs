//! Exact combinatorics for slopes of automorphic eigensystems.

pub mod error;
pub mod limits;
pub mod rational;
pub mod root_datum;
pub mod char_ring;
pub mod weyl;
pub mod slope_calc;
pub mod cousin;
pub mod newton;
pub mod sweep;
pub mod checks;

pub use error::{Error, ErrorKind, Result};
pub use limits::Limits;
pub use rational::{Weight, Q};
