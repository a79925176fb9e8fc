//! Fundamental capacities of Legendrian knots, computed exactly from plat
//! front diagrams, and the width and length bounds they imply.

pub mod bounds;
pub mod capacity;
pub mod dga;
pub mod diagram;
pub mod error;
pub mod f2;
pub mod front;
pub mod linearize;
pub mod oracle;
pub mod rational;
pub mod sample;
mod strip;
pub mod sweep;

#[cfg(test)]
mod testdata;

pub use error::{Error, Result};
