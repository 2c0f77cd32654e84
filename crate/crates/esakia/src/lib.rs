//! Priestley duality for finite frames and for a family of infinite complete chains.
//!
//! The crate builds dual spaces, localic parts, kernels and regular parts, Scott
//! upsets and the related space classes, and checks the surrounding theory on
//! exhaustively enumerated instances.

pub mod bits;
pub mod chainfrm;
pub mod checker;
pub mod dlattice;
pub mod error;
pub mod hierarchy;
pub mod poset;

pub use bits::Mask;
pub use error::{Error, Result};
pub mod priestley;
pub mod spaces;
