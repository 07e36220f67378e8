//! Exact computation of the Knapp–Stein intertwining operators on the
//! degenerate principal series of the split real group of type G2, K-type by
//! K-type, over the field of rational functions in the parameter `s`.

pub mod algebra;
pub mod error;
pub mod g2;
pub mod intertwiner;
pub mod su2;

pub use error::{Error, Result};
pub mod verify;
