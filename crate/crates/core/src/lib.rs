//! Exact computations in permutational wreath products `W ≀_X G` and the
//! group constructions around them.

pub mod cosets;
pub mod error;
pub mod fibre;
pub mod geodesic;
pub mod graph_products;
pub mod groups;
pub mod presentations;
pub mod word;
pub mod wreath;

pub use error::{Error, Result};
