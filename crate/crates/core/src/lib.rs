//! Exact von Neumann signatures of Hermitian forms over group rings, and
//! twisted intersection pairings of oriented simplicial complexes.

pub mod cochain;
pub mod constructions;
pub mod covering;
pub mod cup;
pub mod error;
pub mod form;
pub mod group;
pub mod json;
pub mod matrix;
pub mod modp;
pub mod pairing;
pub mod random;
pub mod ring;
pub mod scalar;
pub mod signature;
pub mod simplicial;
pub mod sparse;
pub mod whitney;

pub use error::{Error, Result};
