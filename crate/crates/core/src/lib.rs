//! Combinatorics of dual Ramsey statements for finite linearly ordered
//! structures: special orders on tuples and sets, morphism classes between
//! structures, constructions of Ramsey objects, an arrow checker and the
//! tournament obstruction.

pub mod arrow;
pub mod constructions;
pub mod error;
pub mod order;
pub mod structures;
pub mod tournament;
pub mod tuples;

pub use error::{Error, Result};
pub use order::{Chain, ChainMap};
