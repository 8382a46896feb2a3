//! Exact chain-level models for brace operations on Hochschild cochains.
//!
//! The crate is `no_std` and only needs `alloc`. Modules:
//!
//! * [`algebra`]: finite-rank unital algebras over `Z` or `Z/m`.
//! * [`hochschild`]: dense cochains, cofaces, cup, braces, cohomology.
//! * [`formula`]: the formula trees that index cells, with their combinatorics.
//! * [`subdivision`]: prismatic subdivision maps in rational or floating arithmetic.
//! * [`chains`]: integer chain complexes, Smith normal form, cellular complexes.
//! * [`posets`]: consistent order pairs and the nerve of their poset.
//! * [`cosimplicial`]: operads with multiplication and their cosimplicial objects.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod chains;
pub mod cosimplicial;
pub mod error;
pub mod formula;
pub mod hochschild;
pub mod posets;
pub mod subdivision;

pub use error::{Error, Result};
