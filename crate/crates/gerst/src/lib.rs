//! Command-line workbench and file formats for `gerst-core`.
//!
//! * [`io`]: JSON formats for algebras, monoids, cochains and chain complexes.
//! * [`svg`]: pictures of the prismatic and fiberwise subdivisions.
//! * [`suites`]: the verification suites behind `gerst verify` and the acceptance tests.
//! * [`cli`]: argument parsing and dispatch.

pub mod cli;
pub mod error;
pub mod io;
pub mod suites;
pub mod svg;

pub use error::{Error, Result};
