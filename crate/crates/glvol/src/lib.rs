//! Numerical integration over `U(n)`, report formats and the `glvol`
//! command line, built on the exact algebra in `glvol-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod numint;
pub mod quadrature;
pub mod report;

pub use error::{Error, Result};
