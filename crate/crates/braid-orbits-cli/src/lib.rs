//! Command-line surface and exact JSON data formats for the braid-orbits
//! engine: catalog verification (`verify`), orbit enumeration of tuple or
//! signature documents (`orbit`), the classification pipeline (`classify`),
//! and table export in the published column order (`export`).

pub mod commands;
pub mod formats;
pub mod selector;

pub use commands::{CliError, CATALOG_ENV, EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH, EXIT_PASS};
