//! Knot catalog, file formats and the command implementations behind the
//! `quiverknot` binary. The mathematics lives in `quiverknot-core`.

pub mod catalog;
pub mod commands;
pub mod error;
pub mod formats;
pub mod spec;

pub use catalog::Catalog;
pub use commands::{KnotArg, RunResult};
pub use error::{AppError, Result};
