//! Front end for the `morderstats` regions: CSV input, region JSON, peel
//! diagrams and experiment tables.

pub mod cli;
pub mod error;
pub mod input;
pub mod manifest;
pub mod report;
pub mod svg;
pub mod tables;

pub use cli::{run, Cli};
pub use error::{CliError, Result};
