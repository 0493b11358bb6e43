//! Scenario-driven front end for `majorana-core`: parses JSON run
//! descriptions, evaluates them, and writes CSV tables with a metadata file
//! next to them.

pub mod error;
pub mod output;
pub mod run;
pub mod scenario;

pub use error::CliError;

/// The bundled scenario behind `simulate fig1`.
pub const FIG1_SCENARIO: &str = include_str!("../scenarios/fig1.json");
