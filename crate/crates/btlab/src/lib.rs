//! Command line front end for btlab-core: argument parsing, dispatch and artifact rendering.

pub mod args;
pub mod artifact;
pub mod commands;

use btlab_core::ErrorClass;
use clap::Parser;

pub use args::Cli;
pub use artifact::{export_dot, ArtifactDocument, DotGraph, Rendered};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_ENUMERATION: i32 = 4;
pub const EXIT_DEPENDENCE: i32 = 5;
pub const EXIT_AXIOM: i32 = 6;
pub const EXIT_MATH: i32 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: msg.into() }
    }
}

impl From<btlab_core::Error> for CliError {
    fn from(e: btlab_core::Error) -> Self {
        let code = match e.class() {
            ErrorClass::Input => EXIT_INPUT,
            ErrorClass::Precision => EXIT_PRECISION,
            ErrorClass::Enumeration => EXIT_ENUMERATION,
            ErrorClass::Dependence => EXIT_DEPENDENCE,
            ErrorClass::Axiom => EXIT_AXIOM,
            ErrorClass::Math => EXIT_MATH,
        };
        CliError { code, message: e.to_string() }
    }
}

/// Parse an argument vector (including the program name); usage errors map to EXIT_INPUT.
pub fn parse<I: IntoIterator<Item = String>>(argv: I) -> Result<Cli, CliError> {
    Cli::try_parse_from(argv).map_err(|e| CliError::input(e.to_string().trim_end().to_string()))
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let rendered = commands::dispatch(cli)?;
    rendered.render(cli.global.format)
}
