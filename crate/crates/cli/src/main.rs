//! `sdepth`: generate complete k-partite clutters, compute exact Stanley
//! depth with certificates, evaluate bounds, decompose, and sweep families.

mod args;
mod commands;
mod family;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failure carrying its documented exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<sdepth_core::Error> for Failure {
    fn from(e: sdepth_core::Error) -> Self {
        match e {
            sdepth_core::Error::InvariantViolation(m) => Self::internal(m),
            other => Self::usage(format!("{other:?}: {other}")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(&cli.global, a),
        Command::Sdepth(a) => commands::sdepth(&cli.global, a),
        Command::Bounds(a) => commands::bounds(&cli.global, a),
        Command::Decompose(a) => commands::decompose(&cli.global, a),
        Command::VerifyFamily(a) => family::verify_family(&cli.global, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
