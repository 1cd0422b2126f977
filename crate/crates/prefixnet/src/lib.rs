//! File formats and the `prefixnet` command-line front end for
//! [`prefixnet_core`].
//!
//! [`run`] is the whole program minus process plumbing: it takes the
//! argument vector and standard input and returns the exit code together
//! with everything destined for standard output and standard error.

use std::io::Read;

use clap::error::ErrorKind;
use clap::Parser;

mod cli;
mod commands;
pub mod error;
pub mod formats;
pub mod output;

pub use cli::Cli;
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (program name first).
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let flags = argv.iter().skip(2).cloned().collect();
    match commands::execute(&cli, flags, stdin) {
        Ok(stdout) => RunOutput { code: EXIT_OK, stdout, stderr: String::new() },
        Err(e) => RunOutput {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.to_string().replace('\n', " ")),
        },
    }
}
