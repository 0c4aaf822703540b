//! Command-line front end: argument parsing, output formats, polynomial files
//! and the shipped fixtures.

pub mod args;
pub mod commands;
pub mod fixtures;
pub mod poly_cmd;
pub mod polyfile;
pub mod report;

use std::io::{Read, Write};

use clap::Parser;

/// Parses `argv`, runs the command and returns the exit code: 0 pass,
/// 1 a check or assertion failed, 2 usage or input error.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match commands::execute(&cli, stdin) {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            if let Some(d) = out.diagnostic {
                let _ = writeln!(stderr, "{d}");
            }
            out.status.code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
