//! Expression language and command interpreter over `orc-core`.

pub mod ast;
pub mod eval;
pub mod parse;
pub mod session;

use std::io::{BufRead, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};

pub use session::{Config, Format, Outcome, Session};

/// Runs one line, turning errors and panics into a printable message.
pub fn run_line(session: &mut Session, line: &str) -> Result<Outcome, String> {
    match catch_unwind(AssertUnwindSafe(|| session.execute(line))) {
        Ok(r) => r.map_err(|e| e.to_string()),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unknown cause");
            Err(format!("evaluation aborted: {msg}"))
        }
    }
}

/// Runs a script line by line. Errors are reported inline with their line
/// number and do not stop the run. Returns the number of failed lines.
pub fn run_batch(session: &mut Session, input: impl BufRead, out: &mut impl Write) -> std::io::Result<usize> {
    let mut failed = 0;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        match run_line(session, &line) {
            Ok(Outcome::Output(s)) => writeln!(out, "{s}")?,
            Ok(Outcome::Silent) => {}
            Ok(Outcome::Quit) => break,
            Err(e) => {
                failed += 1;
                writeln!(out, "error (line {}): {e}", i + 1)?;
            }
        }
    }
    Ok(failed)
}
