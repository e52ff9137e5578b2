use std::io::{self, BufRead, BufReader, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use orc_cli::{run_batch, run_line, Config, Format, Outcome, Session};

/// Oriented reals with explicit fuel: evaluate, compare and probe expressions.
#[derive(Parser)]
#[command(name = "orc", version)]
struct Args {
    /// Search budget for every verdict.
    #[arg(long, env = "ORC_FUEL", default_value_t = 1024)]
    fuel: usize,
    /// Probe grids use step 2^-GRID.
    #[arg(long, env = "ORC_GRID", default_value_t = 7)]
    grid: u32,
    /// File with one expression per line, used by `verify` and `totalc`.
    #[arg(long, env = "ORC_CORPUS")]
    corpus: Option<PathBuf>,
    #[arg(long, env = "ORC_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run a command and exit; may be repeated.
    #[arg(short = 'e', long = "exec")]
    exec: Vec<String>,
    /// Script to run in batch mode; `-` reads standard input.
    script: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    // panics are reported per command by run_line
    std::panic::set_hook(Box::new(|_| {}));
    let mut session = Session::new(Config {
        fuel: args.fuel,
        grid: args.grid,
        corpus: args.corpus,
        format: args.format,
    });
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = if !args.exec.is_empty() {
        run_batch(&mut session, args.exec.join("\n").as_bytes(), &mut out)
    } else {
        match args.script {
            Some(path) if path.as_os_str() == "-" => run_batch(&mut session, io::stdin().lock(), &mut out),
            Some(path) => match std::fs::File::open(&path) {
                Ok(f) => run_batch(&mut session, BufReader::new(f), &mut out),
                Err(e) => {
                    eprintln!("orc: cannot open {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            },
            None if io::stdin().is_terminal() => repl(&mut session, &mut out).map(|_| 0),
            None => run_batch(&mut session, io::stdin().lock(), &mut out),
        }
    };
    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("orc: {e}");
            ExitCode::from(2)
        }
    }
}

fn repl(session: &mut Session, out: &mut impl Write) -> io::Result<()> {
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        write!(out, "orc> ")?;
        out.flush()?;
        let Some(line) = lines.next() else {
            writeln!(out)?;
            return Ok(());
        };
        match run_line(session, &line?) {
            Ok(Outcome::Output(s)) => writeln!(out, "{s}")?,
            Ok(Outcome::Silent) => {}
            Ok(Outcome::Quit) => return Ok(()),
            Err(e) => writeln!(out, "error: {e}")?,
        }
    }
}
