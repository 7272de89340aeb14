//! The `modlattice` command line: argv to a validated job, job to a canonical
//! JSON report (or a DOT graph), with fixed exit codes.

pub mod dot;
pub mod exec;
pub mod job;

use std::io::{self, Read, Write};
use std::path::Path;
use std::time::Instant;

use modlattice::{Error, Limits};

pub use exec::{execute, Outcome};
pub use job::{parse_job, Bounds, Command, Format, JobSpec, Target};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LAW_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_BOUNDS: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) if !e.use_stderr() => EXIT_OK,
            CliError::Usage(_) => EXIT_PARSE,
            CliError::Core(e) => core_exit_code(e),
            CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownLaw(_) => EXIT_PARSE,
        Error::InvalidSpec(_) | Error::RequiresFactorization(_) => EXIT_UNSUPPORTED,
        Error::BoundExceeded { .. } => EXIT_BOUNDS,
        Error::NotProper | Error::NotProperIdeal | Error::DivisionByZero | Error::RingMismatch => EXIT_INTERNAL,
    }
}

/// Writes via a temporary file in the target directory and a rename, so
/// readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Runs one invocation and returns its exit code. Reports go to `--out` or
/// `stdout`; diagnostics and timing go to `stderr`.
pub fn run(argv: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let result = Limits::from_env().map_err(CliError::from).and_then(|limits| {
        let job = parse_job(argv, stdin, &limits)?;
        let outcome = execute(&job, &limits)?;
        match &job.out {
            Some(path) => write_atomic(path, &outcome.text)?,
            None => stdout.write_all(outcome.text.as_bytes())?,
        }
        Ok((job.command_name(), outcome.exit_code))
    });
    match result {
        Ok((name, code)) => {
            let _ = writeln!(stderr, "modlattice {name}: {:.3}s", start.elapsed().as_secs_f64());
            code
        }
        Err(CliError::Usage(e)) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            CliError::Usage(e).exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
