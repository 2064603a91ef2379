//! Command-line interface. Exit codes: 0 pass, 1 a check failed, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::padic_fields::{class_of_integer, hilbert_symbol, make_base};
use crate::report::{run_suite, Record, Report, SuiteArgs, Verdict};
use crate::tables::{builtin_tables, computed_tables, diff_tables, inject_wrong_row, render_diff};

#[derive(Debug, Parser)]
#[command(
    name = "quadchar",
    version,
    about = "Checks quadratic character identities for tame tori over p-adic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render the five per-orbit tables and diff them against the transcriptions.
    Tables {
        #[arg(long)]
        json: bool,
        /// Corrupt one computed row before diffing.
        #[arg(long)]
        inject_wrong_row: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        /// Write the JSON report to this path.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Hilbert symbol `(a, b)` over `Q_p`.
    Hilbert {
        #[arg(long)]
        p: u64,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Unramified,
    Sl2,
    Gl2,
    Gln,
    Un,
    Torus,
    Hilbert,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Unramified => "unramified",
            Suite::Sl2 => "sl2",
            Suite::Gl2 => "gl2",
            Suite::Gln => "gln",
            Suite::Un => "un",
            Suite::Torus => "torus",
            Suite::Hilbert => "hilbert",
            Suite::All => "all",
        }
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    ExitCode::from(run_with(args, &mut out, &mut err))
}

/// Runs the CLI against the given streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Tables {
            json,
            inject_wrong_row,
        } => cmd_tables(json, inject_wrong_row, out),
        Command::Verify { suite, p, n, json } => cmd_verify(suite, SuiteArgs { p, n }, json, out),
        Command::Hilbert { p, a, b } => cmd_hilbert(p, a, b, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("i/o: {e}"))
}

fn cmd_tables(as_json: bool, inject: bool, out: &mut dyn Write) -> Result<u8, Error> {
    let expected = builtin_tables();
    let mut got = computed_tables();
    if inject {
        inject_wrong_row(&mut got);
    }
    let diffs = diff_tables(&expected, &got);
    if as_json {
        let mut records = Vec::new();
        for (e, g) in expected.iter().zip(&got) {
            for row in 0..e.rows.len().max(g.rows.len()) {
                let (er, gr) = (e.rows.get(row), g.rows.get(row));
                records.push(Record {
                    id: format!("table{}/row{:02}", e.id, row + 1),
                    inputs: json!({"table": e.id, "row": row + 1}),
                    expected: json!(er),
                    got: json!(gr),
                    verdict: if er == gr {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    },
                });
            }
        }
        writeln!(out, "{}", Report::new("tables", records).to_json()).map_err(io)?;
    } else {
        for t in &got {
            writeln!(out, "{}", t.render()).map_err(io)?;
        }
        let counts: Vec<String> = got.iter().map(|t| t.rows.len().to_string()).collect();
        writeln!(out, "rows: {}", counts.join("+")).map_err(io)?;
        if diffs.is_empty() {
            writeln!(out, "diff: none").map_err(io)?;
        } else {
            write!(out, "diff: {} row(s)\n{}", diffs.len(), render_diff(&diffs)).map_err(io)?;
        }
    }
    Ok(if diffs.is_empty() { 0 } else { 1 })
}

fn cmd_verify(
    suite: Suite,
    args: SuiteArgs,
    json_path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<u8, Error> {
    let report = run_suite(suite.name(), args)?;
    for r in &report.records {
        let tag = match r.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        writeln!(out, "{tag} {}", r.id).map_err(io)?;
    }
    writeln!(
        out,
        "{}: {} passed, {} failed",
        report.suite, report.summary.pass, report.summary.fail
    )
    .map_err(io)?;
    if let Some(path) = json_path {
        std::fs::write(&path, report.to_json()).map_err(io)?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_hilbert(p: u64, a: i64, b: i64, out: &mut dyn Write) -> Result<u8, Error> {
    let f = make_base(p)?;
    let ca = class_of_integer(p, a)?;
    let cb = class_of_integer(p, b)?;
    let s = hilbert_symbol(&f, ca, cb);
    writeln!(out, "{}", if s == 1 { "+1" } else { "-1" }).map_err(io)?;
    Ok(0)
}
