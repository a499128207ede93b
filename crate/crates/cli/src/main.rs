use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use metahecke_cli::{execute, parse_config, render, Format};

/// Metaplectic Hecke algebra combinatorics: Kazhdan-Lusztig bases,
/// Demazure-Lusztig operators, straightening, canonical bases and twisted
/// Littlewood-Richardson polynomials.
///
/// Jobs are read from a config of `key=value` pairs; separate jobs with a
/// line containing `---`. Exit status is 0 on success, 2 on parse or
/// validation errors and 3 on computation errors.
#[derive(Parser, Debug)]
#[command(name = "metahecke", version)]
struct Args {
    /// Config file; standard input when omitted or `-`.
    config: Option<PathBuf>,
    /// Inline config text instead of a file.
    #[arg(short = 'e', long = "expr", conflicts_with = "config")]
    expr: Option<String>,
    /// Override the output format of every job.
    #[arg(long, value_parser = ["table", "records"])]
    format: Option<String>,
}

fn read_input(args: &Args) -> io::Result<String> {
    if let Some(e) = &args.expr {
        return Ok(e.clone());
    }
    match &args.config {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read config: {e}");
            return ExitCode::from(2);
        }
    };
    let jobs = match parse_config(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let format_override = args.format.as_deref().and_then(Format::parse);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut status = 0;
    for (i, job) in jobs.iter().enumerate() {
        match execute(job) {
            Ok(records) => {
                let text = render(&records, format_override.unwrap_or(job.format));
                if out.write_all(text.as_bytes()).is_err() {
                    return ExitCode::from(1);
                }
            }
            Err(e) => {
                eprintln!("error in job {}: {e}", i + 1);
                status = status.max(e.exit_code());
            }
        }
    }
    let _ = out.flush();
    ExitCode::from(status as u8)
}
