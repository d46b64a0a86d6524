mod args;
mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::{CommandError, KravchukOutput};
use table::Table;

const EXIT_IDENTITY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("CS_MONOPOLE_THREADS") else {
        return Ok(());
    };
    let n: usize =
        raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            format!("CS_MONOPOLE_THREADS must be a positive integer, got {raw:?}")
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn write_table(table: &Table, format: Format, cli: &Cli) -> io::Result<()> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Csv => table.write_csv(&mut out)?,
        Format::Json => table.write_json(&mut out)?,
    }
    out.flush()
}

fn run(cli: &Cli) -> Result<u8, CommandError> {
    let mut status = 0;
    let mut default_format = Format::Csv;
    let table = match &cli.command {
        Command::Basis { level, grid } => commands::basis(level, grid)?,
        Command::Husimi { level, grid, state } => commands::husimi(level, grid, state)?,
        Command::Overlap {
            level,
            z,
            w,
            grid,
            backend,
        } => commands::overlap(level, z, w.as_deref(), grid.as_deref(), *backend)?,
        Command::Gram { level, identity } => commands::gram(level, *identity)?,
        Command::Wavefunction { level, p, z, form } => commands::wavefunction(level, p, z, *form)?,
        Command::Kravchuk {
            n,
            p,
            functions,
            matrix,
            spectrum,
            polynomials: _,
            backend,
        } => {
            let what = if *functions {
                KravchukOutput::Functions
            } else if *matrix {
                KravchukOutput::Matrix
            } else if *spectrum {
                KravchukOutput::Spectrum
            } else {
                KravchukOutput::Polynomials
            };
            commands::kravchuk(*n, p, what, *backend)?
        }
        Command::Verify { perturb } => {
            default_format = Format::Json;
            let (table, records) = commands::verify(*perturb)?;
            let failed: Vec<&str> = records
                .iter()
                .filter(|r| !r.pass)
                .map(|r| r.id.as_str())
                .collect();
            if !failed.is_empty() {
                eprintln!("failed identities: {}", failed.join(", "));
                status = EXIT_IDENTITY;
            }
            table
        }
    };
    write_table(&table, cli.format.unwrap_or(default_format), cli)
        .map_err(|e| CommandError::Usage(format!("cannot write output: {e}")))?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CommandError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
