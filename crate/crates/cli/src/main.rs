use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gauss_css::doc::{CodeReport, CssReport, CssSpec, FieldReport, FieldSpec, RunSpec};
use gauss_css::qudit::{run_css_protocol, STATE_CAP};
use gauss_css::table::{reproduce_table, InterpretationChoice};
use gauss_css::{Error, ProtocolMode, SearchOptions};
use serde::de::DeserializeOwned;
use serde::Serialize;

mod render;

use render::SimulateReport;

#[derive(Debug, Parser)]
#[command(name = "gauss-css", version, about = "Mannheim-metric codes over Gaussian integers and their CSS quantum codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input document (`-` for stdin).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    /// Enumeration cap for distance searches.
    #[arg(long, global = true, default_value_t = gauss_css::code::DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,

    /// Worker threads for distance searches (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Table column interpretation.
    #[arg(long, global = true, value_enum, default_value_t = Interp::Both)]
    interpretation: Interp,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Residue set, weights, α pair and factorization checks of a field.
    Field,
    /// Parameters of a linear code.
    Code,
    /// Parameters of a CSS code built from a nested pair.
    Css,
    /// Reproduction report for the built-in comparison table.
    Table,
    /// Run the CSS correction protocol; exits nonzero unless corrected.
    Simulate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Interp {
    A,
    B,
    Both,
}

impl From<Interp> for InterpretationChoice {
    fn from(i: Interp) -> Self {
        match i {
            Interp::A => InterpretationChoice::A,
            Interp::B => InterpretationChoice::B,
            Interp::Both => InterpretationChoice::Both,
        }
    }
}

fn read_spec<T: DeserializeOwned>(path: Option<&Path>) -> Result<T> {
    let path = path.context("this command needs --spec <path>")?;
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).map_err(|e| {
        anyhow::anyhow!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())
    })
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    let out = match format {
        Format::Structured => serde_json::to_string_pretty(report)? + "\n",
        Format::Text => text(report),
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let opts = match cli.workers {
        Some(w) => SearchOptions::with_workers(cli.cap, w as usize),
        None => SearchOptions { cap: cli.cap, ..SearchOptions::default() },
    };
    let spec = cli.spec.as_deref();
    match cli.command {
        Command::Field => {
            let spec: FieldSpec = read_spec(spec)?;
            emit(cli.format, &FieldReport::new(&spec.build()?), render::field)?;
        }
        Command::Code => {
            let spec: gauss_css::doc::CodeSpec = read_spec(spec)?;
            let code = spec.build()?;
            emit(cli.format, &CodeReport::new(&code, &opts)?, render::code)?;
        }
        Command::Css => {
            let spec: CssSpec = read_spec(spec)?;
            let css = spec.build(&opts)?;
            emit(cli.format, &CssReport::new(&css), render::css)?;
        }
        Command::Table => {
            let report = reproduce_table(cli.interpretation.into(), &opts)?;
            emit(cli.format, &report, render::table)?;
        }
        Command::Simulate => {
            let spec: RunSpec = read_spec(spec)?;
            let css = spec.css.build(&opts)?;
            let x = spec.codeword(&css)?;
            let (e1, e2) = spec.errors();
            let (_, transcript) = match run_css_protocol(&css, &x, &e1, &e2, spec.mode) {
                Err(Error::StateTooLarge { size, .. }) if spec.mode == ProtocolMode::Full => bail!(
                    "full-state simulation needs {size} amplitudes, above the cap of {STATE_CAP}; \
                     set \"mode\": \"syndrome-only\" to run the classical syndrome path"
                ),
                other => other?,
            };
            let corrected = transcript.corrected;
            let report = SimulateReport { n: css.n(), k: css.k(), x, e1, e2, transcript };
            emit(cli.format, &report, render::simulate)?;
            return Ok(corrected);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
