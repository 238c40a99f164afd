//! Command-line front end: config loading, subcommand dispatch and output.
//!
//! Exit codes: 0 on success, 2 for a bad command line or config, 3 for a
//! numerical failure, 4 for a filesystem error. Every failure also prints
//! a one-line JSON record on stderr.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::fs;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use config::RunConfig;
use error::{CliError, CliResult, EXIT_USAGE};
use output::{Format, Writer};

fn load_config(cli: &Cli) -> CliResult<RunConfig> {
    match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(CliError::io(path.display().to_string()))?;
            Ok(config::parse_config(&text)?)
        }
        None => {
            let mut c = RunConfig::default();
            c.apply_defaults();
            Ok(c)
        }
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    let mut cfg = load_config(&cli)?;
    if cli.explain_defaults {
        print!("{}", config::explain_defaults());
        return Ok(());
    }
    let cmd = match (&cli.command, &cfg.subcommand) {
        (Some(c), _) => c.clone(),
        (None, Some(name)) => {
            Command::from_name(name).ok_or_else(|| CliError::Usage(format!("unknown subcommand {name:?}")))?
        }
        (None, None) => return Err(CliError::Usage("no subcommand given; see --help".into())),
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        hhsim::parallel::set_threads(n);
    }
    cmd.apply(&mut cfg);
    cfg.validate()?;

    let format = cli.format.or(cfg.format).unwrap_or(Format::Csv);
    let bundle = commands::execute(&cmd, &cfg)?;
    let mut writer = Writer::new(&cli.out, format);
    for (dir, artifacts) in &bundle {
        writer.emit(dir.as_deref(), artifacts)?;
    }
    let files = writer.finish(cmd.name())?;
    for f in &files {
        println!("{}", cli.out.join(&f.path).display());
    }
    println!("{}", cli.out.join("manifest.json").display());
    Ok(())
}

fn report(e: &CliError) -> u8 {
    eprintln!("error: {e}");
    eprintln!("{}", e.record());
    e.exit_code()
}

/// Run with the given arguments (the first is the program name) and
/// return the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let _ = e.print();
            let record = serde_json::json!({
                "error": "usage",
                "exit_code": EXIT_USAGE,
                "message": e.kind().to_string(),
            });
            eprintln!("{record}");
            return EXIT_USAGE;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => report(&e),
    }
}
