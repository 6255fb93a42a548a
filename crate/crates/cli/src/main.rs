mod args;
mod commands;
mod preset;
mod report;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{ComputeFailure, UsageError};

const EXIT_USAGE: u8 = 2;
const EXIT_COMPUTE: u8 = 3;
const EXIT_OTHER: u8 = 1;

fn parse(argv: &[OsString]) -> Result<Cli, ExitCode> {
    Cli::try_parse_from(argv).map_err(|e| {
        let _ = e.print();
        ExitCode::from(e.exit_code() as u8)
    })
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let preset = cli.preset.as_deref();
    let report = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, preset)?,
        Command::Impulse(a) => commands::impulse(a, preset)?,
        Command::Eye(a) => commands::eye(a, preset)?,
        Command::Ber(a) => commands::ber(a, preset)?,
    };
    let base = report::output_base(cli.out.as_deref(), cli.command.name());
    for path in report.write(&base, cli.format.unwrap_or_default())? {
        println!("{}", path.display());
    }
    if let Command::Eye(_) = cli.command {
        for row in &report.tables[0].rows {
            if let [report::Cell::Text(id), report::Cell::Num(w), report::Cell::Num(d), ..] =
                row.as_slice()
            {
                println!("{id:<12} eye_width {w:.5}  max_distortion {d:.5}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let mut cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    if let Some(path) = cli.preset.clone() {
        let name = cli.command.name();
        let extra = match preset::load(&path, name) {
            Ok(extra) => extra,
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
        };
        cli = match parse(&preset::splice(&argv, name, extra)) {
            Ok(cli) => cli,
            Err(code) => return code,
        };
    }

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else if e.downcast_ref::<ComputeFailure>().is_some() {
                ExitCode::from(EXIT_COMPUTE)
            } else {
                ExitCode::from(EXIT_OTHER)
            }
        }
    }
}
