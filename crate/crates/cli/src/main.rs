use std::process::ExitCode;

use bouncer_cli::{run, Cli};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(manifest) => {
            for path in &manifest.outputs {
                println!("{}", cli.out_dir.join(path).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bouncer: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
