use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use treefrac_cli::{execute, exit, Cli, CliError, Config};

fn run() -> Result<i32, CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.print()?;
            return Ok(exit::OK);
        }
        // usage errors are parse errors, not clap's default exit status 2
        Err(e) => {
            let msg = e.render().to_string();
            return Err(CliError::Parse(msg.trim_start_matches("error: ").trim_end().to_string()));
        }
    };
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Other(anyhow::anyhow!("thread pool: {e}")))?;
    }
    let cfg = Config::load(cli.config.as_deref())?;
    let run = execute(&cli, &cfg)?;
    let text = serde_json::to_string_pretty(&run.record).expect("records serialize");
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    println!("{text}");
    Ok(run.code)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("treefrac: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
