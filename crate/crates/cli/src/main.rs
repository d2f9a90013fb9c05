use std::io::Write;
use std::process::ExitCode;

use arith_torsion_cli::{run, Cli, CliError, JobSpec, Output};
use clap::Parser;

fn emit(text: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io {
            path: p.to_path_buf(),
            message: e.to_string(),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = JobSpec {
        command: cli.command,
        seed: cli.seed,
        output: cli.output,
    };
    let result = run(&job, cli.timing).and_then(|outcome| {
        let text = match &outcome.output {
            Output::Record(r) => serde_json::to_string_pretty(r).expect("record serializes") + "\n",
            Output::Csv(s) => s.clone(),
        };
        emit(&text, job.output.as_deref())?;
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
