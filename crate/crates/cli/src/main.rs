use std::process::ExitCode;

use clap::Parser;
use quasistab_cli::{emit, run, Cli, Verdict};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Verdict::InputError.exit_code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let envelope = run(&cli);
    if let Some(err) = &envelope.error {
        eprintln!("error: {err}");
    }
    if let Err(e) = emit(&cli, &envelope) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(Verdict::InputError.exit_code() as u8);
    }
    ExitCode::from(envelope.exit_code as u8)
}
