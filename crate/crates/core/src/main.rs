use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let status = forest_partition::cli::run_command(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(status.code())
}
