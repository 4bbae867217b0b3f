use std::io::{self, Write};
use std::process::ExitCode;

mod args;
mod commands;
mod render;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code =
        commands::main_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    ExitCode::from(code)
}
