use std::process::ExitCode;

fn main() -> ExitCode {
    casimir_cli::app::run(std::env::args_os())
}
