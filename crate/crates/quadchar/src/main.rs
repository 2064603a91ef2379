use std::process::ExitCode;

fn main() -> ExitCode {
    quadchar::cli::run(std::env::args_os())
}
