use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(selkit::cli::run(std::env::args_os()))
}
