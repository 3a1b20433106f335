use std::process::ExitCode;

fn main() -> ExitCode {
    polydiag::cli::main_with(std::env::args().collect())
}
