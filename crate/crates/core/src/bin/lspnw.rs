use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(lspnw::cli::run_cli(std::env::args_os()) as u8)
}
