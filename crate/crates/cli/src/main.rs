use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hhsim_cli::run(std::env::args_os()))
}
