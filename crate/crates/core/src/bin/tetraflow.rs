use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tetraflow::cli::run(std::env::args_os()) as u8)
}
