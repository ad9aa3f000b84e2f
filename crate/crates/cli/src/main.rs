use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = starpcg_cli::run_cli(std::env::args().skip(1));
    if code == starpcg_cli::EXIT_OK || code == starpcg_cli::EXIT_INVALID {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    ExitCode::from(code as u8)
}
