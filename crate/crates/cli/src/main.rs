use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = omegacat_cli::run(std::env::args_os());
    if code == 2 {
        eprintln!("{out}");
    } else if !out.is_empty() {
        println!("{out}");
    }
    ExitCode::from(code as u8)
}
