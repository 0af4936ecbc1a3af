use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = hoops::cli::run(std::env::args_os());
    if code == 0 || code == 1 || code == 2 {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
