use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = monodromy_cli::run(std::env::args_os());
    // stdout is written in one piece, and only on success
    if !outcome.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        if out.write_all(outcome.stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
            return ExitCode::FAILURE;
        }
    }
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}
