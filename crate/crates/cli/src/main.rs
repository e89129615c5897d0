use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = bgg_cli::run_args(std::env::args_os());
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(outcome.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("bgg: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code as u8)
}
