use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = filiform_cli::run_from(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    match &result.json {
        Some(json) => {
            let _ = writeln!(stdout, "{json}");
            if !result.report.is_empty() {
                let _ = writeln!(stderr, "{}", result.report.trim_end());
            }
        }
        None if result.status == filiform_cli::EXIT_OK => {
            let _ = writeln!(stdout, "{}", result.report.trim_end());
        }
        None => {
            let _ = writeln!(stderr, "{}", result.report.trim_end());
        }
    }
    ExitCode::from(result.status as u8)
}
