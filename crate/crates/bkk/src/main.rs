use std::path::PathBuf;
use std::process::ExitCode;

use bkk::cli::{run_from, CliFailure, REPORT_DIR_VAR};

const USAGE_EXIT: u8 = 2;

fn main() -> ExitCode {
    let report_dir = std::env::var_os(REPORT_DIR_VAR).map(PathBuf::from);
    let outcome = match run_from(std::env::args_os(), report_dir) {
        Ok(o) => o,
        Err(CliFailure::Parse(e)) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_EXIT } else { 0 });
        }
        Err(CliFailure::Usage(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    };
    for check in &outcome.report.checks {
        let note = if check.required { "" } else { " (informational)" };
        eprintln!("{} {}{note}", check.status.label(), check.name);
    }
    let json = outcome.report.to_json();
    match &outcome.destination {
        Some(path) => {
            if let Err(e) = write_report(path, &json) {
                eprintln!("error: {e}");
                return ExitCode::from(USAGE_EXIT);
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(outcome.exit_code() as u8)
}

fn write_report(path: &std::path::Path, json: &str) -> Result<(), bkk::error::OutputError> {
    let io = |source| bkk::error::OutputError::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, json).map_err(io)
}
