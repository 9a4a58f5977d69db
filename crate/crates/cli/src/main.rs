use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = ghzn_cli::run_args(std::env::args_os());
    if let Some(msg) = outcome.json.get("error").and_then(|v| v.as_str()) {
        eprintln!("ghzn: {msg}");
    }
    match outcome.json.get("help").and_then(|v| v.as_str()) {
        Some(help) => out(help.to_string()),
        None => out(serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n"),
    }
    ExitCode::from(outcome.code as u8)
}

// A closed pipe (`ghzn ... | head`) is not worth a panic.
fn out(text: String) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
