use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use spintft::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, code) = execute(&cli);
    if let Some(msg) = output.get("error").and_then(|e| e.get("message")).and_then(|m| m.as_str()) {
        eprintln!("spintft: {msg}");
    }
    let text = serde_json::to_string_pretty(&output).expect("serializable");
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code as u8)
}
