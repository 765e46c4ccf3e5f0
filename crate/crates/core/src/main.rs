use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = charvar::cli::run(std::env::args_os());
    let written = if inv.to_stderr {
        std::io::stderr().write_all(inv.output.as_bytes())
    } else {
        std::io::stdout().write_all(inv.output.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(inv.exit_code as u8)
}
