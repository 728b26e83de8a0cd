use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<_> = std::env::args_os().collect();
    let porcelain = args.iter().any(|a| a == "--porcelain");
    let report = spectra_cli::run(args);

    let text = spectra_cli::render(&report, porcelain);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    if let (Some(name), Some(message)) = (&report.error, &report.message) {
        if !porcelain {
            eprintln!("error: {name}: {}", message.lines().next().unwrap_or(""));
        }
    }
    ExitCode::from(report.exit_code.clamp(0, 255) as u8)
}
