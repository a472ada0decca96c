use std::io::Write;

use clap::Parser;

use oddpts_cli::{run, Cli, Format, Settings};

fn main() {
    let cli = Cli::parse();
    let settings = match Settings::resolve(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    if let Some(j) = settings.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .expect("rayon pool already initialized");
    }
    match run(&cli, &settings) {
        Ok(report) => {
            let out = match settings.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            // timed-out checks may still be running on detached threads
            std::process::exit(if report.passed() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
