use std::process::ExitCode;

use qtoda::cli::{run, RunConfig};

fn main() -> ExitCode {
    let cfg = match RunConfig::parse_from(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => {
            if e.code == 0 {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            return ExitCode::from(e.code as u8);
        }
    };
    let out = run(&cfg);
    if let Some(msg) = &out.message {
        eprintln!("{msg}");
    }
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.output) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{}", out.output),
    }
    ExitCode::from(out.exit_code as u8)
}
