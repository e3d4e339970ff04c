use std::process::ExitCode;

use gf_angular_cli::{config_path, parse_config, run, EXIT_USAGE};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let config = match config_path(&argv) {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: reading config {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        None => None,
    };
    let cfg = match parse_config(argv, config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => {
            if e.code == 0 {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
            }
            return ExitCode::from(e.code as u8);
        }
    };
    let code = run(&cfg, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
