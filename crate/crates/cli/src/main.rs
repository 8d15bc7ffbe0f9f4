use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    match randcube_cli::run(argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(randcube_cli::Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(randcube_cli::Failure::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}
