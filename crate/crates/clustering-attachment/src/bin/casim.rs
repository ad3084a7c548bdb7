use std::process::ExitCode;

fn main() -> ExitCode {
    match clustering_attachment::cli::run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
