use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    match legch::cli::execute(&refs) {
        Ok((outcome, format)) => {
            print!("{}", outcome.rendered(format));
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(msg) => {
            eprint!("{msg}");
            ExitCode::from(legch::cli::EXIT_INPUT as u8)
        }
    }
}
