use std::io::Write;

fn main() {
    let (code, out) = zcs::cli::run(std::env::args_os());
    if !out.is_empty() {
        // a closed pipe is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{out}");
    }
    std::process::exit(code);
}
