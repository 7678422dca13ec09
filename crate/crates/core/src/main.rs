use std::io::Write;

fn main() {
    let (code, text) = clusterdt::cli::run(std::env::args_os());
    let _ = if code == 1 { std::io::stderr().write_all(text.as_bytes()) } else { std::io::stdout().write_all(text.as_bytes()) };
    std::process::exit(code);
}
