use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut out = String::new();
    let code = hallq::cli::run(&args, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    std::process::exit(code);
}
