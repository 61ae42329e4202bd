use std::io::Write;

fn main() {
    tforge::cli::init_threads();
    let (out, code) = tforge::cli::run(std::env::args_os());
    if code == 2 && !out.trim_start().starts_with('{') {
        eprint!("{out}");
    } else {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(out.as_bytes());
    }
    std::process::exit(code);
}
