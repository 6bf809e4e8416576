use std::io::Write;

fn main() {
    let (out, code) = zxl::cli::main_with(std::env::args_os());
    let mut stdout = std::io::stdout();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    std::process::exit(code);
}
