use std::io::{Read, Write};

fn main() {
    let (code, out) = addiso_cli::run_args(std::env::args_os(), || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    });
    if code == addiso_cli::EXIT_OK {
        let _ = std::io::stdout().write_all(out.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(out.as_bytes());
    }
    std::process::exit(code);
}
