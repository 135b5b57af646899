use std::io::Write;

fn main() {
    let out = nlie_cli::run_command(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
