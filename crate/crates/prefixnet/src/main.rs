use std::io::Write;

fn main() {
    let out = prefixnet::run(std::env::args(), &mut std::io::stdin().lock());
    // Ignore broken pipes; there is nobody left to report to.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
