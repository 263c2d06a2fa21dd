use std::io::Write;

use poisson_core::cli;

fn main() {
    if let Some(n) = std::env::var("POISSON_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // an explicit count of 0 keeps rayon's default
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
