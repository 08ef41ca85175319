use std::process::exit;

fn main() {
    exit(p3vc::cli::run(std::env::args()));
}
