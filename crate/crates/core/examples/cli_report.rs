//! Drives the command-line front end in-process and prints its JSON report.
//!
//! Run with `cargo run --release --example cli_report`.

use chainlab::cli::{default_corpus, run};

fn main() {
    let tetra = default_corpus().join("complexes").join("boundary_tetra.json");
    let out = run(["chainlab", "--format", "text", "duality-check", tetra.to_str().unwrap()]);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
