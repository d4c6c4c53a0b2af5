//! Regenerates the bundled data files under `data/` from the library
//! fixtures.
//!
//! `cargo run --example build_corpus [DATA_DIR]`

use std::path::PathBuf;

fn main() -> chainlab::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    let written = chainlab::cli::bundled::write_bundled_data(&dir)?;
    for p in &written {
        println!("{}", p.display());
    }
    eprintln!("{} files", written.len());
    Ok(())
}
