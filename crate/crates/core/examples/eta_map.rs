//! The equivariant map from the antipodal icosahedron to the bar resolution
//! of Z/2, for two fundamental domains.
//!
//! Run with `cargo run --release --example eta_map`.

use chainlab::simplicial::{antipodal_icosahedron, eta_map};

fn main() -> chainlab::Result<()> {
    let (k, action) = antipodal_icosahedron()?;
    let first = action.propose_domain();
    let second: Vec<usize> = action.orbits().iter().map(|o| o[o.len() - 1]).collect();
    for domain in [&first, &second] {
        let eta = eta_map(&k, &action, domain)?;
        let norms: Vec<String> = eta.operator_norms.iter().map(|q| q.to_string()).collect();
        println!("domain {domain:?}");
        println!("  chain map {}, equivariant {}", eta.map.validate().is_valid(), eta.is_equivariant());
        println!("  operator norms [{}]", norms.join(", "));
        println!("  on H_0 of coinvariants {:?}", eta.on_coinvariant_homology(0)?.shape());
    }
    Ok(())
}
