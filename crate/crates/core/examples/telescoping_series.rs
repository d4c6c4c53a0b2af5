//! Partial sums b̄_K = Σ_{k<K} f^k(b)/d^k for a degree-d self-map, with the
//! identity ∂b̄_K = z − f^K(z)/d^K checked at every step.
//!
//! Run with `cargo run --release --example telescoping_series`.

use chainlab::simplicial::{doubling_circle4, invisibility_series, perturbed_doubling};

fn main() -> chainlab::Result<()> {
    for (name, inst) in [("doubling", doubling_circle4()?), ("perturbed", perturbed_doubling()?)] {
        let r = invisibility_series(&inst.map, inst.degree, &inst.z, inst.d, &inst.b, 10)?;
        let norms: Vec<String> = r.term_norms.iter().map(|q| q.to_string()).collect();
        println!("{name}: d = {}, identity exact for K ≤ 10: {}", r.d, r.identity_exact());
        println!("  term norms {}", norms.join(", "));
        if let Some(q) = &r.max_ratio {
            println!("  largest ratio {q}, geometric decay {}", r.observed_geometric_decay());
        }
    }
    Ok(())
}
