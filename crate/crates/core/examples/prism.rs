//! The prism chain on K × [0,1] joining a cycle to its translate, with the
//! bound ‖b‖ ≤ (n+1)·‖z‖ for an n-cycle.
//!
//! Run with `cargo run --release --example prism`.

use chainlab::simplicial::{fixtures, fundamental_cycle, prism};

fn main() -> chainlab::Result<()> {
    for (name, k) in [("circle", fixtures::circle(3)), ("tetrahedron", fixtures::tetra_boundary()), ("torus", fixtures::torus7())] {
        let z = fundamental_cycle(&k)?;
        let p = prism(&k, z.dimension, &z.coefficients)?;
        println!(
            "{name:12} ‖z‖ = {:3}  ‖b‖ = {:3}  ∂b = top - bottom: {}  bound holds: {}",
            p.cycle_norm,
            p.b_norm,
            p.boundary_identity,
            p.norm_bound_holds()
        );
    }
    Ok(())
}
