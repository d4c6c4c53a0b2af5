//! Fundamental cycles and LP upper bounds on simplicial volume for the
//! bundled triangulations, plus the orientation obstruction on RP².
//!
//! Run with `cargo run --release --example simplicial_volume`.

use chainlab::simplicial::{fixtures, fundamental_cycle, sv_upper_bound};
use chainlab::Error;

fn main() -> chainlab::Result<()> {
    let subdivided = fixtures::barycentric_subdivision(&fixtures::tetra_boundary());
    let surfaces = [
        ("tetrahedron", fixtures::tetra_boundary()),
        ("subdivided tetrahedron", subdivided),
        ("icosahedron", fixtures::icosahedron()),
        ("7-vertex torus", fixtures::torus7()),
    ];
    for (name, k) in surfaces {
        let sv = sv_upper_bound(&k)?;
        println!(
            "{name:24} {:3} triangles  bound {}  (fundamental cycle norm {})",
            k.count(k.dimension()),
            sv.upper_bound,
            sv.fundamental_cycle_norm
        );
    }
    match fundamental_cycle(&fixtures::rp2()) {
        Err(Error::NonOrientable { witness }) => println!("RP²: orientation flips around triangles {witness:?}"),
        other => println!("RP²: unexpected {other:?}"),
    }
    Ok(())
}
