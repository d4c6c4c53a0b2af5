//! Semi-norms of homology classes on the torus and the tetrahedron, each
//! computed twice: as an ℓ¹ minimum over representatives and as a supremum
//! over normalized cocycles.
//!
//! Run with `cargo run --release --example seminorm_duality`.

use chainlab::homology::{all_homology, gromov_duality};
use chainlab::rational::format_vec;
use chainlab::simplicial::fixtures;

fn main() -> chainlab::Result<()> {
    for (name, k) in [("boundary of tetrahedron", fixtures::tetra_boundary()), ("7-vertex torus", fixtures::torus7())] {
        let c = k.chain_complex(None)?;
        println!("{name}: dims {:?}", c.dims);
        for h in all_homology(&c)? {
            for alpha in h.basis_classes() {
                let r = gromov_duality(&c, &alpha)?;
                println!(
                    "  degree {} class: min = {}, sup = {}, agree = {}",
                    alpha.degree, r.primal_seminorm, r.dual_sup, r.agree
                );
                if let Some(phi) = r.certificate.filter(|v| v.len() <= 6) {
                    println!("    extremal cocycle {:?}", format_vec(&phi));
                }
            }
        }
    }
    Ok(())
}
