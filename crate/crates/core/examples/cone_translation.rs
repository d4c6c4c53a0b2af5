//! Mapping cones decide whether a chain map is a homology isomorphism; the
//! dual map decides the same thing on cohomology, and isometry of the dual
//! transfers back.
//!
//! Run with `cargo run --release --example cone_translation`.

use std::sync::Arc;

use chainlab::complex::ChainMap;
use chainlab::cone::{cone, translation_check, ExhaustiveLimits};
use chainlab::rational::int;
use chainlab::simplicial::{fixtures, simplicial_chain_map};

fn main() -> chainlab::Result<()> {
    let circle = Arc::new(fixtures::circle(3).chain_complex(None)?);
    let maps = [
        ("identity on the circle", ChainMap::identity(circle.clone())),
        ("doubling on the circle", ChainMap::scalar(circle, &int(2))),
        ("circle into the disk", simplicial_chain_map(&fixtures::circle(3), &fixtures::filled_triangle(), &[0, 1, 2])?),
    ];
    for (name, f) in maps {
        let k = cone(&f)?;
        let r = translation_check(&f, &[], Some(ExhaustiveLimits::default()))?;
        println!("{name}");
        println!("  cone dims {:?}, acyclic {}", k.complex.dims, k.is_acyclic()?);
        println!("  homology iso {}, cohomology iso {}", r.homology_iso.direct, r.cohomology_iso.direct);
        println!("  dual isometric on probes {}, transferred claim {:?}", r.hypothesis_isometric, r.part2_verified);
        if let Some(ex) = r.exhaustive {
            println!("  unit-ball check: dual {}, map {:?}", ex.hypothesis_isometric, ex.conclusion_isometric);
        }
    }
    Ok(())
}
