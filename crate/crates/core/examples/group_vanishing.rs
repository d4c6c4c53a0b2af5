//! ℓ¹-homology and bounded cohomology of small finite groups vanish in
//! positive degrees, for trivial and sign-twisted coefficients.
//!
//! Run with `cargo run --release --example group_vanishing`.

use std::sync::Arc;
use std::time::Instant;

use chainlab::group::{bounded_cohomology_of_group, l1_homology_of_group, FiniteGroup, MonomialModule};

fn main() -> chainlab::Result<()> {
    let z2 = FiniteGroup::cyclic(2);
    // Z/3 has no nontrivial sign character; its regular module is used instead.
    let groups = [
        ("Z/2", FiniteGroup::cyclic(2), Some(vec![1, -1])),
        ("Z/3", FiniteGroup::cyclic(3), None),
        ("Z/4", FiniteGroup::cyclic(4), Some(vec![1, -1, 1, -1])),
        ("Z/2xZ/2", FiniteGroup::product(&z2, &z2), Some(vec![1, -1, 1, -1])),
        ("S3", FiniteGroup::symmetric3(), Some(vec![1, -1, -1, 1, 1, -1])),
    ];
    for (name, g, character) in groups {
        let g = Arc::new(g);
        let twisted = match character {
            Some(chi) => ("sign", MonomialModule::sign(&g, &chi)?),
            None => ("regular", MonomialModule::regular(&g)),
        };
        for (label, v) in [("trivial", MonomialModule::trivial_line(&g)), twisted] {
            let start = Instant::now();
            let h = l1_homology_of_group(&g, &v, 3)?;
            let b = bounded_cohomology_of_group(&g, &v, 3)?;
            let dims = |x: &chainlab::group::GroupHomology| {
                x.reliable().map(|d| d.dimension.to_string()).collect::<Vec<_>>().join(" ")
            };
            println!(
                "{name:8} {label:8} l1H = [{}]  H_b = [{}]  ({:.2?})",
                dims(&h),
                dims(&b),
                start.elapsed()
            );
        }
    }
    Ok(())
}
