//! Finite groups, monomial coefficient modules, the bar resolution and the
//! ℓ¹-homology / bounded-cohomology pipelines.

mod bar;
mod equivariant;
mod finite;
mod module;

pub use bar::{
    bar_complex, bar_index, bar_label, bar_tuple, bounded_cohomology_of_group, induced_map, l1_homology_of_group,
    size_cap, tensor_coefficients, BarComplex, GroupHomology, GroupHomologyDegree, InducedMap, DEFAULT_SIZE_CAP,
};
pub use equivariant::{
    coinvariants, dual_identification, invariants, module_complex, quotient_norm_lp, Coinvariants,
    DualIdentification, EquivariantComplex, Invariants,
};
pub use finite::FiniteGroup;
pub use module::{MonomialAction, MonomialModule, OrbitData};
