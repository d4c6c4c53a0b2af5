//! Simplicial complexes, fundamental cycles, simplicial-volume upper
//! bounds, the prism operator, the degree-`d` self-map series and the η map
//! of a free group action.

mod action;
mod complex;
pub mod fixtures;
mod fundamental;
mod prism;
mod series;

pub use action::{antipodal_icosahedron, eta_map, relabel_by_orbit, EtaMap, SimplicialAction};
pub use complex::{simplicial_chain_map, sort_with_sign, SimplicialComplex};
pub use fundamental::{
    check_pseudo_manifold, fundamental_cycle, is_orientation_obstruction, orient, sv_upper_bound, FundamentalCycle,
    SvBound,
};
pub use prism::{prism, product_with_interval, Prism};
pub use series::{doubling_circle4, invisibility_series, perturbed_doubling, SeriesInstance, SeriesReport};
