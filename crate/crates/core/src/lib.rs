//! Exact-arithmetic normed chain complexes.
//!
//! `chainlab` works with finite chain complexes of rational vector spaces
//! carrying weighted ℓ¹ / ℓ∞ norms. It computes homology and the induced
//! semi-norms by exact linear programming, builds duals and mapping cones,
//! resolves finite groups by the bar construction, and produces
//! simplicial-volume upper bounds for triangulated manifolds. Every identity
//! is checked with zero tolerance.

pub mod complex;
pub mod cli;
pub mod cone;
pub mod error;
pub mod group;
pub mod homology;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod random;
pub mod rational;
pub mod simplicial;

pub use complex::{ChainMap, NormKind, NormSpec, NormedComplex, Orientation};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Rational;
