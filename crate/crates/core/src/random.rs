//! Seeded generators of random complexes, chain maps and classes.
//!
//! Everything is driven by a [`ChaCha8Rng`], so a seed reproduces the same
//! objects on every platform.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::complex::{ChainMap, NormSpec, NormedComplex, Orientation};
use crate::homology::{self, HomologyClass};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integers with many zeros, so ranks vary.
fn entry(rng: &mut Rng8) -> Rational {
    let v: i64 = match rng.gen_range(0..10) {
        0..=4 => 0,
        5 | 6 => 1,
        7 | 8 => -1,
        _ => rng.gen_range(-3..=3),
    };
    rational::int(v)
}

fn random_matrix(rng: &mut Rng8, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| entry(rng))
}

fn weight(rng: &mut Rng8) -> Rational {
    const W: [(i64, i64); 6] = [(1, 1), (1, 1), (2, 1), (1, 2), (3, 1), (2, 3)];
    let (n, d) = W[rng.gen_range(0..W.len())];
    rational::rat(n, d)
}

/// A random ℓ¹ chain complex with degrees `0..=top` and dimensions in
/// `0..=max_dim`. `∂_{n+1}` is built as `K·R` with `K` a kernel basis of
/// `∂_n`, so `∂² = 0` holds by construction.
pub fn random_complex(rng: &mut Rng8, max_dim: usize, top: usize) -> NormedComplex {
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut maps: Vec<Matrix> = Vec::new();
    for n in 1..=top {
        let m = if n == 1 {
            random_matrix(rng, dims[0], dims[1])
        } else {
            let k = maps[n - 2].kernel();
            k.mul(&random_matrix(rng, k.cols(), dims[n]))
        };
        maps.push(m);
    }
    let norms = dims.iter().map(|&d| NormSpec::l1((0..d).map(|_| weight(rng)).collect())).collect();
    NormedComplex::new(Orientation::Homological, dims, maps, norms)
}

/// A random nonzero homology class, if the complex has homology: a random
/// combination of basis classes plus a random boundary.
pub fn random_class(rng: &mut Rng8, c: &NormedComplex) -> Option<HomologyClass> {
    let candidates: Vec<usize> =
        (0..=c.top_degree()).filter(|&n| homology::homology(c, n).is_ok_and(|h| h.dimension > 0)).collect();
    if candidates.is_empty() {
        return None;
    }
    let n = candidates[rng.gen_range(0..candidates.len())];
    let h = homology::homology(c, n).ok()?;
    let mut coords: Vec<Rational> = (0..h.dimension).map(|_| entry(rng)).collect();
    if coords.iter().all(|x| *x == rational::zero()) {
        coords[0] = rational::one();
    }
    let mut rep = h.representative(&coords);
    let inc = c.incoming(n);
    let b: Vec<Rational> = (0..inc.cols()).map(|_| entry(rng)).collect();
    for (r, x) in rep.iter_mut().zip(inc.mul_vec(&b)) {
        *r += x;
    }
    Some(HomologyClass { degree: n, representative: rep })
}

/// `A ⊕ B` as one complex.
fn direct_sum(a: &NormedComplex, b: &NormedComplex) -> NormedComplex {
    let top = a.top_degree();
    let dims: Vec<usize> = (0..=top).map(|n| a.dim(n) + b.dim(n)).collect();
    let maps = (0..top)
        .map(|k| {
            Matrix::block(
                &a.maps[k],
                &Matrix::zeros(a.maps[k].rows(), b.maps[k].cols()),
                &Matrix::zeros(b.maps[k].rows(), a.maps[k].cols()),
                &b.maps[k],
            )
        })
        .collect();
    let norms = (0..=top).map(|n| a.norm(n).direct_sum(b.norm(n)).expect("both ℓ¹")).collect();
    NormedComplex::new(Orientation::Homological, dims, maps, norms)
}

fn homotopy_term(c: &NormedComplex, d: &NormedComplex, h: &[Matrix], n: usize) -> Matrix {
    // ∂^D_{n+1} H_n + H_{n-1} ∂^C_n, with H_n: C_n -> D_{n+1}
    let top = c.top_degree();
    let mut m = Matrix::zeros(d.dim(n), c.dim(n));
    if n < top {
        m = m.add(&d.maps[n].mul(&h[n]));
    }
    if n >= 1 {
        m = m.add(&h[n - 1].mul(&c.maps[n - 1]));
    }
    m
}

/// A random chain map with a controlled homology behaviour.
///
/// With `C`, `E` random, the map is one of `λ·ι: C -> C ⊕ E`,
/// `λ·π: C ⊕ E -> C` or `λ·id_C` (λ ∈ {0, ±1, 2}), plus `∂H + H∂` for a
/// random `H`. Whether it is a homology isomorphism depends on λ and on the
/// homology of `E`.
pub fn random_chain_map(rng: &mut Rng8, max_dim: usize, top: usize) -> ChainMap {
    let c = random_complex(rng, max_dim, top);
    let e = random_complex(rng, max_dim.min(3), top);
    let lambda = rational::int([0, 1, -1, 2][rng.gen_range(0..4)]);
    let sum = direct_sum(&c, &e);
    let (source, target, base): (NormedComplex, NormedComplex, Vec<Matrix>) = match rng.gen_range(0..3) {
        0 => {
            let mats = (0..=top)
                .map(|n| Matrix::identity(c.dim(n)).vstack(&Matrix::zeros(e.dim(n), c.dim(n))).scale(&lambda))
                .collect();
            (c.clone(), sum, mats)
        }
        1 => {
            let mats = (0..=top)
                .map(|n| Matrix::identity(c.dim(n)).hstack(&Matrix::zeros(c.dim(n), e.dim(n))).scale(&lambda))
                .collect();
            (sum, c.clone(), mats)
        }
        _ => {
            let mats = (0..=top).map(|n| Matrix::scalar(c.dim(n), &lambda)).collect();
            (c.clone(), c.clone(), mats)
        }
    };
    let h: Vec<Matrix> = (0..top).map(|n| random_matrix(rng, target.dim(n + 1), source.dim(n))).collect();
    let mats = (0..=top).map(|n| base[n].add(&homotopy_term(&source, &target, &h, n))).collect();
    ChainMap::new(Arc::new(source), Arc::new(target), mats).expect("homotopy perturbation of a chain map")
}
