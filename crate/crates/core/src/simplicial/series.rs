use std::sync::Arc;

use num_traits::Zero;

use super::SimplicialComplex;
use crate::complex::{ChainMap, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// Partial sums `b̄_K = Σ_{k<K} d^{-k} f^k(b)` and their bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub degree: usize,
    pub d: Rational,
    /// `b̄_K` for `K = 0 ..= steps`.
    pub partial_sums: Vec<Vec<Rational>>,
    /// `‖d^{-k} f^k(b)‖₁` for `k < steps`.
    pub term_norms: Vec<Rational>,
    /// Successive ratios of the term norms (`None` after a zero term).
    pub ratios: Vec<Option<Rational>>,
    /// `∂b̄_K = z - d^{-K} f^K(z)` for each `K`.
    pub identity_holds: Vec<bool>,
    /// Largest observed ratio, if any term is nonzero.
    pub max_ratio: Option<Rational>,
}

impl SeriesReport {
    pub const SCOPE: &'static str = "finite partial sums only; any limit would live in the \
        ℓ¹ completion and is not claimed";

    pub fn identity_exact(&self) -> bool {
        self.identity_holds.iter().all(|&x| x)
    }

    /// Terms shrink by a fixed factor below 1 over the computed range.
    pub fn observed_geometric_decay(&self) -> bool {
        self.max_ratio.as_ref().is_some_and(|r| *r < rational::one())
    }
}

/// Checks `∂b = z - f(z)/d` and builds the partial sums for `K <= steps`.
pub fn invisibility_series(
    f: &ChainMap,
    degree: usize,
    z: &[Rational],
    d: i64,
    b: &[Rational],
    steps: usize,
) -> Result<SeriesReport> {
    if d.abs() < 2 {
        return Err(Error::Precondition(format!("|d| = {} must be at least 2", d.abs())));
    }
    f.ensure_valid()?;
    let c = &f.source;
    if c.as_ref() != f.target.as_ref() {
        return Err(Error::InvalidMap("series needs a self-map".into()));
    }
    if degree >= c.top_degree() {
        return Err(Error::DegreeOutOfRange { degree: degree + 1, top: c.top_degree() });
    }
    if z.len() != c.dim(degree) || b.len() != c.dim(degree + 1) {
        return Err(Error::Shape("cycle or chain has the wrong length".into()));
    }
    if c.outgoing(degree).mul_vec(z).iter().any(|x| !x.is_zero()) {
        return Err(Error::NotACycle("z".into()));
    }
    let dq = rational::int(d);
    let boundary = c.maps[degree].clone();
    let fz = f.apply(degree, z);
    let db = boundary.mul_vec(b);
    let residual: Vec<Rational> = (0..z.len()).map(|i| &db[i] - (&z[i] - &fz[i] / &dq)).collect();
    if residual.iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition(format!(
            "∂b != z - f(z)/d; residual {:?}",
            rational::format_vec(&residual)
        )));
    }

    let mut partial = vec![Rational::zero(); b.len()];
    let mut partial_sums = vec![partial.clone()];
    let mut term = b.to_vec();
    let mut fk_z = z.to_vec();
    let mut scale = rational::one();
    let mut term_norms = Vec::new();
    let mut identity_holds = vec![true];
    for _ in 0..steps {
        let scaled: Vec<Rational> = term.iter().map(|x| x / &scale).collect();
        term_norms.push(c.norm(degree + 1).norm(&scaled));
        for (p, t) in partial.iter_mut().zip(&scaled) {
            *p += t;
        }
        partial_sums.push(partial.clone());
        term = f.apply(degree + 1, &term);
        fk_z = f.apply(degree, &fk_z);
        scale *= &dq;
        let lhs = boundary.mul_vec(&partial);
        identity_holds.push((0..z.len()).all(|i| lhs[i] == &z[i] - &fk_z[i] / &scale));
    }
    let ratios: Vec<Option<Rational>> = term_norms
        .windows(2)
        .map(|w| (!w[0].is_zero()).then(|| &w[1] / &w[0]))
        .collect();
    let max_ratio = ratios.iter().flatten().max().cloned();
    Ok(SeriesReport { degree, d: dq, partial_sums, term_norms, ratios, identity_holds, max_ratio })
}

/// A self-map instance: complex, map, degree, cycle, degree of the map and
/// an admissible `b`.
#[derive(Clone, Debug)]
pub struct SeriesInstance {
    pub complex: Arc<NormedComplex>,
    pub map: ChainMap,
    pub degree: usize,
    pub z: Vec<Rational>,
    pub d: i64,
    pub b: Vec<Rational>,
}

/// The oriented edge `i -> i+1` of the 4-gon as a signed basis vector.
fn circle_edge(k: &SimplicialComplex, i: usize) -> (usize, Rational) {
    let (a, b) = (i % 4, (i + 1) % 4);
    if a < b {
        (k.index_of(&[a, b]).unwrap(), rational::one())
    } else {
        (k.index_of(&[b, a]).unwrap(), -rational::one())
    }
}

/// The degree-2 map of the 4-gon: `v_i ↦ v_{2i}`, `e_i ↦ e_{2i} + e_{2i+1}`,
/// with `f(z) = 2z` for the fundamental cycle `z = Σ e_i`. The complex gets
/// an empty degree 2 so that `b = 0` has somewhere to live.
pub fn doubling_circle4() -> Result<SeriesInstance> {
    let k = super::fixtures::circle(4);
    let base = k.chain_complex(None)?;
    let mut dims = base.dims.clone();
    dims.push(0);
    let mut maps = base.maps.clone();
    maps.push(Matrix::zeros(4, 0));
    let mut norms = base.norms.clone();
    norms.push(NormSpec::l1(Vec::new()));
    let c = Arc::new(NormedComplex::checked(Orientation::Homological, dims, maps, norms)?);
    let f0 = Matrix::from_fn(4, 4, |r, s| if r == (2 * s) % 4 { rational::one() } else { Rational::zero() });
    let mut f1 = Matrix::zeros(4, 4);
    let mut z = vec![Rational::zero(); 4];
    for i in 0..4 {
        let (col, sc) = circle_edge(&k, i);
        z[col] += &sc;
        for j in [2 * i, 2 * i + 1] {
            let (row, sr) = circle_edge(&k, j);
            f1.add_at(row, col, &(&sr * &sc));
        }
    }
    let map = ChainMap::new(c.clone(), c.clone(), vec![f0, f1, Matrix::zeros(0, 0)])?;
    Ok(SeriesInstance { complex: c, map, degree: 1, z, d: 2, b: Vec::new() })
}

/// The 4-gon with a cone vertex `4` over the edge `[0,1]` (triangle
/// `t = [0,1,4]`), the doubling map extended by `f(4) = 4`, `f(t) = t`,
/// then perturbed by the chain homotopy `H(e_0) = t/2`:
/// `f' = f + ∂H + H∂`. Here `f'(z) = 2z + ∂t/2`, so `b = -t/4`.
pub fn perturbed_doubling() -> Result<SeriesInstance> {
    let k = SimplicialComplex::from_simplices(5, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 1, 4]])?;
    let c = Arc::new(k.chain_complex(None)?);
    let idx = |s: &[usize]| k.index_of(s).unwrap();
    let one = rational::one();
    let half = rational::rat(1, 2);

    let mut f0 = Matrix::zeros(5, 5);
    for v in 0..4 {
        f0.set((2 * v) % 4, v, one.clone());
    }
    f0.set(4, 4, one.clone());

    let mut f1 = Matrix::zeros(k.count(1), k.count(1));
    let mut z = vec![Rational::zero(); k.count(1)];
    for i in 0..4 {
        let (col, sc) = circle_edge(&k, i);
        z[col] += &sc;
        for j in [2 * i, 2 * i + 1] {
            let (row, sr) = circle_edge(&k, j);
            f1.add_at(row, col, &(&sr * &sc));
        }
    }
    // [0,4] ↦ [0,4]; [1,4] ↦ [1,4] - [1,2]
    f1.set(idx(&[0, 4]), idx(&[0, 4]), one.clone());
    f1.set(idx(&[1, 4]), idx(&[1, 4]), one.clone());
    f1.set(idx(&[1, 2]), idx(&[1, 4]), -one.clone());
    let f2 = Matrix::identity(1);

    // H_1: edge [0,1] ↦ t/2, everything else ↦ 0
    let mut h1 = Matrix::zeros(1, k.count(1));
    h1.set(0, idx(&[0, 1]), half.clone());
    let d2 = c.maps[1].clone();
    let f1p = f1.add(&d2.mul(&h1));
    let f2p = f2.add(&h1.mul(&d2));
    let map = ChainMap::new(c.clone(), c.clone(), vec![f0, f1p, f2p])?;
    let b = vec![-rational::rat(1, 4)];
    Ok(SeriesInstance { complex: c, map, degree: 1, z, d: 2, b })
}
