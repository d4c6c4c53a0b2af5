use std::sync::Arc;

use num_traits::Zero;

use super::{FiniteGroup, MonomialAction, OrbitData};
use crate::complex::{NormKind, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::lp;
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// A normed complex with an isometric monomial group action in every degree
/// commuting with the (co)boundary.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    pub group: Arc<FiniteGroup>,
    pub complex: NormedComplex,
    pub actions: Vec<MonomialAction>,
}

/// Nonzero entries of column `j`.
pub(crate) fn sparse_column(m: &Matrix, j: usize) -> Vec<(usize, Rational)> {
    (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).map(|i| (i, m.get(i, j).clone())).collect()
}

impl EquivariantComplex {
    pub fn new(group: Arc<FiniteGroup>, complex: NormedComplex, actions: Vec<MonomialAction>) -> Result<Self> {
        let x = Self { group, complex, actions };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        self.complex.ensure_valid()?;
        let c = &self.complex;
        if self.actions.len() != c.dims.len() {
            return Err(Error::InvalidAction(format!("{} action degrees for {} complex degrees", self.actions.len(), c.dims.len())));
        }
        for (n, a) in self.actions.iter().enumerate() {
            if a.dim() != c.dim(n) && c.dim(n) > 0 {
                return Err(Error::InvalidAction(format!("degree {n}: action on {} coordinates, complex has {}", a.dim(), c.dim(n))));
            }
            a.check(&self.group, &c.norm(n).weights).map_err(|e| Error::InvalidAction(format!("degree {n}: {e}")))?;
        }
        self.check_commutes()
    }

    /// `g·∂ = ∂·g` (or with `δ`) for every element, checked column by column.
    pub fn check_commutes(&self) -> Result<()> {
        let c = &self.complex;
        for n in 0..c.top_degree() {
            // map from degree `from` to degree `to`
            let (m, from, to) = match c.orientation {
                Orientation::Homological => (&c.maps[n], n + 1, n),
                Orientation::Cohomological => (&c.maps[n], n, n + 1),
            };
            let cols: Vec<Vec<(usize, Rational)>> = (0..c.dim(from)).map(|j| sparse_column(m, j)).collect();
            for (j, col) in cols.iter().enumerate() {
                for g in 0..self.group.order() {
                    let mut lhs: Vec<(usize, Rational)> = col
                        .iter()
                        .map(|(i, x)| {
                            let (t, a) = self.actions[to].image(g, *i);
                            (t, x * a)
                        })
                        .collect();
                    lhs.sort_by_key(|e| e.0);
                    let (t, a) = self.actions[from].image(g, j);
                    let rhs: Vec<(usize, Rational)> = cols[t].iter().map(|(i, x)| (*i, x * a)).collect();
                    if lhs != rhs {
                        let i = lhs.iter().zip(&rhs).find(|(l, r)| l != r).map_or(lhs.len().min(rhs.len()), |(l, _)| l.0);
                        return Err(Error::InvalidAction(format!(
                            "action of element {g} does not commute with the map out of degree {from} \
                             (basis {j}, coordinate {i})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The dual complex with the contragredient action.
    pub fn dual(&self) -> Result<EquivariantComplex> {
        let complex = self.complex.dual()?;
        let actions = self.actions.iter().map(|a| a.dual(&self.group)).collect();
        Ok(Self { group: self.group.clone(), complex, actions })
    }

    pub fn orbits(&self, n: usize) -> OrbitData {
        self.actions[n].orbits()
    }
}

/// The coinvariant complex `X_G` in orbit coordinates.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub complex: NormedComplex,
    pub orbits: Vec<OrbitData>,
}

impl Coinvariants {
    pub fn projection(&self, n: usize) -> Matrix {
        self.orbits[n].projection_matrix()
    }

    pub fn project(&self, n: usize, v: &[Rational]) -> Vec<Rational> {
        self.orbits[n].project(v)
    }
}

/// Quotient by the span of `g·v - v` with the quotient norm.
///
/// Basis classes are the surviving orbit representatives. Because the
/// action is isometric, the quotient norm of `[e_r]` is `w_r`, so the
/// quotient norm is again a weighted ℓ¹ norm; [`quotient_norm_lp`]
/// recomputes it by linear programming.
pub fn coinvariants(x: &EquivariantComplex) -> Result<Coinvariants> {
    let c = &x.complex;
    if c.orientation != Orientation::Homological || c.norms.iter().any(|s| s.kind != NormKind::WeightedL1) {
        return Err(Error::NormKind("coinvariants are taken of ℓ¹ chain complexes".into()));
    }
    x.check_commutes()?;
    let orbits: Vec<OrbitData> = (0..c.dims.len()).map(|n| x.orbits(n)).collect();
    let dims: Vec<usize> = orbits.iter().map(OrbitData::dim).collect();
    let norms = orbits
        .iter()
        .enumerate()
        .map(|(n, o)| NormSpec::l1(o.reps.iter().map(|&r| c.norm(n).weights[r].clone()).collect()))
        .collect();
    let mut maps = Vec::new();
    for n in 1..c.dims.len() {
        let d = &c.maps[n - 1];
        let mut bar = Matrix::zeros(dims[n - 1], dims[n]);
        for (k, &r) in orbits[n].reps.iter().enumerate() {
            for (i, v) in sparse_column(d, r) {
                if let Some((l, p)) = &orbits[n - 1].class_of[i] {
                    bar.add_at(*l, k, &(v * p));
                }
            }
        }
        // well defined: P ∂ = ∂̄ P on every basis vector
        for j in 0..c.dim(n) {
            let mut lhs = vec![Rational::zero(); dims[n - 1]];
            for (i, v) in sparse_column(d, j) {
                if let Some((l, p)) = &orbits[n - 1].class_of[i] {
                    lhs[*l] += v * p;
                }
            }
            let rhs: Vec<Rational> = match &orbits[n].class_of[j] {
                Some((k, p)) => bar.column(*k).into_iter().map(|y| y * p).collect(),
                None => vec![Rational::zero(); dims[n - 1]],
            };
            if lhs != rhs {
                return Err(Error::InvalidAction(format!("boundary does not descend to coinvariants in degree {n} (basis {j})")));
            }
        }
        maps.push(bar);
    }
    let complex = NormedComplex::new(Orientation::Homological, dims, maps, norms);
    complex.ensure_valid()?;
    Ok(Coinvariants { complex, orbits })
}

/// Quotient norm of the class of `v` (degree `n`) by exact LP:
/// `min ‖v + w‖` over `w` in the span of `g·e_i - e_i`.
pub fn quotient_norm_lp(x: &EquivariantComplex, n: usize, v: &[Rational]) -> Result<Rational> {
    let d = x.complex.dim(n);
    let mut gens = Vec::new();
    for g in 0..x.group.order() {
        for i in 0..d {
            let mut col = vec![Rational::zero(); d];
            let (t, c) = x.actions[n].image(g, i);
            col[t] += c;
            col[i] -= rational::one();
            if col.iter().any(|y| !y.is_zero()) && !gens.contains(&col) {
                gens.push(col);
            }
        }
    }
    let span = Matrix::from_columns(&gens, d);
    Ok(lp::min_weighted_l1(v, &span, &x.complex.norm(n).weights)?.value)
}

/// The invariant subcomplex `(X')^G` of an ℓ∞ cochain complex, with basis
/// the orbit-averaged functionals `f_r = (1/|Stab r|) Σ_g g·e'_r`.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub complex: NormedComplex,
    pub orbits: Vec<OrbitData>,
    /// Per degree, the basis functionals as sparse vectors.
    pub basis: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl Invariants {
    /// Columns are the basis functionals.
    pub fn basis_matrix(&self, n: usize) -> Matrix {
        let d = self.orbits[n].rep_of.len();
        let mut m = Matrix::zeros(d, self.basis[n].len());
        for (k, f) in self.basis[n].iter().enumerate() {
            for (i, c) in f {
                m.set(*i, k, c.clone());
            }
        }
        m
    }

    /// Expands invariant coordinates to a cochain upstairs.
    pub fn include(&self, n: usize, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.orbits[n].rep_of.len()];
        for (k, f) in self.basis[n].iter().enumerate() {
            for (i, c) in f {
                out[*i] += &coords[k] * c;
            }
        }
        out
    }
}

pub fn invariants(x: &EquivariantComplex) -> Result<Invariants> {
    let c = &x.complex;
    if c.orientation != Orientation::Cohomological || c.norms.iter().any(|s| s.kind != NormKind::WeightedLinf) {
        return Err(Error::NormKind("invariants are taken of ℓ∞ cochain complexes".into()));
    }
    x.check_commutes()?;
    let order = x.group.order();
    let mut orbits = Vec::new();
    let mut basis = Vec::new();
    let mut norms = Vec::new();
    for n in 0..c.dims.len() {
        let o = x.orbits(n);
        let d = c.dim(n);
        let mut fs = Vec::new();
        for &r in &o.reps {
            let mut sum = vec![Rational::zero(); d];
            for g in 0..order {
                let (t, a) = x.actions[n].image(g, r);
                sum[t] += a;
            }
            let scale = sum[r].clone();
            fs.push(
                sum.into_iter()
                    .enumerate()
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(i, y)| (i, y / &scale))
                    .collect::<Vec<_>>(),
            );
        }
        let weights = fs
            .iter()
            .map(|f| {
                f.iter()
                    .map(|(i, y)| rational::abs(y) * &c.norm(n).weights[*i])
                    .max()
                    .unwrap_or_else(Rational::zero)
            })
            .collect();
        norms.push(NormSpec::linf(weights));
        orbits.push(o);
        basis.push(fs);
    }
    let dims: Vec<usize> = orbits.iter().map(OrbitData::dim).collect();
    let mut maps = Vec::new();
    for n in 0..c.top_degree() {
        let delta = &c.maps[n];
        let mut m = Matrix::zeros(dims[n + 1], dims[n]);
        for (k, f) in basis[n].iter().enumerate() {
            let mut image = vec![Rational::zero(); c.dim(n + 1)];
            for (i, y) in f {
                for (row, v) in sparse_column(delta, *i) {
                    image[row] += v * y;
                }
            }
            for (l, &r) in orbits[n + 1].reps.iter().enumerate() {
                m.set(l, k, image[r].clone());
            }
            let mut expanded = vec![Rational::zero(); c.dim(n + 1)];
            for (l, g) in basis[n + 1].iter().enumerate() {
                for (i, y) in g {
                    expanded[*i] += m.get(l, k) * y;
                }
            }
            if expanded != image {
                return Err(Error::InvalidAction(format!(
                    "coboundary of an invariant cochain is not invariant (degree {n}, basis {k})"
                )));
            }
        }
        maps.push(m);
    }
    let complex = NormedComplex::new(Orientation::Cohomological, dims, maps, norms);
    complex.ensure_valid()?;
    Ok(Invariants { complex, orbits, basis })
}

/// Result of comparing `(X_G)'` with `(X')^G` in orbit coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualIdentification {
    /// The invariant basis functionals are the rows of the coinvariant
    /// projection, i.e. `B = Pᵀ`.
    pub basis_matches: bool,
    /// The dual norm of the coinvariant quotient norm equals the restricted
    /// sup norm, weight by weight.
    pub norms_match: bool,
    /// The invariant coboundaries are the transposed coinvariant boundaries.
    pub maps_match: bool,
}

impl DualIdentification {
    pub fn holds(&self) -> bool {
        self.basis_matches && self.norms_match && self.maps_match
    }
}

pub fn dual_identification(x: &EquivariantComplex) -> Result<DualIdentification> {
    let co = coinvariants(x)?;
    let inv = invariants(&x.dual()?)?;
    let co_dual = co.complex.dual()?;
    let mut basis_matches = true;
    for n in 0..x.complex.dims.len() {
        basis_matches &= co.orbits[n].reps == inv.orbits[n].reps
            && inv.basis_matrix(n) == co.projection(n).transpose();
    }
    let norms_match = co_dual.norms == inv.complex.norms;
    let maps_match = co_dual.maps == inv.complex.maps;
    Ok(DualIdentification { basis_matches, norms_match, maps_match })
}

/// A module as an equivariant complex concentrated in degree 0.
pub fn module_complex(group: Arc<FiniteGroup>, v: &super::MonomialModule) -> Result<EquivariantComplex> {
    let complex = NormedComplex::new(Orientation::Homological, vec![v.dim()], vec![], vec![NormSpec::l1(v.weights.clone())]);
    EquivariantComplex::new(group, complex, vec![v.action.clone()])
}
