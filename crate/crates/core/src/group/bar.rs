use std::sync::Arc;

use num_traits::Zero;

use super::equivariant::{coinvariants, invariants, sparse_column, Coinvariants, EquivariantComplex};
use super::{FiniteGroup, MonomialAction, MonomialModule};
use crate::complex::{l1_operator_norm, ChainMap, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::homology::{self, coseminorm, seminorm};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// Default limit on the number of basis elements in any degree.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// The basis-size cap, overridable through `CHAINLAB_SIZE_CAP`.
pub fn size_cap() -> usize {
    std::env::var("CHAINLAB_SIZE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

fn check_cap(degree: usize, dim: Option<usize>) -> Result<usize> {
    let cap = size_cap();
    match dim {
        Some(d) if d <= cap => Ok(d),
        Some(d) => Err(Error::SizeCap { degree, dim: d, cap }),
        None => Err(Error::SizeCap { degree, dim: usize::MAX, cap }),
    }
}

/// Basis tuple `(g0, …, gn)` of bar degree `n` at `index`, `g0` most
/// significant.
pub fn bar_tuple(index: usize, n: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; n + 1];
    let mut x = index;
    for slot in t.iter_mut().rev() {
        *slot = x % order;
        x /= order;
    }
    t
}

pub fn bar_index(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

/// `g0·[g1|…|gn]`.
pub fn bar_label(group: &FiniteGroup, tuple: &[usize]) -> String {
    let rest: Vec<String> = tuple[1..].iter().map(|&g| group.name(g)).collect();
    format!("{}·[{}]", group.name(tuple[0]), rest.join("|"))
}

/// The bar resolution of `G` up to degree `top`, with unit ℓ¹ weights and
/// the left action on the first slot.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub top: usize,
    pub equivariant: EquivariantComplex,
}

impl BarComplex {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.equivariant.group
    }

    pub fn complex(&self) -> &NormedComplex {
        &self.equivariant.complex
    }
}

/// `∂(g0·[g1|…|gn]) = g0g1·[g2|…|gn] + Σ_{j=1}^{n-1} (-1)^j g0·[…|g_j g_{j+1}|…] + (-1)^n g0·[g1|…|g_{n-1}]`.
pub fn bar_complex(group: Arc<FiniteGroup>, top: usize) -> Result<BarComplex> {
    let order = group.order();
    let mut dims = Vec::new();
    for n in 0..=top {
        let d = u32::try_from(n + 1).ok().and_then(|e| order.checked_pow(e));
        dims.push(check_cap(n, d)?);
    }
    let mut maps = Vec::new();
    for n in 1..=top {
        let mut m = Matrix::zeros(dims[n - 1], dims[n]);
        for j in 0..dims[n] {
            let t = bar_tuple(j, n, order);
            let mut first = t[1..].to_vec();
            first[0] = group.mul(t[0], t[1]);
            m.add_at(bar_index(&first, order), j, &rational::one());
            for k in 1..n {
                let mut face = t[..k].to_vec();
                face.push(group.mul(t[k], t[k + 1]));
                face.extend_from_slice(&t[k + 2..]);
                m.add_at(bar_index(&face, order), j, &rational::int(if k % 2 == 0 { 1 } else { -1 }));
            }
            m.add_at(bar_index(&t[..n], order), j, &rational::int(if n % 2 == 0 { 1 } else { -1 }));
        }
        maps.push(m);
    }
    let labels = dims
        .iter()
        .enumerate()
        .map(|(n, &d)| (0..d).map(|j| bar_label(&group, &bar_tuple(j, n, order))).collect())
        .collect();
    let norms = dims.iter().map(|&d| NormSpec::l1(vec![rational::one(); d])).collect();
    let complex = NormedComplex::new(Orientation::Homological, dims.clone(), maps, norms).with_labels(labels);
    let actions = dims
        .iter()
        .map(|&d| {
            let block = d / order;
            let perms = (0..order)
                .map(|g| (0..d).map(|j| group.mul(g, j / block) * block + j % block).collect())
                .collect();
            MonomialAction::permutation(perms)
        })
        .collect();
    let equivariant = EquivariantComplex::new(group, complex, actions)?;
    Ok(BarComplex { top, equivariant })
}

/// `X ⊗ V` with basis pairs `(i, s)` at `i·dim V + s`, product weights,
/// boundary `∂ ⊗ id` and the diagonal action.
pub fn tensor_coefficients(x: &EquivariantComplex, v: &MonomialModule) -> Result<EquivariantComplex> {
    let c = &x.complex;
    if c.orientation != Orientation::Homological {
        return Err(Error::InvalidComplex("coefficients are tensored onto chain complexes".into()));
    }
    let m = v.dim();
    let mut dims = Vec::new();
    for (n, &d) in c.dims.iter().enumerate() {
        dims.push(check_cap(n, d.checked_mul(m))?);
    }
    let norms = c
        .norms
        .iter()
        .map(|s| {
            let w = s.weights.iter().flat_map(|a| v.weights.iter().map(move |b| a * b)).collect();
            NormSpec { kind: s.kind, weights: w }
        })
        .collect();
    let mut maps = Vec::new();
    for (k, d) in c.maps.iter().enumerate() {
        let mut t = Matrix::zeros(dims[k], dims[k + 1]);
        for j in 0..d.cols() {
            for (i, val) in sparse_column(d, j) {
                for s in 0..m {
                    t.set(i * m + s, j * m + s, val.clone());
                }
            }
        }
        maps.push(t);
    }
    let labels = c.labels.as_ref().map(|ls| {
        ls.iter()
            .map(|l| l.iter().flat_map(|a| (0..m).map(move |s| format!("{a}⊗e{s}"))).collect())
            .collect()
    });
    let mut complex = NormedComplex::new(Orientation::Homological, dims.clone(), maps, norms);
    if let Some(l) = labels {
        complex = complex.with_labels(l);
    }
    let order = x.group.order();
    let actions = x
        .actions
        .iter()
        .map(|a| {
            let images = (0..order)
                .map(|g| {
                    a.images(g)
                        .iter()
                        .flat_map(|(i2, c1)| {
                            v.action.images(g).iter().map(move |(t, c2)| (i2 * m + t, c1 * c2))
                        })
                        .collect()
                })
                .collect();
            MonomialAction::from_images(images)
        })
        .collect();
    EquivariantComplex::new(x.group.clone(), complex, actions)
}

/// One degree of a group (co)homology computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomologyDegree {
    pub degree: usize,
    pub dimension: usize,
    /// Semi-norms of the basis classes; empty for unreliable degrees.
    pub basis_norms: Vec<Rational>,
    /// `false` for degree `top`, where boundaries from above are missing.
    pub reliable: bool,
}

#[derive(Clone, Debug)]
pub struct GroupHomology {
    pub top: usize,
    pub degrees: Vec<GroupHomologyDegree>,
    /// The complex whose (co)homology was taken: coinvariants for ℓ¹
    /// homology, invariants for bounded cohomology.
    pub complex: NormedComplex,
    /// `dim V_G` (homology) or `dim (V')^G` (cohomology).
    pub coefficient_dim: usize,
}

impl GroupHomology {
    pub fn reliable(&self) -> impl Iterator<Item = &GroupHomologyDegree> {
        self.degrees.iter().filter(|d| d.reliable)
    }
}

fn resolution(group: &Arc<FiniteGroup>, v: &MonomialModule, top: usize) -> Result<EquivariantComplex> {
    let bar = bar_complex(group.clone(), top)?;
    tensor_coefficients(&bar.equivariant, v)
}

/// ℓ¹ homology `H_n(ℓ¹C_*(G;V)_G)` for `n <= top`; degree `top` is
/// flagged unreliable.
pub fn l1_homology_of_group(group: &Arc<FiniteGroup>, v: &MonomialModule, top: usize) -> Result<GroupHomology> {
    let x = resolution(group, v, top)?;
    let co: Coinvariants = coinvariants(&x)?;
    let mut degrees = Vec::new();
    for n in 0..=top {
        let h = homology::homology(&co.complex, n)?;
        let reliable = n < top;
        let basis_norms = if reliable {
            h.basis_classes().iter().map(|a| seminorm(&co.complex, a).map(|s| s.value)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        degrees.push(GroupHomologyDegree { degree: n, dimension: h.dimension, basis_norms, reliable });
    }
    Ok(GroupHomology { top, degrees, complex: co.complex, coefficient_dim: v.action.orbits().dim() })
}

/// Bounded cohomology `H^n(B(ℓ¹C_*(G), V')^G)` via the dual pipeline
/// (tensor, dualize, invariants); degree `top` is flagged unreliable.
pub fn bounded_cohomology_of_group(group: &Arc<FiniteGroup>, v: &MonomialModule, top: usize) -> Result<GroupHomology> {
    let x = resolution(group, v, top)?.dual()?;
    let inv = invariants(&x)?;
    let mut degrees = Vec::new();
    for n in 0..=top {
        let h = homology::homology(&inv.complex, n)?;
        let reliable = n < top;
        let basis_norms = if reliable {
            h.basis_classes().iter().map(|a| coseminorm(&inv.complex, a).map(|s| s.value)).collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        degrees.push(GroupHomologyDegree { degree: n, dimension: h.dimension, basis_norms, reliable });
    }
    let coefficient_dim = v.action.dual(group).orbits().dim();
    Ok(GroupHomology { top, degrees, complex: inv.complex, coefficient_dim })
}

/// The chain map induced by `φ: G -> H` and an equivariant module map
/// `f: V -> W`, upstairs and on coinvariants.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub on_chains: ChainMap,
    pub on_coinvariants: ChainMap,
    /// Weighted ℓ¹ operator norm per degree (upstairs).
    pub operator_norms: Vec<Rational>,
}

impl InducedMap {
    pub fn on_homology(&self, n: usize) -> Result<Matrix> {
        homology::induced_on_homology(&self.on_coinvariants, n)
    }
}

/// `(g0, …, gn) ⊗ v ↦ (φg0, …, φgn) ⊗ f(v)`.
pub fn induced_map(
    source: (&Arc<FiniteGroup>, &MonomialModule),
    target: (&Arc<FiniteGroup>, &MonomialModule),
    phi: &[usize],
    f: &Matrix,
    top: usize,
) -> Result<InducedMap> {
    let (g, v) = source;
    let (h, w) = target;
    g.check_homomorphism(h, phi)?;
    v.check_morphism(w, phi, f)?;
    let fnorm = l1_operator_norm(f, &v.weights, &w.weights);
    if fnorm > rational::one() {
        return Err(Error::InvalidModule(format!("module map has norm {fnorm} > 1")));
    }
    let x = resolution(g, v, top)?;
    let y = resolution(h, w, top)?;
    let (m, k) = (v.dim(), w.dim());
    let mut mats = Vec::new();
    for n in 0..=top {
        let mut a = Matrix::zeros(y.complex.dim(n), x.complex.dim(n));
        for j in 0..x.complex.dim(n) / m.max(1) {
            let t: Vec<usize> = bar_tuple(j, n, g.order()).into_iter().map(|e| phi[e]).collect();
            let i = bar_index(&t, h.order());
            for s in 0..m {
                for r in 0..k {
                    if !f.get(r, s).is_zero() {
                        a.add_at(i * k + r, j * m + s, f.get(r, s));
                    }
                }
            }
        }
        mats.push(a);
    }
    let operator_norms = mats
        .iter()
        .enumerate()
        .map(|(n, a)| l1_operator_norm(a, &x.complex.norm(n).weights, &y.complex.norm(n).weights))
        .collect();
    let on_chains = ChainMap::new(Arc::new(x.complex.clone()), Arc::new(y.complex.clone()), mats)?;
    let cx = coinvariants(&x)?;
    let cy = coinvariants(&y)?;
    let mut down = Vec::new();
    for n in 0..=top {
        let px = cx.projection(n);
        let py_f = cy.projection(n).mul(&on_chains.mats[n]);
        let bar = py_f.mul(&cx.orbits[n].section_matrix());
        if let Some((i, j)) = py_f.first_difference(&bar.mul(&px)) {
            return Err(Error::InvalidMap(format!(
                "induced map does not descend to coinvariants in degree {n} at ({i}, {j})"
            )));
        }
        down.push(bar);
    }
    let on_coinvariants = ChainMap::new(Arc::new(cx.complex), Arc::new(cy.complex), down)?;
    Ok(InducedMap { on_chains, on_coinvariants, operator_norms })
}
