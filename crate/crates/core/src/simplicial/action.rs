use std::sync::Arc;

use super::SimplicialComplex;
use crate::complex::{l1_operator_norm, ChainMap};
use crate::error::{Error, Result};
use crate::group::{bar_complex, bar_index, coinvariants, BarComplex, EquivariantComplex, FiniteGroup, MonomialAction};
use crate::homology;
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// A simplicial action of a finite group by vertex permutations.
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    pub group: Arc<FiniteGroup>,
    /// `perms[g][v] = g·v`.
    pub perms: Vec<Vec<usize>>,
}

impl SimplicialAction {
    /// Checks that every element is a simplicial automorphism and that
    /// `g ↦ perms[g]` is a homomorphism.
    pub fn new(k: &SimplicialComplex, group: Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Result<Self> {
        let nv = k.vertex_count();
        if perms.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} permutations for order {}", perms.len(), group.order())));
        }
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; nv];
            if p.len() != nv || p.iter().any(|&v| v >= nv || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::InvalidAction(format!("element {g} is not a vertex permutation")));
            }
            for n in 1..=k.dimension() {
                if let Some(s) = k.simplices(n).iter().find(|s| k.image_of(s, p).is_none()) {
                    return Err(Error::InvalidAction(format!("element {g} sends simplex {s:?} outside the complex")));
                }
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                if let Some(v) = (0..nv).find(|&v| perms[ab][v] != perms[a][perms[b][v]]) {
                    return Err(Error::InvalidAction(format!("not a homomorphism at ({a}, {b}) on vertex {v}")));
                }
            }
        }
        Ok(Self { group, perms })
    }

    /// No non-identity element fixes a vertex.
    pub fn is_free(&self) -> bool {
        let e = self.group.identity();
        (0..self.group.order()).filter(|&g| g != e).all(|g| self.perms[g].iter().enumerate().all(|(v, &w)| v != w))
    }

    /// Every element keeps the vertex order inside each simplex, so it maps
    /// oriented simplices to oriented simplices without signs.
    pub fn preserves_order(&self, k: &SimplicialComplex) -> bool {
        (1..=k.dimension()).all(|n| {
            k.simplices(n).iter().all(|s| {
                self.perms.iter().all(|p| s.windows(2).all(|w| p[w[0]] < p[w[1]]))
            })
        })
    }

    /// Vertex orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let nv = self.perms.first().map_or(0, Vec::len);
        let mut seen = vec![false; nv];
        let mut out = Vec::new();
        for v in 0..nv {
            if seen[v] {
                continue;
            }
            let mut o: Vec<usize> = self.perms.iter().map(|p| p[v]).collect();
            o.sort_unstable();
            o.dedup();
            for &w in &o {
                seen[w] = true;
            }
            out.push(o);
        }
        out
    }

    /// The lexicographically smallest fundamental domain: the least vertex
    /// of each orbit.
    pub fn propose_domain(&self) -> Vec<usize> {
        self.orbits().into_iter().map(|o| o[0]).collect()
    }

    /// The chain complex of `k` with the induced monomial action (signs
    /// come from re-sorting image simplices).
    pub fn equivariant_chains(&self, k: &SimplicialComplex) -> Result<EquivariantComplex> {
        let complex = k.chain_complex(None)?;
        let actions = (0..=k.dimension())
            .map(|n| {
                let images = self
                    .perms
                    .iter()
                    .map(|p| {
                        k.simplices(n)
                            .iter()
                            .map(|s| {
                                let (t, sign) = k.image_of(s, p).expect("checked simplicial");
                                (t, rational::int(sign))
                            })
                            .collect()
                    })
                    .collect();
                MonomialAction::from_images(images)
            })
            .collect();
        EquivariantComplex::new(self.group.clone(), complex, actions)
    }
}

/// Relabels vertices orbit-major: orbit `o` (ordered by least vertex, which
/// is its representative `r`) occupies labels `o·|G| … o·|G| + |G| - 1`,
/// with `g·r` at `o·|G| + g`. A free action on a complex whose simplices
/// meet each orbit at most once then preserves vertex order.
///
/// Returns the relabelled complex, the action on it, and the map
/// `old vertex -> new vertex`.
pub fn relabel_by_orbit(
    k: &SimplicialComplex,
    action: &SimplicialAction,
) -> Result<(SimplicialComplex, SimplicialAction, Vec<usize>)> {
    if !action.is_free() {
        return Err(Error::InvalidAction("orbit-major relabelling needs a free action".into()));
    }
    let order = action.group.order();
    let mut new_label = vec![0; k.vertex_count()];
    for (o, orbit) in action.orbits().iter().enumerate() {
        let r = orbit[0];
        for g in 0..order {
            new_label[action.perms[g][r]] = o * order + g;
        }
    }
    let simplices: Vec<Vec<usize>> = k
        .maximal_simplices()
        .iter()
        .map(|s| s.iter().map(|&v| new_label[v]).collect())
        .collect();
    let relabelled = SimplicialComplex::from_simplices(k.vertex_count(), &simplices)?;
    let mut perms = vec![vec![0; k.vertex_count()]; order];
    for g in 0..order {
        for v in 0..k.vertex_count() {
            perms[g][new_label[v]] = new_label[action.perms[g][v]];
        }
    }
    let new_action = SimplicialAction::new(&relabelled, action.group.clone(), perms)?;
    Ok((relabelled, new_action, new_label))
}

/// `η: C_*(X) -> C_*(G)` for a fundamental domain `F`, with the data used
/// to check it.
#[derive(Clone, Debug)]
pub struct EtaMap {
    pub chains: EquivariantComplex,
    pub bar: BarComplex,
    pub map: ChainMap,
    /// Weighted ℓ¹ operator norm per degree.
    pub operator_norms: Vec<Rational>,
    /// For each simplex (per degree), the bar tuple `(g0, …, gn)` it maps to.
    pub tuples: Vec<Vec<Vec<usize>>>,
}

impl EtaMap {
    /// `η(g·σ) = g·η(σ)` on every simplex and element.
    pub fn is_equivariant(&self) -> bool {
        let group = &self.bar.equivariant.group;
        (0..self.map.mats.len()).all(|n| {
            let m = &self.map.mats[n];
            (0..m.cols()).all(|j| {
                (0..group.order()).all(|g| {
                    let (t, c) = self.chains.actions[n].image(g, j);
                    let lhs = m.column(t).into_iter().map(|x| x * c).collect::<Vec<_>>();
                    let rhs = self.bar.equivariant.actions[n].apply(g, &m.column(j));
                    lhs == rhs
                })
            })
        })
    }

    /// `θ = ηᵀ`: evaluates a bar cochain `f` on `σ` as
    /// `f(g0(σ), …, gn(σ))`, directly from the tuples.
    pub fn theta_by_formula(&self, n: usize, f: &[Rational]) -> Vec<Rational> {
        let order = self.bar.equivariant.group.order();
        self.tuples[n].iter().map(|t| f[bar_index(t, order)].clone()).collect()
    }

    /// `ηᵀ f`.
    pub fn theta_by_transpose(&self, n: usize, f: &[Rational]) -> Vec<Rational> {
        self.map.mats[n].vec_mul(f)
    }

    /// The map induced on homology of coinvariants in degree `n`.
    pub fn on_coinvariant_homology(&self, n: usize) -> Result<Matrix> {
        let cx = coinvariants(&self.chains)?;
        let cb = coinvariants(&self.bar.equivariant)?;
        let mats = (0..self.map.mats.len())
            .map(|k| cb.projection(k).mul(&self.map.mats[k]).mul(&cx.orbits[k].section_matrix()))
            .collect();
        let down = ChainMap::new(Arc::new(cx.complex), Arc::new(cb.complex), mats)?;
        homology::induced_on_homology(&down, n)
    }
}

/// `σ = [v0 … vn] ↦ g0·[g1|…|gn]` where `h_j` is the unique element with
/// `h_j⁻¹·v_j ∈ F`, `g0 = h0` and `g_j = h_{j-1}⁻¹ h_j`.
///
/// Requires a free, order-preserving action and exactly one domain vertex
/// per orbit.
pub fn eta_map(k: &SimplicialComplex, action: &SimplicialAction, domain: &[usize]) -> Result<EtaMap> {
    if !action.is_free() {
        return Err(Error::InvalidAction("action is not free on vertices".into()));
    }
    if !action.preserves_order(k) {
        return Err(Error::InvalidAction(
            "action does not preserve vertex order inside simplices; relabel vertices orbit-major first".into(),
        ));
    }
    let group = action.group.clone();
    let nv = k.vertex_count();
    // h_of[v]: the element with h⁻¹·v ∈ F
    let mut h_of = vec![usize::MAX; nv];
    for &f in domain {
        if f >= nv {
            return Err(Error::InvalidAction(format!("domain vertex {f} is not a vertex")));
        }
        for g in 0..group.order() {
            let v = action.perms[g][f];
            if h_of[v] != usize::MAX {
                return Err(Error::InvalidAction(format!("domain meets the orbit of {f} more than once")));
            }
            h_of[v] = g;
        }
    }
    if let Some(v) = h_of.iter().position(|&h| h == usize::MAX) {
        return Err(Error::InvalidAction(format!("domain misses the orbit of vertex {v}")));
    }
    let chains = action.equivariant_chains(k)?;
    let top = k.dimension();
    let bar = bar_complex(group.clone(), top)?;
    let order = group.order();
    let mut mats = Vec::new();
    let mut tuples = Vec::new();
    for n in 0..=top {
        let mut m = Matrix::zeros(bar.complex().dim(n), k.count(n));
        let mut ts = Vec::new();
        for (j, s) in k.simplices(n).iter().enumerate() {
            let h: Vec<usize> = s.iter().map(|&v| h_of[v]).collect();
            let mut t = vec![h[0]];
            t.extend(h.windows(2).map(|w| group.mul(group.inv(w[0]), w[1])));
            m.set(bar_index(&t, order), j, rational::one());
            ts.push(t);
        }
        mats.push(m);
        tuples.push(ts);
    }
    let operator_norms = mats
        .iter()
        .enumerate()
        .map(|(n, a)| l1_operator_norm(a, &chains.complex.norm(n).weights, &bar.complex().norm(n).weights))
        .collect();
    let map = ChainMap::new(Arc::new(chains.complex.clone()), Arc::new(bar.complex().clone()), mats)?;
    let eta = EtaMap { chains, bar, map, operator_norms, tuples };
    if !eta.is_equivariant() {
        return Err(Error::InvalidAction("η is not equivariant".into()));
    }
    Ok(eta)
}

/// The antipodal `ℤ/2` action on the icosahedron, relabelled orbit-major
/// so that `v` and its antipode are `2o` and `2o + 1`.
pub fn antipodal_icosahedron() -> Result<(SimplicialComplex, SimplicialAction)> {
    let k = super::fixtures::icosahedron();
    let antipode = super::fixtures::icosahedron_antipode();
    let action = SimplicialAction::new(&k, Arc::new(FiniteGroup::cyclic(2)), vec![(0..12).collect(), antipode])?;
    let (k2, a2, _) = relabel_by_orbit(&k, &action)?;
    Ok((k2, a2))
}
