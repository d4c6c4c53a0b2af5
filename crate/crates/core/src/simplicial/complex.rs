use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::complex::{ChainMap, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// Simplices are strictly increasing vertex lists, stored per dimension in
/// lexicographic order; that order is the chain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

fn normalize(vertex_count: usize, s: &[usize]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::InvalidSimplicial("empty simplex".into()));
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSimplicial(format!("repeated vertex in {s:?}")));
    }
    if let Some(&x) = v.iter().find(|&&x| x >= vertex_count) {
        return Err(Error::InvalidSimplicial(format!("vertex {x} of {s:?} is not below {vertex_count}")));
    }
    Ok(v)
}

impl SimplicialComplex {
    /// The smallest complex containing the given simplices and all their
    /// faces. Every vertex `0..vertex_count` is included.
    pub fn from_simplices(vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        for s in simplices {
            let s = normalize(vertex_count, s)?;
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if sets.len() <= d {
                    sets.resize(d + 1, BTreeSet::new());
                }
                sets[d].insert(face);
            }
        }
        Ok(Self::from_sets(vertex_count, sets))
    }

    /// Accepts only a list already closed under faces; otherwise names a
    /// missing face.
    pub fn from_closed_list(vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in simplices {
            let s = normalize(vertex_count, s)?;
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidSimplicial(format!("duplicate simplex {s:?}")));
            }
        }
        for s in &seen {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !seen.contains(&f) {
                        return Err(Error::InvalidSimplicial(format!("missing face {f:?} of {s:?}")));
                    }
                }
            }
        }
        let listed: Vec<Vec<usize>> = seen.into_iter().collect();
        Self::from_simplices(vertex_count, &listed)
    }

    fn from_sets(vertex_count: usize, sets: Vec<BTreeSet<Vec<usize>>>) -> Self {
        let simplices: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { vertex_count, simplices, index }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices.get(n).map_or(0, Vec::len)
    }

    pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
        self.simplices.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Simplices not contained in a larger simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for n in 0..=self.dimension() {
            for s in self.simplices(n) {
                let covered = self.simplices(n + 1).iter().any(|t| s.iter().all(|v| t.contains(v)));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let n = self.dimension();
        self.maximal_simplices().iter().all(|s| s.len() == n + 1)
    }

    /// `∂_n` with the alternating-sign face formula.
    pub fn boundary_matrix(&self, n: usize) -> Matrix {
        assert!(n >= 1);
        let mut m = Matrix::zeros(self.count(n - 1), self.count(n));
        for (j, s) in self.simplices(n).iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let row = self.index_of(&f).expect("closed under faces");
                m.set(row, j, rational::int(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    }

    pub fn label(s: &[usize]) -> String {
        let v: Vec<String> = s.iter().map(usize::to_string).collect();
        format!("[{}]", v.join(","))
    }

    /// The simplicial chain complex with unit ℓ¹ weights unless weights
    /// are supplied per degree.
    pub fn chain_complex(&self, weights: Option<Vec<Vec<Rational>>>) -> Result<NormedComplex> {
        let top = self.dimension();
        let dims: Vec<usize> = (0..=top).map(|n| self.count(n)).collect();
        let maps = (1..=top).map(|n| self.boundary_matrix(n)).collect();
        let norms = match weights {
            Some(w) => w.into_iter().map(NormSpec::l1).collect(),
            None => dims.iter().map(|&d| NormSpec::l1(vec![rational::one(); d])).collect(),
        };
        let labels = (0..=top).map(|n| self.simplices(n).iter().map(|s| Self::label(s)).collect()).collect();
        NormedComplex::checked(Orientation::Homological, dims, maps, norms).map(|c| c.with_labels(labels))
    }

    /// Image of a simplex under a vertex map, with the sign of the sorting
    /// permutation; `None` when vertices collide.
    pub fn image_of(&self, s: &[usize], vertex_map: &[usize]) -> Option<(usize, i64)> {
        let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
        let (sorted, sign) = sort_with_sign(&img)?;
        Some((self.index_of(&sorted)?, sign))
    }
}

/// The chain map of a vertex map `k -> l`; simplices whose vertices collide
/// go to zero. Both complexes are padded to the larger dimension.
pub fn simplicial_chain_map(k: &SimplicialComplex, l: &SimplicialComplex, vertex_map: &[usize]) -> Result<ChainMap> {
    if vertex_map.len() != k.vertex_count() || vertex_map.iter().any(|&v| v >= l.vertex_count()) {
        return Err(Error::InvalidMap(format!(
            "vertex map {vertex_map:?} does not send {} vertices into {}",
            k.vertex_count(),
            l.vertex_count()
        )));
    }
    let top = k.dimension().max(l.dimension());
    let ck = Arc::new(k.chain_complex(None)?.padded(top));
    let cl = Arc::new(l.chain_complex(None)?.padded(top));
    let mut mats = Vec::new();
    for n in 0..=top {
        let mut m = Matrix::zeros(cl.dim(n), ck.dim(n));
        if n <= k.dimension() {
            for (j, s) in k.simplices(n).iter().enumerate() {
                let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
                if let Some((sorted, sign)) = sort_with_sign(&img) {
                    let i = l.index_of(&sorted).ok_or_else(|| {
                        Error::InvalidMap(format!("image of {s:?} is not a simplex of the target"))
                    })?;
                    m.set(i, j, rational::int(sign));
                }
            }
        }
        mats.push(m);
    }
    ChainMap::new(ck, cl, mats)
}

/// Sorts distinct values, returning the permutation sign; `None` on repeats.
pub fn sort_with_sign(v: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut a = v.to_vec();
    let mut sign = 1;
    for i in 0..a.len() {
        for j in 0..a.len() - 1 - i {
            if a[j] > a[j + 1] {
                a.swap(j, j + 1);
                sign = -sign;
            } else if a[j] == a[j + 1] {
                return None;
            }
        }
    }
    if a.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((a, sign))
}
