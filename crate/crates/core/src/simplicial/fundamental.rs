use std::collections::VecDeque;

use num_traits::Zero;

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{seminorm, HomologyClass};
use crate::rational::{self, Rational};

/// A `±1` cycle on the top simplices of a closed pseudo-manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub dimension: usize,
    /// One entry per top simplex, in basis order.
    pub coefficients: Vec<Rational>,
}

impl FundamentalCycle {
    pub fn l1_norm(&self) -> Rational {
        self.coefficients.iter().map(rational::abs).sum()
    }

    pub fn class(&self) -> HomologyClass {
        HomologyClass { degree: self.dimension, representative: self.coefficients.clone() }
    }
}

/// For each codimension-one face, the top simplices containing it together
/// with the incidence sign.
fn face_incidences(k: &SimplicialComplex) -> Vec<Vec<(usize, i64)>> {
    let n = k.dimension();
    let mut inc = vec![Vec::new(); k.count(n - 1)];
    for (j, s) in k.simplices(n).iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            let row = k.index_of(&f).expect("closed under faces");
            inc[row].push((j, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    inc
}

/// Checks that `k` is pure of positive dimension, that every face of
/// codimension one lies in exactly two top simplices (at most two when
/// `allow_boundary`), and that the top simplices are connected through
/// such faces.
pub fn check_pseudo_manifold(k: &SimplicialComplex, allow_boundary: bool) -> Result<()> {
    let n = k.dimension();
    if n == 0 || k.count(n) == 0 {
        return Err(Error::NotPseudoManifold("dimension 0".into()));
    }
    if let Some(s) = k.maximal_simplices().into_iter().find(|s| s.len() != n + 1) {
        return Err(Error::NotPseudoManifold(format!("not pure: {s:?} is maximal")));
    }
    for (f, cofaces) in face_incidences(k).iter().enumerate() {
        let ok = cofaces.len() == 2 || (allow_boundary && cofaces.len() == 1);
        if !ok {
            return Err(Error::NotPseudoManifold(format!(
                "face {:?} lies in {} top simplices",
                k.simplices(n - 1)[f],
                cofaces.len()
            )));
        }
    }
    Ok(())
}

/// Propagates `+1` from the first top simplex across shared faces.
///
/// Returns the signs, or an odd cycle of top simplices along which the
/// orientation flips. Connectedness is required.
pub fn orient(k: &SimplicialComplex, allow_boundary: bool) -> Result<Vec<i64>> {
    check_pseudo_manifold(k, allow_boundary)?;
    let n = k.dimension();
    let top = k.count(n);
    let inc = face_incidences(k);
    // adjacency: (neighbour, required ratio sign between neighbour and self)
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); top];
    for cofaces in &inc {
        if let [(a, ea), (b, eb)] = cofaces[..] {
            // c_a e_a + c_b e_b = 0  =>  c_b = -c_a e_a / e_b
            let r = -ea * eb;
            adj[a].push((b, r));
            adj[b].push((a, r));
        }
    }
    let mut sign = vec![0i64; top];
    let mut parent = vec![usize::MAX; top];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &(b, r) in &adj[a] {
            let want = sign[a] * r;
            if sign[b] == 0 {
                sign[b] = want;
                parent[b] = a;
                queue.push_back(b);
            } else if sign[b] != want {
                return Err(Error::NonOrientable { witness: odd_cycle(&parent, a, b) });
            }
        }
    }
    if let Some(j) = sign.iter().position(|&s| s == 0) {
        return Err(Error::NotPseudoManifold(format!(
            "top simplices are not connected: {:?} is unreachable",
            k.simplices(n)[j]
        )));
    }
    Ok(sign)
}

/// Tree path from `a` up to the common ancestor and down to `b`; closing
/// with the edge `b–a` gives a cycle with an odd number of flips.
fn odd_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pa = path(a);
    let pb = path(b);
    let common = pa.iter().find(|x| pb.contains(x)).copied().unwrap_or(0);
    let mut cycle: Vec<usize> = pa.iter().take_while(|&&x| x != common).copied().collect();
    cycle.push(common);
    let down: Vec<usize> = pb.iter().take_while(|&&x| x != common).copied().collect();
    cycle.extend(down.into_iter().rev());
    cycle
}

/// Checks that `witness` is a closed walk of top simplices, consecutive ones
/// sharing a codimension-one face, along which the orientation flips an odd
/// number of times.
pub fn is_orientation_obstruction(k: &SimplicialComplex, witness: &[usize]) -> bool {
    let n = k.dimension();
    if n == 0 || witness.len() < 2 || witness.iter().any(|&j| j >= k.count(n)) {
        return false;
    }
    let inc = face_incidences(k);
    let ratio = |a: usize, b: usize| {
        inc.iter().find_map(|cofaces| match cofaces[..] {
            [(x, ex), (y, ey)] if (x, y) == (a, b) || (x, y) == (b, a) => Some(-ex * ey),
            _ => None,
        })
    };
    let mut product = 1;
    for i in 0..witness.len() {
        match ratio(witness[i], witness[(i + 1) % witness.len()]) {
            Some(r) => product *= r,
            None => return false,
        }
    }
    product == -1
}

pub fn fundamental_cycle(k: &SimplicialComplex) -> Result<FundamentalCycle> {
    let sign = orient(k, false)?;
    let coefficients: Vec<Rational> = sign.iter().map(|&s| rational::int(s)).collect();
    let n = k.dimension();
    let z = k.boundary_matrix(n).mul_vec(&coefficients);
    if z.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotACycle("propagated orientation is not a cycle".into()));
    }
    Ok(FundamentalCycle { dimension: n, coefficients })
}

/// Upper bound on the simplicial volume from one triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvBound {
    /// Semi-norm of the fundamental class in the simplicial chain complex.
    pub upper_bound: Rational,
    pub minimizer: Vec<Rational>,
    /// Dual certificate: a cocycle of sup norm at most 1 evaluating to the
    /// bound on the fundamental cycle.
    pub certificate: Vec<Rational>,
    pub fundamental_cycle_norm: Rational,
    /// `true` when no simplices sit above the top degree, so the bound is
    /// the norm of the fundamental cycle itself.
    pub top_degree_is_maximal: bool,
}

impl SvBound {
    pub const DISCLAIMER: &'static str = "upper bound on the simplicial volume ‖M‖; \
        simplicial chains embed isometrically into singular chains, so the simplicial \
        optimum bounds ‖M‖ from above and is not ‖M‖ itself";
}

pub fn sv_upper_bound(k: &SimplicialComplex) -> Result<SvBound> {
    let z = fundamental_cycle(k)?;
    let c = k.chain_complex(None)?;
    let s = seminorm(&c, &z.class())?;
    Ok(SvBound {
        upper_bound: s.value,
        minimizer: s.witness,
        certificate: s.certificate,
        fundamental_cycle_norm: z.l1_norm(),
        top_degree_is_maximal: true,
    })
}
