//! Standard triangulations used by the corpus, tests and examples.

use super::SimplicialComplex;

fn build(n: usize, s: Vec<Vec<usize>>) -> SimplicialComplex {
    SimplicialComplex::from_simplices(n, &s).expect("fixture is well formed")
}

/// The boundary of the 3-simplex, a 2-sphere with 4 triangles.
pub fn tetra_boundary() -> SimplicialComplex {
    build(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// The boundary of an `n`-gon.
pub fn circle(n: usize) -> SimplicialComplex {
    build(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect())
}

/// A single filled triangle.
pub fn filled_triangle() -> SimplicialComplex {
    build(3, vec![vec![0, 1, 2]])
}

/// The 7-vertex torus: triangles `(i, i+1, i+3)` and `(i, i+2, i+3)` mod 7.
pub fn torus7() -> SimplicialComplex {
    let t = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    build(7, t)
}

/// The 6-vertex projective plane.
pub fn rp2() -> SimplicialComplex {
    let t = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    build(6, t.iter().map(|s| s.to_vec()).collect())
}

/// The 5-vertex Möbius strip: triangles `(i, i+1, i+2)` mod 5.
pub fn mobius() -> SimplicialComplex {
    build(5, (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect())
}

/// Barycentric subdivision: vertices are the simplices of `k` (in
/// dimension-then-lexicographic order), top simplices are maximal flags.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    let mut all: Vec<Vec<usize>> = Vec::new();
    for n in 0..=k.dimension() {
        all.extend(k.simplices(n).iter().cloned());
    }
    let id = |s: &Vec<usize>| all.iter().position(|t| t == s).unwrap();
    let mut flags = Vec::new();
    for top in k.maximal_simplices() {
        let mut chains: Vec<Vec<Vec<usize>>> = vec![vec![top.clone()]];
        for _ in 1..top.len() {
            chains = chains
                .into_iter()
                .flat_map(|chain| {
                    let last = chain.last().unwrap().clone();
                    (0..last.len()).map(move |i| {
                        let mut f = last.clone();
                        f.remove(i);
                        let mut c = chain.clone();
                        c.push(f);
                        c
                    })
                })
                .collect();
        }
        flags.extend(chains.into_iter().map(|c| c.iter().map(id).collect::<Vec<_>>()));
    }
    build(all.len(), flags)
}

/// The boundary of the icosahedron: north pole 0, upper ring 1..=5, lower
/// ring 6..=10, south pole 11.
pub fn icosahedron() -> SimplicialComplex {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut t = Vec::new();
    for i in 0..5 {
        t.push(vec![0, u(i), u(i + 1)]);
        t.push(vec![u(i), u(i + 1), l(i)]);
        t.push(vec![l(i), l(i + 1), u(i + 1)]);
        t.push(vec![11, l(i), l(i + 1)]);
    }
    build(12, t)
}

/// The antipodal involution of [`icosahedron`].
pub fn icosahedron_antipode() -> Vec<usize> {
    let mut p = vec![0; 12];
    p[0] = 11;
    p[11] = 0;
    for i in 0..5 {
        p[1 + i] = 6 + (i + 2) % 5;
        p[6 + i] = 1 + (i + 3) % 5;
    }
    p
}
