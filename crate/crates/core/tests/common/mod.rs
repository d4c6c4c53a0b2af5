//! Oracles for the integration tests.
//!
//! They share no code with the library's elimination or simplex routines:
//! ranks come from Bareiss elimination or from minors, LP optima from
//! enumerating the vertices of the feasible polyhedron.

#![allow(dead_code)]

use chainlab::complex::ChainMap;
use chainlab::rational::{int, weighted_l1, weighted_linf};
use chainlab::{Matrix, NormedComplex, Rational};
use num_traits::{One, Zero};

fn rows_of(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Rank by fraction-free Bareiss elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut a = rows_of(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = Rational::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = Rational::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion along the first row.
pub fn det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    match n {
        0 => Rational::one(),
        1 => a[0][0].clone(),
        _ => {
            let mut total = Rational::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Rational>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &a[0][j] * det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank as the size of the largest nonzero minor. Only for tiny matrices.
pub fn rank_by_minors(m: &Matrix) -> usize {
    let a = rows_of(m);
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub: Vec<Vec<Rational>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// `dim H_n = d_n − rank(out_n) − rank(in_n)`.
pub fn betti(c: &NormedComplex) -> Vec<usize> {
    (0..c.dims.len()).map(|n| c.dim(n) - rank(&c.outgoing(n)) - rank(&c.incoming(n))).collect()
}

/// Solves the square system `a x = b` by Cramer's rule.
fn cramer(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let d = det(a);
    if d.is_zero() {
        return None;
    }
    Some(
        (0..a.len())
            .map(|j| {
                let replaced: Vec<Vec<Rational>> = a
                    .iter()
                    .zip(b)
                    .map(|(row, bi)| {
                        let mut r = row.clone();
                        r[j] = bi.clone();
                        r
                    })
                    .collect();
                det(&replaced) / &d
            })
            .collect(),
    )
}

/// Columns of `m` that are independent of the ones before them.
fn independent_columns(m: &Matrix) -> Vec<usize> {
    let mut keep: Vec<usize> = Vec::new();
    for j in 0..m.cols() {
        let mut trial = keep.clone();
        trial.push(j);
        if rank(&m.select_columns(&trial)) == trial.len() {
            keep = trial;
        }
    }
    keep
}

fn affine(t: &[Rational], s: &Matrix, x: &[Rational]) -> Vec<Rational> {
    (0..t.len())
        .map(|i| (0..x.len()).fold(t[i].clone(), |acc, j| acc + s.get(i, j) * &x[j]))
        .collect()
}

/// `min_x Σ w_i |(t + S x)_i|` by enumerating the points where
/// `rank S` independent residual coordinates vanish.
pub fn min_l1_by_vertices(t: &[Rational], span: &Matrix, w: &[Rational]) -> Rational {
    let s = span.select_columns(&independent_columns(span));
    let r = s.cols();
    let mut best = weighted_l1(t, w);
    if r == 0 {
        return best;
    }
    for rows in subsets(t.len(), r) {
        let a: Vec<Vec<Rational>> = rows.iter().map(|&i| s.row(i).to_vec()).collect();
        let b: Vec<Rational> = rows.iter().map(|&i| -t[i].clone()).collect();
        if let Some(x) = cramer(&a, &b) {
            let v = weighted_l1(&affine(t, &s, &x), w);
            if v < best {
                best = v;
            }
        }
    }
    best
}

/// `min_x max_i u_i |(t + S x)_i|` by enumerating vertices of the epigraph:
/// points where `rank S + 1` weighted residuals share one magnitude (with
/// chosen signs), or `rank S` residuals vanish.
pub fn min_linf_by_vertices(t: &[Rational], span: &Matrix, u: &[Rational]) -> Rational {
    let s = span.select_columns(&independent_columns(span));
    let r = s.cols();
    let mut best = weighted_linf(t, u);
    if r == 0 {
        return best;
    }
    let mut consider = |x: Vec<Rational>| {
        let v = weighted_linf(&affine(t, &s, &x), u);
        if v < best {
            best = v;
        }
    };
    for rows in subsets(t.len(), r) {
        let a: Vec<Vec<Rational>> = rows.iter().map(|&i| s.row(i).to_vec()).collect();
        let b: Vec<Rational> = rows.iter().map(|&i| -t[i].clone()).collect();
        if let Some(x) = cramer(&a, &b) {
            consider(x);
        }
    }
    // u_i σ_i (t + S x)_i − m = 0, unknowns (x, m)
    for rows in subsets(t.len(), r + 1) {
        for signs in 0..(1u32 << (r + 1)) {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (k, &i) in rows.iter().enumerate() {
                let sigma = if signs >> k & 1 == 1 { -int(1) } else { int(1) };
                let scale = &sigma * &u[i];
                let mut row: Vec<Rational> = s.row(i).iter().map(|x| x * &scale).collect();
                row.push(-int(1));
                a.push(row);
                b.push(-(&t[i] * &scale));
            }
            if let Some(mut x) = cramer(&a, &b) {
                x.pop();
                consider(x);
            }
        }
    }
    best
}

/// Optimum of `min cᵀx, A x = b, x ≥ 0` over its basic feasible solutions;
/// `None` when there are none. Assumes the LP is bounded.
pub fn standard_form_optimum(c: &[Rational], a: &Matrix, b: &[Rational]) -> Option<Rational> {
    let m = a.rows();
    let n = a.cols();
    let mut best: Option<Rational> = None;
    let r = rank(a);
    let rows = {
        let t = a.transpose();
        independent_columns(&t)
    };
    for basis in subsets(n, r) {
        let sq: Vec<Vec<Rational>> = rows.iter().map(|&i| basis.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
        let rhs: Vec<Rational> = rows.iter().map(|&i| b[i].clone()).collect();
        let Some(xb) = cramer(&sq, &rhs) else { continue };
        if xb.iter().any(|v| *v < Rational::zero()) {
            continue;
        }
        let mut x = vec![Rational::zero(); n];
        for (k, &j) in basis.iter().enumerate() {
            x[j] = xb[k].clone();
        }
        if (0..m).any(|i| (0..n).fold(Rational::zero(), |acc, j| acc + a.get(i, j) * &x[j]) != b[i]) {
            continue;
        }
        let v = (0..n).fold(Rational::zero(), |acc, j| acc + &c[j] * &x[j]);
        if best.as_ref().is_none_or(|cur| v < *cur) {
            best = Some(v);
        }
    }
    best
}

/// The cone boundary `[[−∂C, 0], [f, ∂D]]` assembled directly, for the
/// rank oracle. Returns the Betti numbers of the cone in degrees
/// `0 ..= top + 1`.
pub fn cone_betti(f: &ChainMap) -> Vec<usize> {
    let c = &f.source;
    let d = &f.target;
    let top = c.top_degree();
    // cone_n = C_{n-1} ⊕ D_n for n = 0 ..= top + 1
    let cdim = |n: isize| if n < 0 || n as usize > top { 0 } else { c.dim(n as usize) };
    let ddim = |n: isize| if n < 0 || n as usize > top { 0 } else { d.dim(n as usize) };
    let size = |n: isize| cdim(n - 1) + ddim(n);
    let boundary = |n: isize| -> Matrix {
        // cone_n -> cone_{n-1}
        let (rows, cols) = (size(n - 1), size(n));
        let mut m = Matrix::zeros(rows, cols);
        if n - 2 >= 0 && (n - 1) as usize <= top {
            let dc = c.outgoing((n - 1) as usize);
            for i in 0..dc.rows() {
                for j in 0..dc.cols() {
                    m.set(i, j, -dc.get(i, j).clone());
                }
            }
        }
        if n >= 1 && (n - 1) as usize <= top {
            let fm = &f.mats[(n - 1) as usize];
            let off_r = cdim(n - 2);
            for i in 0..fm.rows() {
                for j in 0..fm.cols() {
                    m.set(off_r + i, j, fm.get(i, j).clone());
                }
            }
        }
        if n >= 1 && n as usize <= top {
            let dd = d.outgoing(n as usize);
            let (off_r, off_c) = (cdim(n - 2), cdim(n - 1));
            for i in 0..dd.rows() {
                for j in 0..dd.cols() {
                    m.set(off_r + i, off_c + j, dd.get(i, j).clone());
                }
            }
        }
        m
    };
    (0..=(top as isize + 1))
        .map(|n| {
            let out = if n == 0 { 0 } else { rank(&boundary(n)) };
            let inc = if n as usize == top + 1 { 0 } else { rank(&boundary(n + 1)) };
            size(n) - out - inc
        })
        .collect()
}

/// Whether `f` induces isomorphisms in every degree, from the oracle cone.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    cone_betti(f).iter().all(|&b| b == 0)
}
