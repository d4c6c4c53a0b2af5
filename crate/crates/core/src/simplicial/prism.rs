use num_traits::Zero;

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// The prism chain of a cycle in `K × [0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prism {
    /// `K × [0,1]`: vertex `v` is `(v, 0)`, vertex `v + |V|` is `(v, 1)`.
    pub product: SimplicialComplex,
    /// Degree of the input cycle; `b` lives one degree higher.
    pub cycle_degree: usize,
    pub b: Vec<Rational>,
    pub bottom: Vec<Rational>,
    pub top: Vec<Rational>,
    pub b_norm: Rational,
    pub cycle_norm: Rational,
    /// `∂b = j₁z - j₀z` holds exactly.
    pub boundary_identity: bool,
}

impl Prism {
    /// `‖b‖₁ <= n·‖z‖₁` with `n = cycle_degree + 1`.
    pub fn norm_bound_holds(&self) -> bool {
        self.b_norm <= rational::int(self.cycle_degree as i64 + 1) * &self.cycle_norm
    }
}

/// `K × [0,1]` triangulated by splitting each `σ × [0,1]` with
/// `σ = [v0 … vm]` into `[v0 … vi, wi … wm]`, `i = 0 … m`.
pub fn product_with_interval(k: &SimplicialComplex) -> SimplicialComplex {
    let shift = k.vertex_count();
    let mut tops = Vec::new();
    for s in k.maximal_simplices() {
        for i in 0..s.len() {
            let mut t: Vec<usize> = s[..=i].to_vec();
            t.extend(s[i..].iter().map(|v| v + shift));
            tops.push(t);
        }
    }
    SimplicialComplex::from_simplices(2 * shift, &tops).expect("prism decomposition is a complex")
}

/// `b(z) = Σ_σ z_σ Σ_i (-1)^i [v0 … vi, wi … wm]` for a cycle `z` of
/// degree `m`; the result satisfies `∂b = j₁z - j₀z`.
pub fn prism(k: &SimplicialComplex, degree: usize, z: &[Rational]) -> Result<Prism> {
    if z.len() != k.count(degree) {
        return Err(Error::Shape(format!("cycle has {} entries, degree {degree} has {}", z.len(), k.count(degree))));
    }
    if degree >= 1 {
        let dz = k.boundary_matrix(degree).mul_vec(z);
        if let Some(i) = dz.iter().position(|x| !x.is_zero()) {
            return Err(Error::NotACycle(format!(
                "boundary has coefficient {} on {:?}",
                dz[i],
                k.simplices(degree - 1)[i]
            )));
        }
    }
    let product = product_with_interval(k);
    let shift = k.vertex_count();
    let mut b = vec![Rational::zero(); product.count(degree + 1)];
    let mut bottom = vec![Rational::zero(); product.count(degree)];
    let mut top = vec![Rational::zero(); product.count(degree)];
    for (j, s) in k.simplices(degree).iter().enumerate() {
        if z[j].is_zero() {
            continue;
        }
        for i in 0..s.len() {
            let mut t: Vec<usize> = s[..=i].to_vec();
            t.extend(s[i..].iter().map(|v| v + shift));
            let idx = product.index_of(&t).expect("prism simplex");
            let sign = if i % 2 == 0 { z[j].clone() } else { -z[j].clone() };
            b[idx] += sign;
        }
        let lifted: Vec<usize> = s.iter().map(|v| v + shift).collect();
        bottom[product.index_of(s).expect("bottom face")] += &z[j];
        top[product.index_of(&lifted).expect("top face")] += &z[j];
    }
    let db = product.boundary_matrix(degree + 1).mul_vec(&b);
    let boundary_identity = db.iter().zip(top.iter().zip(&bottom)).all(|(x, (t, o))| *x == t - o);
    let norm = |v: &[Rational]| v.iter().map(rational::abs).sum::<Rational>();
    Ok(Prism {
        b_norm: norm(&b),
        cycle_norm: norm(z),
        product,
        cycle_degree: degree,
        b,
        bottom,
        top,
        boundary_identity,
    })
}
