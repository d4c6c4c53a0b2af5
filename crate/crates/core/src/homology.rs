//! Homology of finite normed complexes, the induced semi-norms, the
//! Kronecker pairing and the two duality statements.
//!
//! At finite dimension the image of every (co)boundary is closed, so reduced
//! and unreduced (co)homology coincide; there is no separate reduced type.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::complex::{ChainMap, NormKind, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpStatus, Sense};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// `ker / im` in one degree, with a deterministic basis of representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySpace {
    pub degree: usize,
    pub dimension: usize,
    /// Columns are cycles representing a basis of the quotient.
    pub cycle_basis: Matrix,
    /// Columns are a basis of the image of the incoming map.
    pub boundary_basis: Matrix,
    /// `dimension × d_n`; on cycles, sends `z` to the coordinates of `[z]`
    /// in `cycle_basis`.
    pub quotient_projector: Matrix,
    pub kernel_dim: usize,
    pub image_rank: usize,
}

impl HomologySpace {
    pub fn is_zero(&self) -> bool {
        self.dimension == 0
    }

    /// Coordinates of the class of the cycle `z`.
    pub fn coordinates(&self, z: &[Rational]) -> Vec<Rational> {
        self.quotient_projector.mul_vec(z)
    }

    /// The representative `Σ a_k h_k`.
    pub fn representative(&self, coords: &[Rational]) -> Vec<Rational> {
        self.cycle_basis.mul_vec(coords)
    }

    pub fn basis_class(&self, k: usize) -> HomologyClass {
        HomologyClass {
            degree: self.degree,
            representative: self.cycle_basis.column(k),
        }
    }

    pub fn basis_classes(&self) -> Vec<HomologyClass> {
        (0..self.dimension).map(|k| self.basis_class(k)).collect()
    }
}

/// A cycle standing for its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: usize,
    pub representative: Vec<Rational>,
}

impl HomologyClass {
    /// Checks that `representative` is a cycle of `c` in degree `degree`.
    pub fn new(c: &NormedComplex, degree: usize, representative: Vec<Rational>) -> Result<Self> {
        let class = HomologyClass {
            degree,
            representative,
        };
        class.check_cycle(c)?;
        Ok(class)
    }

    pub fn check_cycle(&self, c: &NormedComplex) -> Result<()> {
        c.check_degree(self.degree)?;
        if self.representative.len() != c.dim(self.degree) {
            return Err(Error::Shape(format!(
                "class has {} coordinates, degree {} has dimension {}",
                self.representative.len(),
                self.degree,
                c.dim(self.degree)
            )));
        }
        let out = c.outgoing(self.degree).mul_vec(&self.representative);
        if let Some(i) = out.iter().position(|v| !v.is_zero()) {
            return Err(Error::NotACycle(format!(
                "degree {} representative has (co)boundary entry {} = {}",
                self.degree, i, out[i]
            )));
        }
        Ok(())
    }

    pub fn scaled(&self, q: &Rational) -> HomologyClass {
        HomologyClass {
            degree: self.degree,
            representative: self.representative.iter().map(|v| v * q).collect(),
        }
    }

    pub fn plus(&self, other: &HomologyClass) -> HomologyClass {
        assert_eq!(self.degree, other.degree);
        HomologyClass {
            degree: self.degree,
            representative: self
                .representative
                .iter()
                .zip(&other.representative)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// `H_n` (or `H^n` for a cochain complex) by exact elimination.
pub fn homology(c: &NormedComplex, n: usize) -> Result<HomologySpace> {
    c.check_degree(n)?;
    let d = c.dim(n);
    let cycles = c.outgoing(n).kernel();
    let incoming = c.incoming(n);
    let img_idx = incoming.independent_columns();
    let boundary_basis = incoming.select_columns(&img_idx);
    let b = boundary_basis.cols();
    let stacked = boundary_basis.hstack(&cycles);
    let chosen: Vec<usize> = stacked
        .independent_columns()
        .into_iter()
        .filter(|&j| j >= b)
        .collect();
    let cycle_basis = stacked.select_columns(&chosen);
    let dimension = cycle_basis.cols();
    let full = boundary_basis.hstack(&cycle_basis);
    let quotient_projector = if dimension == 0 {
        Matrix::zeros(0, d)
    } else {
        let left = full
            .left_inverse()
            .expect("boundary basis and chosen cycles are independent");
        left.select_rows(&(b..b + dimension).collect::<Vec<_>>())
    };
    Ok(HomologySpace {
        degree: n,
        dimension,
        cycle_basis,
        boundary_basis,
        quotient_projector,
        kernel_dim: cycles.cols(),
        image_rank: b,
    })
}

pub fn all_homology(c: &NormedComplex) -> Result<Vec<HomologySpace>> {
    (0..=c.top_degree()).map(|n| homology(c, n)).collect()
}

pub fn betti_numbers(c: &NormedComplex) -> Result<Vec<usize>> {
    Ok(all_homology(c)?.iter().map(|h| h.dimension).collect())
}

/// Matrix of `H_n(f)` in the chosen bases (`dim H_n(target) × dim H_n(source)`).
pub fn induced_on_homology(f: &ChainMap, n: usize) -> Result<Matrix> {
    let hs = homology(&f.source, n)?;
    let ht = homology(&f.target, n)?;
    Ok(induced_between(f, n, &hs, &ht))
}

pub(crate) fn induced_between(f: &ChainMap, n: usize, hs: &HomologySpace, ht: &HomologySpace) -> Matrix {
    let image = f.mats[n].mul(&hs.cycle_basis);
    ht.quotient_projector.mul(&image)
}

/// Value and minimizing representative of a semi-norm computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeminormResult {
    pub value: Rational,
    /// A representative of the class attaining the value.
    pub witness: Vec<Rational>,
    /// Dual certificate from the LP: a (co)cycle `y` of dual norm at most 1
    /// with `⟨y, α⟩ = value`.
    pub certificate: Vec<Rational>,
}

/// `‖α‖ = min ‖α + ∂b‖₁` over `b` in the degree above.
pub fn seminorm(c: &NormedComplex, alpha: &HomologyClass) -> Result<SeminormResult> {
    if c.orientation != Orientation::Homological {
        return Err(Error::NormKind("seminorm needs a chain complex; use coseminorm".into()));
    }
    class_norm(c, alpha, NormKind::WeightedL1)
}

/// `‖φ‖ = min ‖φ + δg‖∞` over `g` in the degree below.
pub fn coseminorm(c: &NormedComplex, phi: &HomologyClass) -> Result<SeminormResult> {
    if c.orientation != Orientation::Cohomological {
        return Err(Error::NormKind("coseminorm needs a cochain complex".into()));
    }
    class_norm(c, phi, NormKind::WeightedLinf)
}

fn class_norm(c: &NormedComplex, alpha: &HomologyClass, kind: NormKind) -> Result<SeminormResult> {
    alpha.check_cycle(c)?;
    let spec = c.norm(alpha.degree);
    if spec.kind != kind {
        return Err(Error::NormKind(format!(
            "degree {} carries a {:?} norm, expected {:?}",
            alpha.degree, spec.kind, kind
        )));
    }
    let span = c.incoming(alpha.degree);
    let fit = match kind {
        NormKind::WeightedL1 => lp::min_weighted_l1(&alpha.representative, &span, &spec.weights)?,
        NormKind::WeightedLinf => lp::min_weighted_linf(&alpha.representative, &span, &spec.weights)?,
    };
    Ok(SeminormResult {
        value: fit.value,
        witness: fit.residual,
        certificate: fit.certificate,
    })
}

/// `⟨φ, α⟩` for a cocycle `φ` of `dual(c)` and a cycle `α` of `c`: plain
/// coordinate evaluation.
pub fn kronecker(c: &NormedComplex, phi: &HomologyClass, alpha: &HomologyClass) -> Result<Rational> {
    if phi.degree != alpha.degree {
        return Err(Error::Shape(format!(
            "pairing degree {} with degree {}",
            phi.degree, alpha.degree
        )));
    }
    alpha.check_cycle(c)?;
    phi.check_cycle(&c.dual_unchecked())?;
    Ok(rational::dot(&phi.representative, &alpha.representative))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub class: HomologyClass,
    pub primal_seminorm: Rational,
    /// `sup{1/‖φ‖ : φ ∈ H^n(C'), ⟨φ,α⟩ = 1}`, with the empty supremum 0.
    pub dual_sup: Rational,
    /// An optimal `φ`, absent when no cocycle pairs to 1 with `α`.
    pub certificate: Option<Vec<Rational>>,
    pub certificate_norm: Option<Rational>,
    /// A representative attaining the primal semi-norm.
    pub witness: Vec<Rational>,
    pub agree: bool,
}

/// Computes both sides of the semi-norm duality by two independent LPs.
///
/// Primal: `min ‖α + ∂b‖₁`. Dual: `min t` over cocycles `φ` of the dual
/// complex with `⟨φ, α⟩ = 1` and `‖φ‖∞ <= t`; the supremum is `1/t*`, or 0
/// when that LP is infeasible.
pub fn gromov_duality(c: &NormedComplex, alpha: &HomologyClass) -> Result<DualityReport> {
    let primal = seminorm(c, alpha)?;
    let n = alpha.degree;
    let d = c.dim(n);
    let above = c.incoming(n); // d × d_{n+1}
    let u: Vec<Rational> = c.norm(n).weights.iter().map(|w| w.recip()).collect();
    let k = above.cols();
    let nv = d + 1;
    let t = d;
    let rows = k + 1 + 2 * d;
    let mut a = Matrix::zeros(rows, nv);
    let mut b = vec![Rational::zero(); rows];
    let mut senses = Vec::with_capacity(rows);
    // δφ = ∂_{n+1}ᵀ φ = 0
    for r in 0..k {
        for i in 0..d {
            let v = above.get(i, r);
            if !v.is_zero() {
                a.set(r, i, v.clone());
            }
        }
        senses.push(Sense::Eq);
    }
    // ⟨φ, α⟩ = 1
    for (i, v) in alpha.representative.iter().enumerate() {
        if !v.is_zero() {
            a.set(k, i, v.clone());
        }
    }
    b[k] = rational::one();
    senses.push(Sense::Eq);
    for i in 0..d {
        a.set(k + 1 + i, i, u[i].clone());
        a.set(k + 1 + i, t, -rational::one());
        a.set(k + 1 + d + i, i, -u[i].clone());
        a.set(k + 1 + d + i, t, -rational::one());
    }
    senses.extend(std::iter::repeat_n(Sense::Le, 2 * d));
    let mut objective = vec![Rational::zero(); nv];
    objective[t] = rational::one();
    let mut lower = vec![None; nv];
    lower[t] = Some(Rational::zero());
    let program = LinearProgram::new(objective, a, b, senses).with_bounds(lower, vec![None; nv]);
    let sol = lp::solve(&program)?;
    let (dual_sup, certificate, certificate_norm) = match sol.status {
        LpStatus::Infeasible => (Rational::zero(), None, None),
        LpStatus::Optimal => {
            let m = sol.value().cloned().expect("optimal has a value");
            if !m.is_positive() {
                return Err(Error::Certificate("dual LP optimum is not positive".into()));
            }
            let phi = sol.primal[..d].to_vec();
            let norm = rational::weighted_linf(&phi, &u);
            if norm != m || rational::dot(&phi, &alpha.representative) != rational::one() {
                return Err(Error::Certificate("dual certificate does not verify".into()));
            }
            (m.recip(), Some(phi), Some(norm))
        }
        LpStatus::Unbounded => {
            return Err(Error::Certificate("dual LP cannot be unbounded (t >= 0)".into()));
        }
    };
    let agree = primal.value == dual_sup;
    Ok(DualityReport {
        class: alpha.clone(),
        primal_seminorm: primal.value,
        dual_sup,
        certificate,
        certificate_norm,
        witness: primal.witness,
        agree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityProfile {
    pub homology_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
}

impl DualityProfile {
    pub fn homology_vanishes(&self) -> bool {
        self.homology_dims.iter().all(|&d| d == 0)
    }

    pub fn cohomology_vanishes(&self) -> bool {
        self.cohomology_dims.iter().all(|&d| d == 0)
    }

    /// The biconditional: `H_*(C) = 0` exactly when `H^*(C') = 0`.
    pub fn consistent(&self) -> bool {
        self.homology_vanishes() == self.cohomology_vanishes()
    }
}

pub fn duality_profile(c: &NormedComplex) -> Result<DualityProfile> {
    let dual = c.dual()?;
    Ok(DualityProfile {
        homology_dims: betti_numbers(c)?,
        cohomology_dims: betti_numbers(&dual)?,
    })
}

/// Returns whether `H_*(c)` and `H^*(c')` vanish together. A `false` here
/// would contradict a theorem and marks a bug.
pub fn duality_principle(c: &NormedComplex) -> Result<bool> {
    Ok(duality_profile(c)?.consistent())
}

/// Whether evaluation `H^n(c') -> H_n(c)'` is an isomorphism, checked by
/// building the pairing matrix between the two chosen bases.
pub fn evaluation_iso_check(c: &NormedComplex, n: usize) -> Result<bool> {
    Ok(pairing_matrix(c, n)?.inverse().is_some())
}

/// `P_ij = ⟨φ_i, h_j⟩` over bases of `H^n(c')` and `H_n(c)`.
pub fn pairing_matrix(c: &NormedComplex, n: usize) -> Result<Matrix> {
    let dual = c.dual()?;
    let h = homology(c, n)?;
    let hd = homology(&dual, n)?;
    Ok(hd.cycle_basis.transpose().mul(&h.cycle_basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::NormSpec;
    use crate::rational::{int, rat};

    fn tetra() -> NormedComplex {
        crate::complex::tests::tetra_boundary()
    }

    fn circle3() -> NormedComplex {
        // vertices 0,1,2 ; edges 01 02 12
        let d1 = Matrix::from_i64(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]], 3);
        NormedComplex::checked(
            Orientation::Homological,
            vec![3, 3],
            vec![d1],
            vec![NormSpec::unit(NormKind::WeightedL1, 3); 2],
        )
        .unwrap()
    }

    #[test]
    fn interval_is_acyclic() {
        let c = crate::complex::tests::interval();
        assert_eq!(betti_numbers(&c).unwrap(), vec![0, 0]);
    }

    #[test]
    fn sphere_betti() {
        assert_eq!(betti_numbers(&tetra()).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn zero_boundaries_give_whole_space() {
        let c = NormedComplex::checked(
            Orientation::Homological,
            vec![2, 3],
            vec![Matrix::zeros(2, 3)],
            vec![NormSpec::unit(NormKind::WeightedL1, 2), NormSpec::unit(NormKind::WeightedL1, 3)],
        )
        .unwrap();
        assert_eq!(betti_numbers(&c).unwrap(), vec![2, 3]);
        assert!(matches!(homology(&c, 2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn fundamental_class_of_sphere() {
        let c = tetra();
        let h2 = homology(&c, 2).unwrap();
        let alpha = h2.basis_class(0);
        let s = seminorm(&c, &alpha).unwrap();
        assert_eq!(s.value, int(4));
        let rep = gromov_duality(&c, &alpha).unwrap();
        assert!(rep.agree);
        assert_eq!(rep.dual_sup, int(4));
        let phi = rep.certificate.unwrap();
        assert!(phi.iter().all(|v| v.abs() == rat(1, 4)));
        let phi = HomologyClass { degree: 2, representative: phi };
        assert_eq!(kronecker(&c, &phi, &alpha).unwrap(), int(1));
    }

    #[test]
    fn boundary_class_has_zero_norm_both_ways() {
        let c = tetra();
        let b = c.boundary(2).column(0);
        let alpha = HomologyClass::new(&c, 1, b).unwrap();
        assert_eq!(seminorm(&c, &alpha).unwrap().value, int(0));
        let rep = gromov_duality(&c, &alpha).unwrap();
        assert_eq!(rep.dual_sup, int(0));
        assert!(rep.certificate.is_none());
        assert!(rep.agree);
    }

    #[test]
    fn circle_generator_norm_three() {
        let c = circle3();
        let h1 = homology(&c, 1).unwrap();
        assert_eq!(h1.dimension, 1);
        assert_eq!(seminorm(&c, &h1.basis_class(0)).unwrap().value, int(3));
    }

    #[test]
    fn non_cycle_rejected() {
        let c = tetra();
        assert!(matches!(
            HomologyClass::new(&c, 1, vec![int(1), int(0), int(0), int(0), int(0), int(0)]),
            Err(Error::NotACycle(_))
        ));
        let dual = c.dual().unwrap();
        let h = homology(&c, 2).unwrap();
        assert!(matches!(seminorm(&dual, &h.basis_class(0)), Err(Error::NormKind(_))));
    }

    #[test]
    fn constant_cocycle_has_norm_one() {
        let dual = tetra().dual().unwrap();
        let phi = HomologyClass::new(&dual, 0, vec![int(1); 4]).unwrap();
        assert_eq!(coseminorm(&dual, &phi).unwrap().value, int(1));
        let zero = HomologyClass::new(&dual, 0, vec![int(0); 4]).unwrap();
        assert_eq!(coseminorm(&dual, &zero).unwrap().value, int(0));
        // a coboundary in degree 1
        let cob = dual.outgoing(0).mul_vec(&[int(1), int(2), int(0), int(-1)]);
        let cob = HomologyClass::new(&dual, 1, cob).unwrap();
        assert_eq!(coseminorm(&dual, &cob).unwrap().value, int(0));
    }

    #[test]
    fn kronecker_ignores_boundaries() {
        let c = tetra();
        let alpha = homology(&c, 2).unwrap().basis_class(0);
        let phi = HomologyClass { degree: 2, representative: alpha.representative.iter().map(|v| v * rat(1, 4)).collect() };
        assert_eq!(kronecker(&c, &phi, &alpha).unwrap(), int(1));
        let zero = HomologyClass { degree: 2, representative: vec![int(0); 4] };
        assert_eq!(kronecker(&c, &zero, &alpha).unwrap(), int(0));
        let dual = c.dual().unwrap();
        let z1 = homology(&c, 1).unwrap();
        assert_eq!(z1.dimension, 0);
        let psi = HomologyClass { degree: 1, representative: dual.outgoing(0).mul_vec(&[int(1), int(0), int(0), int(0)]) };
        let b = HomologyClass { degree: 1, representative: c.boundary(2).column(1) };
        assert_eq!(kronecker(&c, &psi, &b).unwrap(), int(0));
        assert!(kronecker(&c, &psi, &alpha).is_err());
    }

    #[test]
    fn duality_principle_examples() {
        assert!(duality_principle(&crate::complex::tests::interval()).unwrap());
        let p = duality_profile(&tetra()).unwrap();
        assert_eq!(p.homology_dims, vec![1, 0, 1]);
        assert_eq!(p.cohomology_dims, vec![1, 0, 1]);
        assert!(p.consistent());
    }

    #[test]
    fn evaluation_is_iso() {
        let c = tetra();
        assert_eq!(pairing_matrix(&c, 2).unwrap().shape(), (1, 1));
        assert!(evaluation_iso_check(&c, 2).unwrap());
        assert_eq!(pairing_matrix(&c, 1).unwrap().shape(), (0, 0));
        assert!(evaluation_iso_check(&c, 1).unwrap());
    }
}
