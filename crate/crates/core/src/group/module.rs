use num_traits::{One, Signed, Zero};

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// A left action of a finite group by monomial matrices: `g·e_s = c·e_t`
/// is stored as `images[g][s] = (t, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAction {
    images: Vec<Vec<(usize, Rational)>>,
}

impl MonomialAction {
    pub fn from_images(images: Vec<Vec<(usize, Rational)>>) -> Self {
        Self { images }
    }

    pub fn trivial(order: usize, dim: usize) -> Self {
        let row: Vec<(usize, Rational)> = (0..dim).map(|s| (s, rational::one())).collect();
        Self { images: vec![row; order] }
    }

    /// An action permuting basis vectors without signs.
    pub fn permutation(perms: Vec<Vec<usize>>) -> Self {
        let images = perms
            .into_iter()
            .map(|p| p.into_iter().map(|t| (t, rational::one())).collect())
            .collect();
        Self { images }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, Vec::len)
    }

    pub fn image(&self, g: usize, s: usize) -> (usize, &Rational) {
        let (t, c) = &self.images[g][s];
        (*t, c)
    }

    pub fn images(&self, g: usize) -> &[(usize, Rational)] {
        &self.images[g]
    }

    pub fn apply(&self, g: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (s, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let (t, c) = &self.images[g][s];
                out[*t] += x * c;
            }
        }
        out
    }

    pub fn matrix(&self, g: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (s, (t, c)) in self.images[g].iter().enumerate() {
            m.set(*t, s, c.clone());
        }
        m
    }

    /// Checks the monomial shape, that each element is an isometry of the
    /// weighted ℓ¹ norm (`|c| w_t = w_s`), and that the action is a
    /// homomorphism on the full table.
    pub fn check(&self, group: &FiniteGroup, weights: &[Rational]) -> Result<()> {
        let d = weights.len();
        if self.images.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} action entries for a group of order {}",
                self.images.len(),
                group.order()
            )));
        }
        for (g, row) in self.images.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidAction(format!("element {g} acts on {} coordinates, expected {d}", row.len())));
            }
            let mut hit = vec![false; d];
            for (s, (t, c)) in row.iter().enumerate() {
                if *t >= d || std::mem::replace(&mut hit[*t], true) {
                    return Err(Error::InvalidAction(format!("element {g} is not a monomial map (target {t})")));
                }
                if c.is_zero() || c.abs() * &weights[*t] != weights[s] {
                    return Err(Error::InvalidAction(format!(
                        "element {g} is not isometric on e_{s}: |{c}|·w_{t} != w_{s}"
                    )));
                }
            }
        }
        let e = group.identity();
        if let Some(s) = (0..d).find(|&s| self.images[e][s] != (s, rational::one())) {
            return Err(Error::InvalidAction(format!("identity moves e_{s}")));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                for s in 0..d {
                    let (t, c) = &self.images[b][s];
                    let (u, c2) = &self.images[a][*t];
                    let (u_ab, c_ab) = &self.images[ab][s];
                    if u != u_ab || c * c2 != *c_ab {
                        return Err(Error::InvalidAction(format!(
                            "not a homomorphism: ({a}·{b})·e_{s} != {a}·({b}·e_{s})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The contragredient action on the dual basis: `g` acts by the
    /// transpose of the matrix of `g⁻¹`.
    pub fn dual(&self, group: &FiniteGroup) -> MonomialAction {
        let d = self.dim();
        let images = (0..group.order())
            .map(|g| {
                let mut row = vec![(0, Rational::zero()); d];
                for (s, (t, c)) in self.images[group.inv(g)].iter().enumerate() {
                    row[*t] = (s, c.clone());
                }
                row
            })
            .collect();
        MonomialAction { images }
    }

    /// Orbit decomposition and the coinvariant projection.
    pub fn orbits(&self) -> OrbitData {
        let d = self.dim();
        let mut rep_of = vec![usize::MAX; d];
        let mut reps = Vec::new();
        let mut class_of = vec![None; d];
        let mut all_reps = Vec::new();
        for r in 0..d {
            if rep_of[r] != usize::MAX {
                continue;
            }
            all_reps.push(r);
            let dead = self.images.iter().any(|row| row[r].0 == r && !row[r].1.is_one());
            let slot = reps.len();
            if !dead {
                reps.push(r);
            }
            for row in &self.images {
                let (i, lambda) = &row[r];
                if rep_of[*i] == usize::MAX {
                    rep_of[*i] = r;
                    if !dead {
                        class_of[*i] = Some((slot, lambda.recip()));
                    }
                }
            }
        }
        OrbitData { reps, all_reps, rep_of, class_of }
    }
}

/// Orbits of a monomial action on basis indices.
///
/// An orbit survives in the coinvariants unless some stabilizer element
/// acts on it by a scalar other than 1. For a surviving orbit with
/// representative `r`, `g·e_r = λ e_i` gives `[e_i] = λ⁻¹ [e_r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    /// Representatives (smallest index) of surviving orbits, increasing.
    pub reps: Vec<usize>,
    /// Representatives of every orbit.
    pub all_reps: Vec<usize>,
    pub rep_of: Vec<usize>,
    /// `(position in reps, coefficient)` for indices in surviving orbits.
    pub class_of: Vec<Option<(usize, Rational)>>,
}

impl OrbitData {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates in the coinvariants of a vector upstairs.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.reps.len()];
        for (i, x) in v.iter().enumerate() {
            if let (false, Some((k, c))) = (x.is_zero(), &self.class_of[i]) {
                out[*k] += x * c;
            }
        }
        out
    }

    pub fn projection_matrix(&self) -> Matrix {
        let mut p = Matrix::zeros(self.reps.len(), self.rep_of.len());
        for (i, entry) in self.class_of.iter().enumerate() {
            if let Some((k, c)) = entry {
                p.set(*k, i, c.clone());
            }
        }
        p
    }

    /// The section sending `[e_r]` to `e_r`.
    pub fn section_matrix(&self) -> Matrix {
        let mut s = Matrix::zeros(self.rep_of.len(), self.reps.len());
        for (k, &r) in self.reps.iter().enumerate() {
            s.set(r, k, rational::one());
        }
        s
    }
}

/// A finite-dimensional module with weighted ℓ¹ norm and an isometric
/// monomial action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialModule {
    pub weights: Vec<Rational>,
    pub action: MonomialAction,
}

impl MonomialModule {
    pub fn new(group: &FiniteGroup, weights: Vec<Rational>, action: MonomialAction) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidModule(format!("weight {i} is not positive")));
        }
        action.check(group, &weights)?;
        Ok(Self { weights, action })
    }

    /// Builds a module from `(source, target, coefficient)` triples per
    /// element. Elements without triples act trivially.
    pub fn from_triples(
        group: &FiniteGroup,
        weights: Vec<Rational>,
        triples: &[Option<Vec<(usize, usize, Rational)>>],
    ) -> Result<Self> {
        let d = weights.len();
        if triples.len() > group.order() {
            return Err(Error::InvalidModule(format!("action lists {} elements", triples.len())));
        }
        let mut images = MonomialAction::trivial(group.order(), d).images;
        for (g, entry) in triples.iter().enumerate() {
            let Some(list) = entry else { continue };
            let mut row: Vec<Option<(usize, Rational)>> = vec![None; d];
            for (s, t, c) in list {
                if *s >= d || *t >= d {
                    return Err(Error::InvalidModule(format!("element {g}: index out of range in ({s}, {t})")));
                }
                if row[*s].replace((*t, c.clone())).is_some() {
                    return Err(Error::InvalidModule(format!("element {g}: e_{s} given twice")));
                }
            }
            images[g] = row
                .into_iter()
                .enumerate()
                .map(|(s, x)| x.ok_or_else(|| Error::InvalidModule(format!("element {g}: no image for e_{s}"))))
                .collect::<Result<_>>()?;
        }
        Self::new(group, weights, MonomialAction { images })
    }

    /// ℝ with the trivial action.
    pub fn trivial_line(group: &FiniteGroup) -> Self {
        Self::trivial(group, vec![rational::one()])
    }

    pub fn trivial(group: &FiniteGroup, weights: Vec<Rational>) -> Self {
        let d = weights.len();
        Self::new(group, weights, MonomialAction::trivial(group.order(), d)).expect("trivial module")
    }

    /// ℝ with `g` acting by `character[g] = ±1`.
    pub fn sign(group: &FiniteGroup, character: &[i64]) -> Result<Self> {
        let images = character
            .iter()
            .map(|&s| {
                if s == 1 || s == -1 {
                    Ok(vec![(0, rational::int(s))])
                } else {
                    Err(Error::InvalidModule(format!("character value {s} is not ±1")))
                }
            })
            .collect::<Result<_>>()?;
        Self::new(group, vec![rational::one()], MonomialAction { images })
    }

    /// `ℝ[G]` with left multiplication and unit weights.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        let perms = (0..n).map(|g| (0..n).map(|h| group.mul(g, h)).collect()).collect();
        Self::new(group, vec![rational::one(); n], MonomialAction::permutation(perms)).expect("regular module")
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `f: self -> other` is equivariant along `phi`: `f∘g = φ(g)∘f`.
    pub fn check_morphism(&self, other: &MonomialModule, phi: &[usize], f: &Matrix) -> Result<()> {
        if f.shape() != (other.dim(), self.dim()) {
            return Err(Error::Shape(format!(
                "module map is {:?}, expected {:?}",
                f.shape(),
                (other.dim(), self.dim())
            )));
        }
        for (g, &pg) in phi.iter().enumerate() {
            let left = f.mul(&self.action.matrix(g));
            let right = other.action.matrix(pg).mul(f);
            if let Some((i, j)) = left.first_difference(&right) {
                return Err(Error::InvalidModule(format!(
                    "module map is not equivariant for element {g} at entry ({i}, {j})"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn sign_module_orbits_die() {
        let z2 = FiniteGroup::cyclic(2);
        let m = MonomialModule::sign(&z2, &[1, -1]).unwrap();
        let o = m.action.orbits();
        assert_eq!(o.dim(), 0);
        assert_eq!(o.all_reps, vec![0]);
        assert!(MonomialModule::sign(&z2, &[-1, -1]).is_err());
    }

    #[test]
    fn regular_module_has_one_orbit() {
        let s3 = FiniteGroup::symmetric3();
        let m = MonomialModule::regular(&s3);
        let o = m.action.orbits();
        assert_eq!(o.reps, vec![0]);
        assert_eq!(o.project(&vec![int(1); 6]), vec![int(6)]);
    }

    #[test]
    fn scaled_swap_needs_matching_weights() {
        let z2 = FiniteGroup::cyclic(2);
        let w = vec![int(1), int(2)];
        let triples = vec![None, Some(vec![(0, 1, rational::rat(1, 2)), (1, 0, int(2))])];
        let m = MonomialModule::from_triples(&z2, w.clone(), &triples).unwrap();
        let o = m.action.orbits();
        assert_eq!(o.reps, vec![0]);
        assert_eq!(o.class_of[1], Some((0, int(2))));
        let bad = vec![None, Some(vec![(0, 1, int(1)), (1, 0, int(1))])];
        assert!(matches!(MonomialModule::from_triples(&z2, w, &bad), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn dual_action_is_an_action() {
        let s3 = FiniteGroup::symmetric3();
        let m = MonomialModule::regular(&s3);
        let d = m.action.dual(&s3);
        assert!(d.check(&s3, &m.weights).is_ok());
        for g in 0..6 {
            assert_eq!(d.matrix(g), m.action.matrix(s3.inv(g)).transpose());
        }
    }

    #[test]
    fn non_homomorphic_action_rejected() {
        let z3 = FiniteGroup::cyclic(3);
        let swap = vec![(1, int(1)), (0, int(1))];
        let id = vec![(0, int(1)), (1, int(1))];
        let action = MonomialAction::from_images(vec![id, swap.clone(), swap]);
        assert!(MonomialModule::new(&z3, vec![int(1); 2], action).is_err());
    }
}
