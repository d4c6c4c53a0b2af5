//! Finite normed chain and cochain complexes over the rationals.
//!
//! A [`NormedComplex`] is concentrated in degrees `0..=N`. For a homological
//! complex `maps[k]` is the boundary `∂_{k+1}: C_{k+1} -> C_k` (shape
//! `d_k × d_{k+1}`); for a cohomological complex `maps[k]` is the coboundary
//! `δ^k: C^k -> C^{k+1}` (shape `d_{k+1} × d_k`). Columns index the source
//! basis.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Homological,
    Cohomological,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Homological => Orientation::Cohomological,
            Orientation::Cohomological => Orientation::Homological,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormKind {
    /// `‖x‖ = Σ w_i |x_i|`
    WeightedL1,
    /// `‖x‖ = max u_i |x_i|`
    WeightedLinf,
}

impl NormKind {
    pub fn dual(self) -> Self {
        match self {
            NormKind::WeightedL1 => NormKind::WeightedLinf,
            NormKind::WeightedLinf => NormKind::WeightedL1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSpec {
    pub kind: NormKind,
    pub weights: Vec<Rational>,
}

impl NormSpec {
    pub fn l1(weights: Vec<Rational>) -> Self {
        Self {
            kind: NormKind::WeightedL1,
            weights,
        }
    }

    pub fn linf(weights: Vec<Rational>) -> Self {
        Self {
            kind: NormKind::WeightedLinf,
            weights,
        }
    }

    pub fn unit(kind: NormKind, dim: usize) -> Self {
        Self {
            kind,
            weights: vec![rational::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The exact dual norm: weights are inverted and ℓ¹ and ℓ∞ swap.
    pub fn dual(&self) -> Self {
        Self {
            kind: self.kind.dual(),
            weights: self.weights.iter().map(|w| w.recip()).collect(),
        }
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        match self.kind {
            NormKind::WeightedL1 => rational::weighted_l1(x, &self.weights),
            NormKind::WeightedLinf => rational::weighted_linf(x, &self.weights),
        }
    }

    /// Direct sum with another spec of the same kind: concatenated weights.
    /// For ℓ¹ this is the sum norm, for ℓ∞ the maximum norm.
    pub fn direct_sum(&self, other: &NormSpec) -> Result<NormSpec> {
        if self.kind != other.kind {
            return Err(Error::NormKind(format!(
                "direct sum of {:?} and {:?}",
                self.kind, other.kind
            )));
        }
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        Ok(NormSpec {
            kind: self.kind,
            weights,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormedComplex {
    pub orientation: Orientation,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
    pub norms: Vec<NormSpec>,
    pub labels: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    Shape,
    NormLength,
    NonPositiveWeight,
    SquareNonZero,
    LabelCount,
    NotChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub degree: usize,
    /// Offending `(row, column)` entry, when there is one.
    pub entry: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in degree {}", self.kind, self.degree)?;
        if let Some((i, j)) = self.entry {
            write!(f, " at entry ({i}, {j})")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self, make: fn(String) -> Error) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(make(v.to_string())),
        }
    }
}

impl NormedComplex {
    /// Assembles a complex without checking it; see [`NormedComplex::validate`].
    pub fn new(
        orientation: Orientation,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
        norms: Vec<NormSpec>,
    ) -> Self {
        Self {
            orientation,
            dims,
            maps,
            norms,
            labels: None,
        }
    }

    /// Like [`NormedComplex::new`] but rejects anything `validate` flags.
    pub fn checked(
        orientation: Orientation,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
        norms: Vec<NormSpec>,
    ) -> Result<Self> {
        let c = Self::new(orientation, dims, maps, norms);
        c.ensure_valid()?;
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// The complex with all spaces zero in degrees `0..=top`.
    pub fn zero(orientation: Orientation, top: usize) -> Self {
        let dims = vec![0; top + 1];
        Self::new(
            orientation,
            dims,
            (0..top).map(|_| Matrix::zeros(0, 0)).collect(),
            (0..=top)
                .map(|_| NormSpec::unit(NormKind::WeightedL1, 0))
                .collect(),
        )
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn is_homological(&self) -> bool {
        self.orientation == Orientation::Homological
    }

    pub fn norm(&self, n: usize) -> &NormSpec {
        &self.norms[n]
    }

    fn expected_shape(&self, k: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Homological => (self.dim(k), self.dim(k + 1)),
            Orientation::Cohomological => (self.dim(k + 1), self.dim(k)),
        }
    }

    /// The map leaving degree `n`: `∂_n` (homological) or `δ^n`
    /// (cohomological). Zero maps outside the stored range.
    pub fn outgoing(&self, n: usize) -> Matrix {
        match self.orientation {
            Orientation::Homological => {
                if n == 0 {
                    Matrix::zeros(0, self.dim(0))
                } else {
                    self.maps[n - 1].clone()
                }
            }
            Orientation::Cohomological => {
                if n >= self.top_degree() {
                    Matrix::zeros(0, self.dim(n))
                } else {
                    self.maps[n].clone()
                }
            }
        }
    }

    /// The map arriving in degree `n`: `∂_{n+1}` or `δ^{n-1}`.
    pub fn incoming(&self, n: usize) -> Matrix {
        match self.orientation {
            Orientation::Homological => {
                if n >= self.top_degree() {
                    Matrix::zeros(self.dim(n), 0)
                } else {
                    self.maps[n].clone()
                }
            }
            Orientation::Cohomological => {
                if n == 0 {
                    Matrix::zeros(self.dim(0), 0)
                } else {
                    self.maps[n - 1].clone()
                }
            }
        }
    }

    /// Homological boundary `∂_n`, `1 <= n <= N`.
    pub fn boundary(&self, n: usize) -> &Matrix {
        assert!(self.is_homological());
        &self.maps[n - 1]
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                top: self.top_degree(),
            });
        }
        Ok(())
    }

    /// Lists every violated structural invariant. Nothing is an error here.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n_top = self.top_degree();
        if self.maps.len() != n_top {
            violations.push(Violation {
                kind: ViolationKind::Shape,
                degree: n_top,
                entry: None,
                message: format!("expected {} maps, found {}", n_top, self.maps.len()),
            });
            return ValidationReport { violations };
        }
        if self.norms.len() != self.dims.len() {
            violations.push(Violation {
                kind: ViolationKind::NormLength,
                degree: 0,
                entry: None,
                message: format!(
                    "expected {} norm specs, found {}",
                    self.dims.len(),
                    self.norms.len()
                ),
            });
        }
        for (n, spec) in self.norms.iter().enumerate().take(self.dims.len()) {
            if spec.dim() != self.dims[n] {
                violations.push(Violation {
                    kind: ViolationKind::NormLength,
                    degree: n,
                    entry: None,
                    message: format!("{} weights for dimension {}", spec.dim(), self.dims[n]),
                });
            }
            if let Some(i) = spec.weights.iter().position(|w| !w.is_positive()) {
                violations.push(Violation {
                    kind: ViolationKind::NonPositiveWeight,
                    degree: n,
                    entry: Some((i, i)),
                    message: format!("weight {} is not positive", spec.weights[i]),
                });
            }
        }
        if let Some(labels) = &self.labels {
            for (n, l) in labels.iter().enumerate() {
                if l.len() != self.dim(n) {
                    violations.push(Violation {
                        kind: ViolationKind::LabelCount,
                        degree: n,
                        entry: None,
                        message: format!("{} labels for dimension {}", l.len(), self.dim(n)),
                    });
                }
            }
        }
        let mut shapes_ok = true;
        for (k, m) in self.maps.iter().enumerate() {
            let want = self.expected_shape(k);
            if m.shape() != want {
                shapes_ok = false;
                violations.push(Violation {
                    kind: ViolationKind::Shape,
                    degree: self.map_degree(k),
                    entry: None,
                    message: format!("map has shape {:?}, expected {:?}", m.shape(), want),
                });
            }
        }
        if shapes_ok {
            for k in 1..self.maps.len() {
                let sq = match self.orientation {
                    Orientation::Homological => self.maps[k - 1].mul(&self.maps[k]),
                    Orientation::Cohomological => self.maps[k].mul(&self.maps[k - 1]),
                };
                if let Some((i, j)) = sq.first_nonzero() {
                    let (deg, what) = match self.orientation {
                        Orientation::Homological => (k + 1, format!("∂_{}·∂_{}", k, k + 1)),
                        Orientation::Cohomological => (k - 1, format!("δ^{}·δ^{}", k, k - 1)),
                    };
                    violations.push(Violation {
                        kind: ViolationKind::SquareNonZero,
                        degree: deg,
                        entry: Some((i, j)),
                        message: format!("{what} has entry {} ≠ 0", sq.get(i, j)),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Degree of the source space of `maps[k]`.
    fn map_degree(&self, k: usize) -> usize {
        match self.orientation {
            Orientation::Homological => k + 1,
            Orientation::Cohomological => k,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().into_result(Error::InvalidComplex)
    }

    /// Degreewise topological dual. ℓ¹ becomes ℓ∞ with inverted weights and
    /// the maps are transposed.
    pub fn dual(&self) -> Result<NormedComplex> {
        self.ensure_valid()?;
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> NormedComplex {
        NormedComplex {
            orientation: self.orientation.flip(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
            norms: self.norms.iter().map(NormSpec::dual).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Shift by one degree with all boundary signs flipped; the new degree 0
    /// is the zero space.
    pub fn suspension(&self) -> NormedComplex {
        let d0 = self.dim(0);
        let first = match self.orientation {
            Orientation::Homological => Matrix::zeros(0, d0),
            Orientation::Cohomological => Matrix::zeros(d0, 0),
        };
        let mut maps = vec![first];
        maps.extend(self.maps.iter().map(Matrix::neg));
        let mut dims = vec![0];
        dims.extend(&self.dims);
        let kind = self.norms.first().map_or(NormKind::WeightedL1, |n| n.kind);
        let mut norms = vec![NormSpec::unit(kind, 0)];
        norms.extend(self.norms.iter().cloned());
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![Vec::new()];
            out.extend(l.iter().cloned());
            out
        });
        NormedComplex {
            orientation: self.orientation,
            dims,
            maps,
            norms,
            labels,
        }
    }

    /// Completion with respect to the norms. At finite dimension every normed
    /// space is already complete, so this returns the complex unchanged.
    pub fn completion(&self) -> NormedComplex {
        self.clone()
    }

    /// Same spaces and norms with every map negated.
    pub fn negated(&self) -> NormedComplex {
        NormedComplex {
            maps: self.maps.iter().map(Matrix::neg).collect(),
            ..self.clone()
        }
    }

    /// Appends zero-dimensional degrees up to `top`.
    pub fn padded(&self, top: usize) -> NormedComplex {
        let mut c = self.clone();
        while c.top_degree() < top {
            let below = c.dim(c.top_degree());
            c.dims.push(0);
            c.norms.push(NormSpec { kind: c.norms.last().map_or(NormKind::WeightedL1, |s| s.kind), weights: Vec::new() });
            c.maps.push(match c.orientation {
                Orientation::Homological => Matrix::zeros(below, 0),
                Orientation::Cohomological => Matrix::zeros(0, below),
            });
            if let Some(l) = c.labels.as_mut() {
                l.push(Vec::new());
            }
        }
        c
    }

    /// Drops the top degrees above `top`.
    pub fn truncate(&self, top: usize) -> NormedComplex {
        if top >= self.top_degree() {
            return self.clone();
        }
        NormedComplex {
            orientation: self.orientation,
            dims: self.dims[..=top].to_vec(),
            maps: self.maps[..top].to_vec(),
            norms: self.norms[..=top].to_vec(),
            labels: self.labels.as_ref().map(|l| l[..=top].to_vec()),
        }
    }
}

/// A degreewise family of matrices `F_n` of shape `target.dims[n] ×
/// source.dims[n]` commuting with the (co)boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Arc<NormedComplex>,
    pub target: Arc<NormedComplex>,
    pub mats: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(
        source: Arc<NormedComplex>,
        target: Arc<NormedComplex>,
        mats: Vec<Matrix>,
    ) -> Result<Self> {
        let f = ChainMap {
            source,
            target,
            mats,
        };
        f.ensure_valid()?;
        Ok(f)
    }

    pub fn new_unchecked(
        source: Arc<NormedComplex>,
        target: Arc<NormedComplex>,
        mats: Vec<Matrix>,
    ) -> Self {
        ChainMap {
            source,
            target,
            mats,
        }
    }

    pub fn identity(c: Arc<NormedComplex>) -> Self {
        let mats = c.dims.iter().map(|&d| Matrix::identity(d)).collect();
        ChainMap {
            source: c.clone(),
            target: c,
            mats,
        }
    }

    pub fn zero(source: Arc<NormedComplex>, target: Arc<NormedComplex>) -> Self {
        let mats = (0..source.dims.len())
            .map(|n| Matrix::zeros(target.dim(n), source.dim(n)))
            .collect();
        ChainMap {
            source,
            target,
            mats,
        }
    }

    pub fn scalar(c: Arc<NormedComplex>, s: &Rational) -> Self {
        let mats = c.dims.iter().map(|&d| Matrix::scalar(d, s)).collect();
        ChainMap {
            source: c.clone(),
            target: c,
            mats,
        }
    }

    pub fn top_degree(&self) -> usize {
        self.source.top_degree()
    }

    pub fn negate(&self) -> ChainMap {
        ChainMap {
            mats: self.mats.iter().map(Matrix::neg).collect(),
            ..self.clone()
        }
    }

    pub fn apply(&self, n: usize, v: &[Rational]) -> Vec<Rational> {
        self.mats[n].mul_vec(v)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.source.validate();
        report.violations.extend(self.target.validate().violations);
        if !report.is_valid() {
            return report;
        }
        let push = |report: &mut ValidationReport, degree, entry, message| {
            report.violations.push(Violation {
                kind: ViolationKind::NotChainMap,
                degree,
                entry,
                message,
            })
        };
        if self.source.orientation != self.target.orientation {
            push(&mut report, 0, None, "source and target orientation differ".into());
            return report;
        }
        if self.source.top_degree() != self.target.top_degree() {
            push(
                &mut report,
                0,
                None,
                format!(
                    "top degrees differ: {} vs {}",
                    self.source.top_degree(),
                    self.target.top_degree()
                ),
            );
            return report;
        }
        if self.mats.len() != self.source.dims.len() {
            push(
                &mut report,
                0,
                None,
                format!("{} matrices for {} degrees", self.mats.len(), self.source.dims.len()),
            );
            return report;
        }
        for (n, m) in self.mats.iter().enumerate() {
            let want = (self.target.dim(n), self.source.dim(n));
            if m.shape() != want {
                push(
                    &mut report,
                    n,
                    None,
                    format!("F_{n} has shape {:?}, expected {:?}", m.shape(), want),
                );
                return report;
            }
        }
        for k in 0..self.source.maps.len() {
            let (lhs, rhs, deg) = match self.source.orientation {
                // F_k ∂^s_{k+1} = ∂^t_{k+1} F_{k+1}
                Orientation::Homological => (
                    self.mats[k].mul(&self.source.maps[k]),
                    self.target.maps[k].mul(&self.mats[k + 1]),
                    k + 1,
                ),
                // F_{k+1} δ_s^k = δ_t^k F_k
                Orientation::Cohomological => (
                    self.mats[k + 1].mul(&self.source.maps[k]),
                    self.target.maps[k].mul(&self.mats[k]),
                    k,
                ),
            };
            if let Some((i, j)) = lhs.first_difference(&rhs) {
                push(
                    &mut report,
                    deg,
                    Some((i, j)),
                    format!(
                        "map does not commute with the boundary: {} ≠ {}",
                        lhs.get(i, j),
                        rhs.get(i, j)
                    ),
                );
            }
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().into_result(Error::InvalidMap)
    }

    /// Exact operator norm of `F_n` between weighted ℓ¹ spaces:
    /// `max_j Σ_i w^t_i |F_ij| / w^s_j`.
    pub fn operator_norm(&self, n: usize) -> Result<Rational> {
        self.source.check_degree(n)?;
        let s = self.source.norm(n);
        let t = self.target.norm(n);
        if s.kind != NormKind::WeightedL1 || t.kind != NormKind::WeightedL1 {
            return Err(Error::NormKind(
                "operator norms are only computed between weighted ℓ¹ spaces".into(),
            ));
        }
        Ok(l1_operator_norm(&self.mats[n], &s.weights, &t.weights))
    }

    /// Degreewise product `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        compose(g, self)
    }
}

/// Operator norm of a matrix between weighted ℓ¹ spaces.
pub fn l1_operator_norm(m: &Matrix, source_w: &[Rational], target_w: &[Rational]) -> Rational {
    (0..m.cols())
        .map(|j| {
            let col: Rational = (0..m.rows())
                .filter(|&i| !m.get(i, j).is_zero())
                .map(|i| m.get(i, j).abs() * &target_w[i])
                .sum();
            col / &source_w[j]
        })
        .max()
        .unwrap_or_else(rational::zero)
}

/// `g ∘ f`, degreewise matrix product.
pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
    if f.target.dims != g.source.dims || f.target.orientation != g.source.orientation {
        return Err(Error::Shape(format!(
            "cannot compose: target dims {:?} vs source dims {:?}",
            f.target.dims, g.source.dims
        )));
    }
    let mats = g.mats.iter().zip(&f.mats).map(|(a, b)| a.mul(b)).collect();
    Ok(ChainMap {
        source: f.source.clone(),
        target: g.target.clone(),
        mats,
    })
}

/// The dual map `f': dual(target) -> dual(source)` with matrices `F_nᵀ`.
pub fn dual_map(f: &ChainMap) -> Result<ChainMap> {
    f.ensure_valid()?;
    Ok(ChainMap {
        source: Arc::new(f.target.dual_unchecked()),
        target: Arc::new(f.source.dual_unchecked()),
        mats: f.mats.iter().map(Matrix::transpose).collect(),
    })
}
