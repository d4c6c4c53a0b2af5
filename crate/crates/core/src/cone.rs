//! Mapping cones, the identification of the dual cone with a suspended
//! cocone, and the translation checker relating a chain map to its dual.

use std::sync::Arc;

use num_traits::Zero;

use crate::complex::{dual_map, ChainMap, NormKind, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::homology::{self, coseminorm, seminorm, HomologyClass, HomologySpace};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};

/// A mapping cone together with the map it was built from.
///
/// `complex` stores degrees starting at `first_degree`: stored index `k` is
/// cone degree `k + first_degree`. Chain cones start at 0; cochain cones
/// start at −1, where the cone is `D^0 ⊕ 0`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: NormedComplex,
    pub map: ChainMap,
    pub first_degree: isize,
    /// Per stored degree, the sizes of the two summands in order
    /// (`C_{n-1}, D_n` for chain cones, `D^{n+1}, C^n` for cochain cones).
    pub blocks: Vec<(usize, usize)>,
}

impl Cone {
    /// Homology of the cone in cone degree `n`.
    pub fn homology(&self, n: isize) -> Result<HomologySpace> {
        let k = n - self.first_degree;
        if k < 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, top: self.complex.top_degree() });
        }
        homology::homology(&self.complex, k as usize)
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        Ok(homology::betti_numbers(&self.complex)?.iter().all(|&b| b == 0))
    }

    /// The suspension of a cochain cone as a complex starting in degree 0:
    /// shift by one and negate every map. The stored indexing of a cochain
    /// cone already starts one degree low, so only the sign changes.
    pub fn suspension(&self) -> Result<NormedComplex> {
        if self.first_degree != -1 {
            return Err(Error::Precondition("suspension is taken of cochain cones".into()));
        }
        Ok(self.complex.negated())
    }
}

fn dim_at(c: &NormedComplex, k: isize) -> usize {
    if k < 0 || k as usize > c.top_degree() {
        0
    } else {
        c.dim(k as usize)
    }
}

/// `∂_n` of `c`, with zero matrices of the right shape outside `1..=N`.
fn boundary_or_zero(c: &NormedComplex, n: isize) -> Matrix {
    if n >= 1 && (n as usize) <= c.top_degree() {
        c.maps[n as usize - 1].clone()
    } else {
        Matrix::zeros(dim_at(c, n - 1), dim_at(c, n))
    }
}

/// `δ^n` of `c`, zero outside `0..N`.
fn coboundary_or_zero(c: &NormedComplex, n: isize) -> Matrix {
    if n >= 0 && (n as usize) < c.top_degree() {
        c.maps[n as usize].clone()
    } else {
        Matrix::zeros(dim_at(c, n + 1), dim_at(c, n))
    }
}

fn map_or_zero(f: &ChainMap, n: isize) -> Matrix {
    if n >= 0 && (n as usize) < f.mats.len() {
        f.mats[n as usize].clone()
    } else {
        Matrix::zeros(dim_at(&f.target, n), dim_at(&f.source, n))
    }
}

fn weights_or_empty(c: &NormedComplex, n: isize) -> Vec<Rational> {
    if n < 0 || n as usize > c.top_degree() {
        Vec::new()
    } else {
        c.norm(n as usize).weights.clone()
    }
}

fn require_kind(c: &NormedComplex, kind: NormKind, what: &str) -> Result<()> {
    if let Some(n) = c.norms.iter().position(|s| s.kind != kind) {
        return Err(Error::NormKind(format!(
            "{what} needs {kind:?} norms; degree {n} has {:?}",
            c.norms[n].kind
        )));
    }
    Ok(())
}

/// Cone of a chain map `f: C -> D`: `cone_n = C_{n-1} ⊕ D_n` with boundary
/// `[[-∂^C, 0], [f, ∂^D]]` and the ℓ¹ direct-sum norm.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    f.ensure_valid()?;
    if f.source.orientation != Orientation::Homological {
        return Err(Error::InvalidMap("cone needs a map of chain complexes; use cocone".into()));
    }
    let (c, d) = (&*f.source, &*f.target);
    require_kind(c, NormKind::WeightedL1, "cone")?;
    require_kind(d, NormKind::WeightedL1, "cone")?;
    let top = c.top_degree() as isize + 1;
    let mut dims = Vec::new();
    let mut blocks = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=top {
        let (a, b) = (dim_at(c, n - 1), dim_at(d, n));
        dims.push(a + b);
        blocks.push((a, b));
        let mut w = weights_or_empty(c, n - 1);
        w.extend(weights_or_empty(d, n));
        norms.push(NormSpec::l1(w));
    }
    let maps = (1..=top)
        .map(|n| {
            Matrix::block(
                &boundary_or_zero(c, n - 1).neg(),
                &Matrix::zeros(dim_at(c, n - 2), dim_at(d, n)),
                &map_or_zero(f, n - 1),
                &boundary_or_zero(d, n),
            )
        })
        .collect();
    let complex = NormedComplex::new(Orientation::Homological, dims, maps, norms);
    complex.ensure_valid()?;
    Ok(Cone { complex, map: f.clone(), first_degree: 0, blocks })
}

/// Cone of a cochain map `f: D -> C`: `cone^n = D^{n+1} ⊕ C^n` with
/// coboundary `[[-δ_D, 0], [f, δ_C]]` and the maximum norm.
pub fn cocone(f: &ChainMap) -> Result<Cone> {
    f.ensure_valid()?;
    if f.source.orientation != Orientation::Cohomological {
        return Err(Error::InvalidMap("cocone needs a map of cochain complexes".into()));
    }
    let (d, c) = (&*f.source, &*f.target);
    require_kind(d, NormKind::WeightedLinf, "cocone")?;
    require_kind(c, NormKind::WeightedLinf, "cocone")?;
    let top = c.top_degree() as isize;
    let mut dims = Vec::new();
    let mut blocks = Vec::new();
    let mut norms = Vec::new();
    for n in -1..=top {
        let (a, b) = (dim_at(d, n + 1), dim_at(c, n));
        dims.push(a + b);
        blocks.push((a, b));
        let mut w = weights_or_empty(d, n + 1);
        w.extend(weights_or_empty(c, n));
        norms.push(NormSpec::linf(w));
    }
    let maps = (-1..top)
        .map(|n| {
            Matrix::block(
                &coboundary_or_zero(d, n + 1).neg(),
                &Matrix::zeros(dim_at(d, n + 2), dim_at(c, n)),
                &map_or_zero(f, n + 1),
                &coboundary_or_zero(c, n),
            )
        })
        .collect();
    let complex = NormedComplex::new(Orientation::Cohomological, dims, maps, norms);
    complex.ensure_valid()?;
    Ok(Cone { complex, map: f.clone(), first_degree: -1, blocks })
}

/// The explicit identification `dual(cone f) ≅ Σ cocone(-f')`.
///
/// In degree `n` the left side is `C'^{n-1} ⊕ D'^n` and the right side is
/// `D'^n ⊕ C'^{n-1}`. With these block orders the identification is the
/// plain block swap `(γ, ψ) ↦ (ψ, γ)`; no signs are needed. The returned
/// chain map is validated (it commutes with the coboundaries) and the flag
/// reports whether it also carries one norm exactly onto the other.
pub fn cone_dual_iso(f: &ChainMap) -> Result<(ChainMap, bool)> {
    let cone_f = cone(f)?;
    let left = cone_f.complex.dual()?;
    let minus_dual = dual_map(f)?.negate();
    let right = cocone(&minus_dual)?.suspension()?;
    if left.dims != right.dims {
        return Err(Error::Shape(format!("dims differ: {:?} vs {:?}", left.dims, right.dims)));
    }
    let mut mats = Vec::new();
    let mut isometric = true;
    for (n, &(a, b)) in cone_f.blocks.iter().enumerate() {
        let mut swap = Matrix::zeros(a + b, a + b);
        for i in 0..a {
            swap.set(b + i, i, rational::one());
        }
        for j in 0..b {
            swap.set(j, a + j, rational::one());
        }
        let moved = swap.mul_vec(&left.norm(n).weights);
        isometric &= left.norm(n).kind == right.norm(n).kind && moved == right.norm(n).weights;
        mats.push(swap);
    }
    let iso = ChainMap::new(Arc::new(left), Arc::new(right), mats)?;
    Ok((iso, isometric))
}

/// Both ways of deciding whether a map induces an isomorphism in every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    /// From the matrices of the induced maps.
    pub direct: bool,
    /// From the vanishing of the cone's (co)homology.
    pub via_cone: bool,
}

impl IsoCheck {
    pub fn agree(&self) -> bool {
        self.direct == self.via_cone
    }
}

/// Whether `f` is bijective on (co)homology in every degree, computed
/// directly and via the cone (the cocone for cochain maps).
pub fn iso_check(f: &ChainMap) -> Result<IsoCheck> {
    f.ensure_valid()?;
    let mut direct = true;
    for n in 0..=f.top_degree() {
        let m = homology::induced_on_homology(f, n)?;
        if m.rows() != m.cols() || m.inverse().is_none() {
            direct = false;
            break;
        }
    }
    let c = match f.source.orientation {
        Orientation::Homological => cone(f)?,
        Orientation::Cohomological => cocone(f)?,
    };
    Ok(IsoCheck { direct, via_cone: c.is_acyclic()? })
}

/// The agreed answer of [`iso_check`]; an error if the two methods disagree.
pub fn iso_via_cone(f: &ChainMap) -> Result<bool> {
    let check = iso_check(f)?;
    if !check.agree() {
        return Err(Error::Certificate(format!(
            "induced maps bijective = {} but cone acyclic = {}",
            check.direct, check.via_cone
        )));
    }
    Ok(check.direct)
}

/// Checks `dim H_n(cone f) = dim coker H_n(f) + dim ker H_{n-1}(f)` in every
/// degree of a chain-map cone. Returns the first failing degree, if any.
pub fn long_exact_rank_check(f: &ChainMap) -> Result<Option<usize>> {
    let c = cone(f)?;
    let top = f.top_degree();
    let induced: Vec<Matrix> =
        (0..=top).map(|n| homology::induced_on_homology(f, n)).collect::<Result<_>>()?;
    let betti = homology::betti_numbers(&c.complex)?;
    for (n, &b) in betti.iter().enumerate() {
        let coker = if n <= top { induced[n].rows() - induced[n].rank() } else { 0 };
        let ker = if n >= 1 { induced[n - 1].cols() - induced[n - 1].rank() } else { 0 };
        if b != coker + ker {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// One semi-norm comparison `‖x‖` against `‖T x‖`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub degree: usize,
    pub label: String,
    pub before: Rational,
    pub after: Rational,
}

impl ProbeResult {
    pub fn preserved(&self) -> bool {
        self.before == self.after
    }
}

/// Size limits for the full unit-ball comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveLimits {
    pub max_homology_dim: usize,
    /// Largest chain-space dimension whose ball vertices are enumerated.
    pub max_space_dim: usize,
}

impl Default for ExhaustiveLimits {
    fn default() -> Self {
        Self { max_homology_dim: 3, max_space_dim: 12 }
    }
}

/// Outcome of the full unit-ball comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveResult {
    pub hypothesis_isometric: bool,
    /// `None` when the hypothesis fails.
    pub conclusion_isometric: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub homology_iso: IsoCheck,
    pub cohomology_iso: IsoCheck,
    /// Homology iso holds exactly when cohomology iso holds.
    pub part1_holds: bool,
    pub hypothesis_probes: Vec<ProbeResult>,
    /// The dual map is a cohomology isomorphism preserving co-semi-norms on
    /// every probe.
    pub hypothesis_isometric: bool,
    pub conclusion_probes: Vec<ProbeResult>,
    /// `None` when the hypothesis fails and nothing is claimed.
    pub part2_verified: Option<bool>,
    pub probe_scope: String,
    /// Present when requested and every degree is within the limits.
    pub exhaustive: Option<ExhaustiveResult>,
}

/// Compares a chain map with its dual: isomorphism on homology against
/// isomorphism on cohomology, and isometry of the dual against isometry of
/// the map.
///
/// Hypothesis probes are the basis classes of `H^n(D')` and their pairwise
/// sums and differences. Conclusion probes are the same for `H_n(C)` plus
/// `extra_probes`.
pub fn translation_check(
    f: &ChainMap,
    extra_probes: &[HomologyClass],
    exhaustive: Option<ExhaustiveLimits>,
) -> Result<TranslationReport> {
    if f.source.orientation != Orientation::Homological {
        return Err(Error::InvalidMap("translation check starts from a chain map".into()));
    }
    let homology_iso = iso_check(f)?;
    let fd = dual_map(f)?;
    let cohomology_iso = iso_check(&fd)?;
    if !homology_iso.agree() || !cohomology_iso.agree() {
        return Err(Error::Certificate("cone criterion disagrees with induced ranks".into()));
    }
    let part1_holds = homology_iso.direct == cohomology_iso.direct;

    let top = f.top_degree();
    let mut hypothesis_probes = Vec::new();
    for n in 0..=top {
        let h = homology::homology(&fd.source, n)?;
        for (label, psi) in probe_set(&h) {
            let before = coseminorm(&fd.source, &psi)?.value;
            let image = HomologyClass { degree: n, representative: fd.apply(n, &psi.representative) };
            let after = coseminorm(&fd.target, &image)?.value;
            hypothesis_probes.push(ProbeResult { degree: n, label, before, after });
        }
    }
    let hypothesis_isometric =
        cohomology_iso.direct && hypothesis_probes.iter().all(ProbeResult::preserved);

    let mut conclusion_probes = Vec::new();
    if hypothesis_isometric {
        for n in 0..=top {
            let h = homology::homology(&f.source, n)?;
            let mut probes = probe_set(&h);
            for (i, p) in extra_probes.iter().filter(|p| p.degree == n).enumerate() {
                p.check_cycle(&f.source)?;
                probes.push((format!("supplied{i}"), p.clone()));
            }
            for (label, alpha) in probes {
                let before = seminorm(&f.source, &alpha)?.value;
                let image = HomologyClass { degree: n, representative: f.apply(n, &alpha.representative) };
                let after = seminorm(&f.target, &image)?.value;
                conclusion_probes.push(ProbeResult { degree: n, label, before, after });
            }
        }
    }
    let part2_verified =
        hypothesis_isometric.then(|| conclusion_probes.iter().all(ProbeResult::preserved));
    let probe_scope = format!(
        "{} co-semi-norm probes on the dual target, {} semi-norm probes on the source \
         (basis classes, pairwise sums and differences, supplied classes); \
         isometry is certified on these classes only",
        hypothesis_probes.len(),
        conclusion_probes.len()
    );

    let exhaustive = match exhaustive {
        None => None,
        Some(limits) => exhaustive_isometry(f, &fd, cohomology_iso.direct, limits)?,
    };

    Ok(TranslationReport {
        homology_iso,
        cohomology_iso,
        part1_holds,
        hypothesis_probes,
        hypothesis_isometric,
        conclusion_probes,
        part2_verified,
        probe_scope,
        exhaustive,
    })
}

fn probe_set(h: &HomologySpace) -> Vec<(String, HomologyClass)> {
    let basis = h.basis_classes();
    let mut out: Vec<(String, HomologyClass)> =
        basis.iter().enumerate().map(|(i, b)| (format!("h{i}"), b.clone())).collect();
    let minus = -rational::one();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push((format!("h{i}+h{j}"), basis[i].plus(&basis[j])));
            out.push((format!("h{i}-h{j}"), basis[i].plus(&basis[j].scaled(&minus))));
        }
    }
    out
}

fn exhaustive_isometry(
    f: &ChainMap,
    fd: &ChainMap,
    cohomology_iso: bool,
    limits: ExhaustiveLimits,
) -> Result<Option<ExhaustiveResult>> {
    let failed = ExhaustiveResult { hypothesis_isometric: false, conclusion_isometric: None };
    if !cohomology_iso {
        return Ok(Some(failed));
    }
    match isometric_on_balls(fd, limits)? {
        None => Ok(None),
        Some(false) => Ok(Some(failed)),
        Some(true) => Ok(isometric_on_balls(f, limits)?.map(|c| ExhaustiveResult {
            hypothesis_isometric: true,
            conclusion_isometric: Some(c),
        })),
    }
}

/// Whether the induced map is an isometry on the whole unit ball:
/// `‖T v‖ <= 1` on every ball vertex `v` of the source and `‖T⁻¹ w‖ <= 1` on
/// every vertex `w` of the target. `None` when a degree exceeds the limits.
pub fn isometric_on_balls(f: &ChainMap, limits: ExhaustiveLimits) -> Result<Option<bool>> {
    let one = rational::one();
    for n in 0..=f.top_degree() {
        let hs = homology::homology(&f.source, n)?;
        let ht = homology::homology(&f.target, n)?;
        if hs.dimension > limits.max_homology_dim
            || ht.dimension > limits.max_homology_dim
            || f.source.dim(n) > limits.max_space_dim
            || f.target.dim(n) > limits.max_space_dim
        {
            return Ok(None);
        }
        let m = homology::induced_between(f, n, &hs, &ht);
        let Some(inv) = (if m.rows() == m.cols() { m.inverse() } else { None }) else {
            return Ok(Some(false));
        };
        for v in unit_ball_vertices(&f.source, n)? {
            if class_norm(&f.target, n, f.apply(n, &v))? > one {
                return Ok(Some(false));
            }
        }
        for w in unit_ball_vertices(&f.target, n)? {
            let back = hs.representative(&inv.mul_vec(&ht.coordinates(&w)));
            if class_norm(&f.source, n, back)? > one {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}

fn class_norm(c: &NormedComplex, n: usize, v: Vec<Rational>) -> Result<Rational> {
    let class = HomologyClass { degree: n, representative: v };
    Ok(match c.orientation {
        Orientation::Homological => seminorm(c, &class)?.value,
        Orientation::Cohomological => coseminorm(c, &class)?.value,
    })
}

/// Every vertex of `Z_n ∩ {‖x‖ <= 1}`. Their classes include every vertex of
/// the unit ball of the induced semi-norm.
///
/// For ℓ¹ these are the normalized circuits (minimal-support cycles, at most
/// `rank ∂_n + 1` entries); for
/// ℓ∞ they are the cycles with `dim Z_n` independent coordinates pinned to
/// `±1/u_i`.
pub fn unit_ball_vertices(c: &NormedComplex, n: usize) -> Result<Vec<Vec<Rational>>> {
    c.check_degree(n)?;
    let out = c.outgoing(n);
    let d = c.dim(n);
    let spec = c.norm(n);
    let kernel = out.kernel();
    let k = kernel.cols();
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    if k == 0 {
        return Ok(vertices);
    }
    let one = rational::one();
    match spec.kind {
        NormKind::WeightedL1 => {
            for support in subsets(d, out.rank() + 1) {
                let ker = out.select_columns(&support).kernel();
                if ker.cols() != 1 {
                    continue;
                }
                let v = ker.column(0);
                if v.iter().any(Zero::is_zero) {
                    continue;
                }
                let mut full = vec![Rational::zero(); d];
                for (pos, &i) in support.iter().enumerate() {
                    full[i] = v[pos].clone();
                }
                let s = spec.norm(&full);
                for sign in [one.clone(), -one.clone()] {
                    let p: Vec<Rational> = full.iter().map(|x| x * &sign / &s).collect();
                    if !vertices.contains(&p) {
                        vertices.push(p);
                    }
                }
            }
        }
        NormKind::WeightedLinf => {
            for support in subsets(d, k).into_iter().filter(|s| s.len() == k) {
                let Some(inv) = kernel.select_rows(&support).inverse() else { continue };
                for mask in 0..(1u64 << k) {
                    let pinned: Vec<Rational> = support
                        .iter()
                        .enumerate()
                        .map(|(pos, &i)| {
                            let s = if mask & (1 << pos) != 0 { -one.clone() } else { one.clone() };
                            s / &spec.weights[i]
                        })
                        .collect();
                    let p = kernel.mul_vec(&inv.mul_vec(&pinned));
                    if spec.norm(&p) <= one && !vertices.contains(&p) {
                        vertices.push(p);
                    }
                }
            }
        }
    }
    Ok(vertices)
}

/// Nonempty subsets of `0..n` with at most `max` elements.
fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, max, &mut Vec::new(), &mut out);
    out
}
