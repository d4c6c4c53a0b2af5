//! JSON file formats. Rationals are written as strings (`"3/4"`); integers
//! are also accepted as plain JSON numbers on input.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::complex::{ChainMap, NormKind, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, MonomialModule};
use crate::matrix::Matrix;
use crate::rational::{self, Rational};
use crate::simplicial::{SimplicialAction, SimplicialComplex};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(n) => Ok(rational::int(*n)),
            Scalar::Text(s) => rational::parse(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Scalar::Text(rational::format(q))
    }
}

fn to_vec(v: &[Scalar], what: &str) -> Result<Vec<Rational>> {
    v.iter()
        .enumerate()
        .map(|(i, s)| s.to_rational().map_err(|e| Error::Parse(format!("{what}[{i}]: {e}"))))
        .collect()
}

fn to_matrix(rows: &[Vec<Scalar>], shape: (usize, usize), what: &str) -> Result<Matrix> {
    if rows.len() != shape.0 {
        return Err(Error::Shape(format!("{what} has {} rows, expected {}", rows.len(), shape.0)));
    }
    let mut out = Vec::with_capacity(shape.0);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != shape.1 {
            return Err(Error::Shape(format!("{what} row {i} has {} entries, expected {}", r.len(), shape.1)));
        }
        out.push(to_vec(r, &format!("{what}[{i}]"))?);
    }
    Ok(Matrix::from_rows(out, shape.1))
}

fn from_matrix(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.to_rows().iter().map(|r| r.iter().map(Scalar::from_rational).collect()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NormFile {
    pub kind: String,
    pub weights: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub orientation: String,
    pub top_degree: usize,
    pub dims: Vec<usize>,
    /// Row-major matrices in storage order: `∂_{k+1}` (chain) or `δ^k`
    /// (cochain) at index `k`.
    pub boundaries: Vec<Vec<Vec<Scalar>>>,
    pub norms: Vec<NormFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
}

impl ComplexFile {
    pub fn from_complex(c: &NormedComplex) -> Self {
        ComplexFile {
            orientation: match c.orientation {
                Orientation::Homological => "homological",
                Orientation::Cohomological => "cohomological",
            }
            .into(),
            top_degree: c.top_degree(),
            dims: c.dims.clone(),
            boundaries: c.maps.iter().map(from_matrix).collect(),
            norms: c
                .norms
                .iter()
                .map(|s| NormFile {
                    kind: match s.kind {
                        NormKind::WeightedL1 => "l1",
                        NormKind::WeightedLinf => "linf",
                    }
                    .into(),
                    weights: s.weights.iter().map(Scalar::from_rational).collect(),
                })
                .collect(),
            labels: c.labels.clone(),
        }
    }

    /// Parses shapes and scalars without checking `∂² = 0` or weights, so
    /// that validation can report every violation.
    pub fn to_complex_unchecked(&self) -> Result<NormedComplex> {
        let orientation = match self.orientation.as_str() {
            "homological" | "chain" => Orientation::Homological,
            "cohomological" | "cochain" => Orientation::Cohomological,
            o => return Err(Error::Parse(format!("unknown orientation {o:?}"))),
        };
        if self.dims.len() != self.top_degree + 1 {
            return Err(Error::Shape(format!("{} dims for top degree {}", self.dims.len(), self.top_degree)));
        }
        if self.boundaries.len() != self.top_degree || self.norms.len() != self.dims.len() {
            return Err(Error::Shape(format!(
                "{} boundaries and {} norms for top degree {}",
                self.boundaries.len(),
                self.norms.len(),
                self.top_degree
            )));
        }
        let maps = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                let shape = match orientation {
                    Orientation::Homological => (self.dims[k], self.dims[k + 1]),
                    Orientation::Cohomological => (self.dims[k + 1], self.dims[k]),
                };
                to_matrix(rows, shape, &format!("boundaries[{k}]"))
            })
            .collect::<Result<_>>()?;
        let norms = self
            .norms
            .iter()
            .enumerate()
            .map(|(n, f)| {
                let kind = match f.kind.as_str() {
                    "l1" => NormKind::WeightedL1,
                    "linf" => NormKind::WeightedLinf,
                    k => return Err(Error::Parse(format!("norms[{n}]: unknown kind {k:?}"))),
                };
                Ok(NormSpec { kind, weights: to_vec(&f.weights, &format!("norms[{n}].weights"))? })
            })
            .collect::<Result<_>>()?;
        let mut c = NormedComplex::new(orientation, self.dims.clone(), maps, norms);
        if let Some(l) = &self.labels {
            c = c.with_labels(l.clone());
        }
        Ok(c)
    }

    pub fn to_complex(&self) -> Result<NormedComplex> {
        let c = self.to_complex_unchecked()?;
        c.ensure_valid()?;
        Ok(c)
    }
}

/// A complex given inline or as a path relative to the referring file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ComplexRef {
    Path(String),
    Inline(Box<ComplexFile>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: ComplexRef,
    pub target: ComplexRef,
    /// `mats[n]`: `dim target_n × dim source_n`, row-major.
    pub mats: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile { order: g.order(), table: g.table().to_vec(), names: None }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::InvalidGroup(format!("order {} but {} table rows", self.order, self.table.len())));
        }
        let g = FiniteGroup::from_table(self.table.clone())?;
        match &self.names {
            Some(n) => g.with_names(n.clone()),
            None => Ok(g),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    /// The acting group, when the file is self-contained.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFile>,
    pub dim: usize,
    pub weights: Vec<Scalar>,
    /// Per group element, `[source, target, coefficient]` triples meaning
    /// `g·e_source = coefficient·e_target`; `null` or missing entries act
    /// trivially.
    #[serde(default)]
    pub action: Vec<Option<Vec<(usize, usize, Scalar)>>>,
}

impl ModuleFile {
    pub fn to_module(&self, group: &FiniteGroup) -> Result<MonomialModule> {
        let weights = to_vec(&self.weights, "weights")?;
        if weights.len() != self.dim {
            return Err(Error::InvalidModule(format!("dim {} but {} weights", self.dim, weights.len())));
        }
        let triples = self
            .action
            .iter()
            .map(|e| {
                e.as_ref()
                    .map(|l| l.iter().map(|(s, t, c)| Ok((*s, *t, c.to_rational()?))).collect::<Result<Vec<_>>>())
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialModule::from_triples(group, weights, &triples)
    }

    pub fn from_module(group: Option<&FiniteGroup>, m: &MonomialModule) -> Self {
        let action = (0..m.action.order())
            .map(|g| {
                let imgs = m.action.images(g);
                let trivial = imgs.iter().enumerate().all(|(s, (t, c))| s == *t && *c == rational::one());
                (!trivial).then(|| imgs.iter().enumerate().map(|(s, (t, c))| (s, *t, Scalar::from_rational(c))).collect())
            })
            .collect();
        ModuleFile {
            group: group.map(GroupFile::from_group),
            dim: m.dim(),
            weights: m.weights.iter().map(Scalar::from_rational).collect(),
            action,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SimplicialFile {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

impl SimplicialFile {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        SimplicialFile { vertices: k.vertex_count(), simplices: k.maximal_simplices() }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_simplices(self.vertices, &self.simplices)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFile>,
    /// `action[g][v] = g·v`.
    pub action: Vec<Vec<usize>>,
}

impl CoverFile {
    pub fn to_cover(&self, group: Arc<FiniteGroup>) -> Result<(SimplicialComplex, SimplicialAction)> {
        let k = SimplicialComplex::from_simplices(self.vertices, &self.simplices)?;
        let a = SimplicialAction::new(&k, group, self.action.clone())?;
        Ok((k, a))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CycleFile {
    pub degree: usize,
    pub coefficients: Vec<Scalar>,
}

impl CycleFile {
    pub fn coefficients(&self) -> Result<Vec<Rational>> {
        to_vec(&self.coefficients, "coefficients")
    }

    pub fn new(degree: usize, v: &[Rational]) -> Self {
        CycleFile { degree, coefficients: v.iter().map(Scalar::from_rational).collect() }
    }
}

/// A file read into memory along with its SHA-256.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub path: PathBuf,
    pub value: Value,
    pub sha256: String,
}

pub fn read_json(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let value = serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(Loaded { path: path.to_path_buf(), value, sha256 })
}

pub fn parse<T: for<'de> Deserialize<'de>>(loaded: &Loaded) -> Result<T> {
    serde_json::from_value(loaded.value.clone()).map_err(|e| Error::Parse(format!("{}: {e}", loaded.path.display())))
}

fn resolve(base: &Path, r: &ComplexRef) -> Result<NormedComplex> {
    match r {
        ComplexRef::Inline(c) => c.to_complex(),
        ComplexRef::Path(p) => {
            let path = base.parent().unwrap_or(Path::new(".")).join(p);
            parse::<ComplexFile>(&read_json(&path)?)?.to_complex()
        }
    }
}

pub fn load_complex(path: &Path) -> Result<NormedComplex> {
    parse::<ComplexFile>(&read_json(path)?)?.to_complex()
}

/// Builds a chain map from a map file; complexes referenced by path are
/// resolved relative to `base`.
pub fn map_from_file(base: &Path, f: &MapFile) -> Result<ChainMap> {
    let map = map_from_file_unchecked(base, f)?;
    map.ensure_valid()?;
    Ok(map)
}

/// As [`map_from_file`], but the chain-map identity is left unchecked; the
/// two complexes are still validated.
pub fn map_from_file_unchecked(base: &Path, f: &MapFile) -> Result<ChainMap> {
    let source = Arc::new(resolve(base, &f.source)?);
    let target = Arc::new(resolve(base, &f.target)?);
    if f.mats.len() != source.dims.len() {
        return Err(Error::Shape(format!("{} map matrices for {} degrees", f.mats.len(), source.dims.len())));
    }
    let mats = f
        .mats
        .iter()
        .enumerate()
        .map(|(n, rows)| {
            let t = if n < target.dims.len() { target.dim(n) } else { 0 };
            to_matrix(rows, (t, source.dim(n)), &format!("mats[{n}]"))
        })
        .collect::<Result<_>>()?;
    Ok(ChainMap::new_unchecked(source, target, mats))
}

pub fn load_map(path: &Path) -> Result<ChainMap> {
    map_from_file(path, &parse::<MapFile>(&read_json(path)?)?)
}

pub fn map_file_inline(f: &ChainMap) -> MapFile {
    MapFile {
        source: ComplexRef::Inline(Box::new(ComplexFile::from_complex(&f.source))),
        target: ComplexRef::Inline(Box::new(ComplexFile::from_complex(&f.target))),
        mats: f.mats.iter().map(from_matrix).collect(),
    }
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    parse::<GroupFile>(&read_json(path)?)?.to_group()
}

pub fn load_simplicial(path: &Path) -> Result<SimplicialComplex> {
    parse::<SimplicialFile>(&read_json(path)?)?.to_complex()
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::tetra_boundary;

    #[test]
    fn complex_round_trip() {
        let c = tetra_boundary();
        let f = ComplexFile::from_complex(&c);
        let text = to_pretty(&f);
        let back: ComplexFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_complex().unwrap(), c);
    }

    #[test]
    fn integers_and_strings_both_parse() {
        let text = r#"{"orientation":"homological","top_degree":1,"dims":[2,1],
            "boundaries":[[[-1],["1"]]],"norms":[{"kind":"l1","weights":[1,"1/2"]},{"kind":"l1","weights":["3"]}]}"#;
        let c: ComplexFile = serde_json::from_str(text).unwrap();
        let c = c.to_complex().unwrap();
        assert_eq!(c.norm(0).weights[1], rational::rat(1, 2));
    }

    #[test]
    fn shape_errors_are_named() {
        let text = r#"{"orientation":"homological","top_degree":1,"dims":[2,1],
            "boundaries":[[[-1, 1],[1]]],"norms":[{"kind":"l1","weights":[1,1]},{"kind":"l1","weights":[1]}]}"#;
        let c: ComplexFile = serde_json::from_str(text).unwrap();
        assert!(matches!(c.to_complex(), Err(Error::Shape(m)) if m.contains("boundaries[0] row 0")));
    }

    #[test]
    fn module_round_trip() {
        let g = FiniteGroup::cyclic(2);
        let m = MonomialModule::sign(&g, &[1, -1]).unwrap();
        let f = ModuleFile::from_module(Some(&g), &m);
        assert!(f.action[0].is_none());
        let back: ModuleFile = serde_json::from_str(&to_pretty(&f)).unwrap();
        let g2 = back.group.as_ref().unwrap().to_group().unwrap();
        assert_eq!(back.to_module(&g2).unwrap(), m);
    }
}
