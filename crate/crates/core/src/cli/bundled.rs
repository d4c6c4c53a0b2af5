//! The bundled data files, generated from the library fixtures.
//!
//! `cargo run --example build_corpus` writes them under `data/`; a test
//! checks that the files on disk still match.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{ChainMap, NormSpec, NormedComplex, Orientation};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, MonomialModule};
use crate::io::{self, ComplexFile, CoverFile, CycleFile, GroupFile, ModuleFile, Scalar, SimplicialFile};
use crate::matrix::Matrix;
use crate::random;
use crate::rational::{int, rat};
use crate::simplicial::{doubling_circle4, fixtures, fundamental_cycle, simplicial_chain_map, SimplicialComplex};

fn entry<T: Serialize>(out: &mut Vec<(PathBuf, String)>, rel: &str, value: &T) {
    out.push((PathBuf::from(rel), io::to_pretty(value)));
}

fn chains(k: &SimplicialComplex) -> Result<NormedComplex> {
    k.chain_complex(None)
}

fn complex(out: &mut Vec<(PathBuf, String)>, name: &str, c: &NormedComplex) {
    entry(out, &format!("corpus/complexes/{name}.json"), &ComplexFile::from_complex(c));
}

fn map(out: &mut Vec<(PathBuf, String)>, name: &str, f: &ChainMap) {
    entry(out, &format!("corpus/maps/{name}.json"), &io::map_file_inline(f));
}

fn point() -> SimplicialComplex {
    SimplicialComplex::from_simplices(1, &[vec![0]]).expect("point")
}

fn interval() -> SimplicialComplex {
    SimplicialComplex::from_simplices(2, &[vec![0, 1]]).expect("interval")
}

/// Every bundled file as `(path relative to data/, contents)`.
pub fn bundled_files() -> Result<Vec<(PathBuf, String)>> {
    let mut out = Vec::new();

    let tetra = chains(&fixtures::tetra_boundary())?;
    let circle3 = chains(&fixtures::circle(3))?;
    complex(&mut out, "boundary_tetra", &tetra);
    complex(&mut out, "circle3", &circle3);
    complex(&mut out, "interval", &chains(&interval())?);
    complex(&mut out, "filled_triangle", &chains(&fixtures::filled_triangle())?);
    complex(&mut out, "torus7", &chains(&fixtures::torus7())?);
    complex(&mut out, "rp2", &chains(&fixtures::rp2())?);
    complex(&mut out, "mobius", &chains(&fixtures::mobius())?);
    let weighted = fixtures::circle(4).chain_complex(Some(vec![
        vec![int(1), int(2), int(1), int(2)],
        vec![int(1), rat(1, 2), int(3), int(1)],
    ]))?;
    complex(&mut out, "weighted_circle4", &weighted);
    let acyclic = NormedComplex::checked(
        Orientation::Homological,
        vec![1, 1],
        vec![Matrix::from_i64(&[&[2]], 1)],
        vec![NormSpec::l1(vec![int(1)]), NormSpec::l1(vec![rat(1, 3)])],
    )?;
    complex(&mut out, "acyclic_pair", &acyclic);
    let two_points =
        NormedComplex::checked(Orientation::Homological, vec![2], vec![], vec![NormSpec::l1(vec![int(1), int(3)])])?;
    complex(&mut out, "two_points", &two_points);
    complex(&mut out, "random_seed7", &random::random_complex(&mut random::rng(7), 4, 3));

    let tetra = Arc::new(tetra);
    let circle3 = Arc::new(circle3);
    map(&mut out, "identity_tetra", &ChainMap::identity(tetra));
    map(&mut out, "scalar2_circle3", &ChainMap::scalar(circle3.clone(), &int(2)));
    map(&mut out, "zero_circle3", &ChainMap::zero(circle3.clone(), circle3.clone()));
    map(&mut out, "point_into_interval", &simplicial_chain_map(&point(), &interval(), &[0])?);
    map(&mut out, "interval_onto_point", &simplicial_chain_map(&interval(), &point(), &[0, 0])?);
    map(&mut out, "circle_into_disk", &simplicial_chain_map(&fixtures::circle(3), &fixtures::filled_triangle(), &[0, 1, 2])?);
    let heavy = Arc::new(fixtures::circle(3).chain_complex(Some(vec![vec![int(1); 3], vec![int(2); 3]]))?);
    let mats = circle3.dims.iter().map(|&d| Matrix::identity(d)).collect();
    map(&mut out, "reweighted_circle3", &ChainMap::new(circle3, heavy, mats)?);
    map(&mut out, "doubling_circle4", &doubling_circle4()?.map);
    map(&mut out, "random_seed3", &random::random_chain_map(&mut random::rng(3), 4, 3));

    let z2 = FiniteGroup::cyclic(2);
    let groups: Vec<(&str, FiniteGroup, Option<Vec<i64>>)> = vec![
        ("trivial", FiniteGroup::trivial(), None),
        ("z2", z2.clone(), Some(vec![1, -1])),
        ("z3", FiniteGroup::cyclic(3), None),
        ("z4", FiniteGroup::cyclic(4), Some(vec![1, -1, 1, -1])),
        ("z2xz2", FiniteGroup::product(&z2, &z2), Some(vec![1, -1, 1, -1])),
        ("s3", FiniteGroup::symmetric3(), Some(vec![1, -1, -1, 1, 1, -1])),
    ];
    for (name, g, character) in &groups {
        entry(&mut out, &format!("corpus/groups/{name}.json"), &GroupFile::from_group(g));
        if *name == "trivial" {
            continue;
        }
        let trivial = MonomialModule::trivial_line(g);
        entry(&mut out, &format!("corpus/modules/{name}_trivial.json"), &ModuleFile::from_module(Some(g), &trivial));
        let (label, twisted) = match character {
            Some(chi) => ("sign", MonomialModule::sign(g, chi)?),
            None => ("regular", MonomialModule::regular(g)),
        };
        entry(&mut out, &format!("corpus/modules/{name}_{label}.json"), &ModuleFile::from_module(Some(g), &twisted));
    }
    // a weighted swap: e0 <-> 2·e1 with weights (2, 1)
    let swap = MonomialModule::from_triples(
        &z2,
        vec![int(2), int(1)],
        &[None, Some(vec![(0, 1, int(2)), (1, 0, rat(1, 2))])],
    )?;
    entry(&mut out, "corpus/modules/z2_weighted_swap.json", &ModuleFile::from_module(Some(&z2), &swap));

    let triangulations = [
        ("boundary_tetra", fixtures::tetra_boundary()),
        ("circle3", fixtures::circle(3)),
        ("torus7", fixtures::torus7()),
        ("subdivided_tetra", fixtures::barycentric_subdivision(&fixtures::tetra_boundary())),
        ("icosahedron", fixtures::icosahedron()),
        ("rp2", fixtures::rp2()),
        ("mobius", fixtures::mobius()),
    ];
    for (name, k) in &triangulations {
        entry(&mut out, &format!("corpus/simplicial/{name}.json"), &SimplicialFile::from_complex(k));
    }

    let ico = fixtures::icosahedron();
    let cover = CoverFile {
        vertices: ico.vertex_count(),
        simplices: ico.maximal_simplices(),
        group: Some(GroupFile::from_group(&z2)),
        action: vec![(0..ico.vertex_count()).collect(), fixtures::icosahedron_antipode()],
    };
    entry(&mut out, "corpus/covers/antipodal_icosahedron.json", &cover);

    for (name, k) in [("circle3", fixtures::circle(3)), ("boundary_tetra", fixtures::tetra_boundary())] {
        let z = fundamental_cycle(&k)?;
        entry(&mut out, &format!("cycles/{name}_fundamental.json"), &CycleFile::new(z.dimension, &z.coefficients));
    }

    let mut corrupt = ComplexFile::from_complex(&fixtures::tetra_boundary().chain_complex(None)?);
    corrupt.boundaries[1][0][0] = match &corrupt.boundaries[1][0][0] {
        Scalar::Text(s) if s == "0" => Scalar::Text("1".into()),
        _ => Scalar::Text("0".into()),
    };
    entry(&mut out, "corrupt.json", &corrupt);
    Ok(out)
}

/// Writes [`bundled_files`] under `data_dir`, returning the paths written.
pub fn write_bundled_data(data_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (rel, contents) in bundled_files()? {
        let path = data_dir.join(rel);
        let io_err = |source| Error::Io { path: path.display().to_string(), source };
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(io_err)?;
        }
        std::fs::write(&path, contents).map_err(io_err)?;
        written.push(path);
    }
    Ok(written)
}
