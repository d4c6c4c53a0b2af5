use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use super::commands::{self as cmd, Ctx};
use super::report::Report;
use crate::cone::ExhaustiveLimits;
use crate::error::{Error, Result};
use crate::io::{ComplexFile, CoverFile, GroupFile, ModuleFile, SimplicialFile};
use crate::random;

/// Corpus subdirectories in the order they are checked.
pub const KINDS: [&str; 6] = ["complexes", "maps", "groups", "modules", "simplicial", "covers"];

/// The corpus shipped with the crate.
pub fn default_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("corpus")
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn check_file(kind: &str, r: &mut Report, cx: &Ctx, path: &Path) -> Result<()> {
    match kind {
        "complexes" => {
            let (f, _) = cmd::load::<ComplexFile>(r, path)?;
            let c = f.to_complex()?;
            cmd::check_duality(r, cx.fmt, &c)?;
            let back = c.dual()?.dual()?;
            r.check("double-dual", if back == c { Ok(json!("equal")) } else { Err(json!("dual of dual differs")) });
        }
        "maps" => {
            let f = cmd::load_map(r, path)?;
            if cmd::check_cone(r, &f)? && f.source.is_homological() {
                cmd::check_translation(r, cx.fmt, &f, &[], Some(ExhaustiveLimits::default()))?;
            }
        }
        "groups" => {
            let (f, _) = cmd::load::<GroupFile>(r, path)?;
            let g = Arc::new(f.to_group()?);
            let v = cmd::module_for(&g, None)?;
            cmd::check_l1_homology(r, cx.fmt, &g, &v, 2)?;
        }
        "modules" => {
            let (f, _) = cmd::load::<ModuleFile>(r, path)?;
            let gf = f.group.as_ref().ok_or_else(|| Error::Parse(format!("{}: module file needs an inline group", path.display())))?;
            let g = Arc::new(gf.to_group()?);
            let v = f.to_module(&g)?;
            cmd::check_module(r, &g, &v)?;
            cmd::check_l1_homology(r, cx.fmt, &g, &v, 3)?;
            cmd::check_bounded_cohomology(r, cx.fmt, &g, &v, 3)?;
        }
        "simplicial" => {
            let (f, _) = cmd::load::<SimplicialFile>(r, path)?;
            cmd::check_simplicial(r, cx.fmt, &f.to_complex()?)?;
        }
        "covers" => {
            let (f, _) = cmd::load::<CoverFile>(r, path)?;
            let gf = f.group.as_ref().ok_or_else(|| Error::Parse(format!("{}: cover file needs an inline group", path.display())))?;
            let (k, a) = f.to_cover(Arc::new(gf.to_group()?))?;
            cmd::check_eta(r, cx.fmt, cx.seed, &k, &a, None, None)?;
        }
        _ => unreachable!("unknown corpus kind {kind}"),
    }
    Ok(())
}

/// Folds a sub-report into one assertion of the aggregate report.
fn fold(r: &mut Report, name: String, sub: Report, res: Result<()>) {
    r.inputs.extend(sub.inputs.iter().cloned());
    let outcome = match res {
        Err(e) => Err(json!({"error": e.to_string()})),
        Ok(()) if sub.passed() => Ok(json!({"checks": sub.assertions.len()})),
        Ok(()) => Err(json!(sub
            .assertions
            .iter()
            .filter(|a| !a.pass)
            .map(|a| json!({"check": a.name, "witness": a.witness}))
            .collect::<Vec<Value>>())),
    };
    r.check(name, outcome);
}

/// Runs every checker over the corpus plus `random_count` seeded random
/// complexes and chain maps. Each file and each random object contributes
/// exactly one assertion.
pub fn corpus_verify(cx: &Ctx, dir: &Path, random_count: usize) -> Result<Report> {
    if !dir.is_dir() {
        return Err(Error::Io {
            path: dir.display().to_string(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "corpus directory not found"),
        });
    }
    let mut r = Report::new("corpus-verify");
    let mut counts = serde_json::Map::new();
    for kind in KINDS {
        let files = json_files(&dir.join(kind))?;
        counts.insert(kind.to_string(), json!(files.len()));
        for path in files {
            let mut sub = Report::new(kind);
            let res = check_file(kind, &mut sub, cx, &path);
            let name = format!("{kind}/{}", path.file_name().expect("file").to_string_lossy());
            fold(&mut r, name, sub, res);
        }
    }
    let mut rng = random::rng(cx.seed);
    for i in 0..random_count {
        let c = random::random_complex(&mut rng, 5, 4);
        let mut sub = Report::new("random complex");
        let res = cmd::check_duality(&mut sub, cx.fmt, &c);
        fold(&mut r, format!("random/complex-{i}"), sub, res);

        let f = random::random_chain_map(&mut rng, 4, 3);
        let mut sub = Report::new("random map");
        let res = cmd::check_cone(&mut sub, &f)
            .and_then(|valid| if valid { cmd::check_translation(&mut sub, cx.fmt, &f, &[], None) } else { Ok(()) });
        fold(&mut r, format!("random/map-{i}"), sub, res);
    }
    r.result("corpus", json!(dir.display().to_string()));
    r.result("files", json!(counts));
    r.result("seed", json!(cx.seed));
    r.result("random_objects", json!(2 * random_count));
    Ok(r)
}
