use std::path::{Path, PathBuf};
use std::process::Command;

use chainlab::cli::bundled::bundled_files;
use chainlab::cli::{run, Outcome};
use serde_json::Value;

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).display().to_string()
}

fn chainlab(args: &[&str]) -> Outcome {
    run(std::iter::once("chainlab").chain(args.iter().copied()))
}

fn report(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", out.stdout))
}

fn failed(r: &Value) -> Vec<String> {
    r["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["pass"] == false)
        .map(|a| a["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn exit_codes_distinguish_pass_fail_and_usage() {
    assert_eq!(chainlab(&["validate", &data("corpus/complexes/circle3.json")]).code, 0);
    assert_eq!(chainlab(&["validate", &data("corrupt.json")]).code, 1);
    assert_eq!(chainlab(&["no-such-command"]).code, 2);
    assert_eq!(chainlab(&["seminorm"]).code, 2);
    let help = chainlab(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("corpus-verify"));
}

#[test]
fn duality_check_on_the_tetrahedron() {
    let out = chainlab(&["duality-check", &data("corpus/complexes/boundary_tetra.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = report(&out);
    let top = r["results"]["gromov"].as_array().unwrap().iter().find(|g| g["degree"] == 2).unwrap().clone();
    assert_eq!(top["primal"], "4");
    assert_eq!(top["dual_sup"], "4");
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn z2_l1_homology_vanishes_above_degree_zero() {
    let out = chainlab(&["group", "l1h", &data("corpus/groups/z2.json"), "--top", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let dims: Vec<u64> = report(&out)["results"]["l1_homology"]
        .as_array()
        .unwrap()
        .iter()
        .take(3)
        .map(|d| d["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 0, 0]);
}

#[test]
fn corrupt_complex_names_the_offending_entry() {
    let out = chainlab(&["validate", &data("corrupt.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("square-zero"));
    let r = report(&out);
    assert_eq!(failed(&r), vec!["square-zero"]);
    let witness = &r["assertions"].as_array().unwrap().iter().find(|a| a["pass"] == false).unwrap()["witness"][0];
    assert_eq!(witness["degree"], 2);
    assert!(witness["entry"].is_array());
}

#[test]
fn unreadable_files_give_named_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dims\": [1, ").unwrap();
    let out = chainlab(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("bad.json"), "{}", out.stderr);
    let missing = chainlab(&["homology", "/nonexistent/complex.json"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("/nonexistent/complex.json"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["--seed", "42", "corpus-verify", "--random", "3"];
    let a = chainlab(&args);
    let b = chainlab(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let c = chainlab(&["--seed", "43", "corpus-verify", "--random", "3"]);
    assert_ne!(a.stdout, c.stdout);
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let p = entry.unwrap().path();
        let dest = to.join(p.file_name().unwrap());
        if p.is_dir() {
            copy_dir(&p, &dest);
        } else {
            std::fs::copy(&p, &dest).unwrap();
        }
    }
}

#[test]
fn corrupting_one_corpus_file_fails_exactly_one_assertion() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    copy_dir(Path::new(&data("corpus")), &corpus);
    let clean = chainlab(&["corpus-verify", "--corpus", corpus.to_str().unwrap(), "--random", "0"]);
    assert_eq!(clean.code, 0, "{}", clean.stderr);

    let target = corpus.join("complexes").join("boundary_tetra.json");
    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    c["boundaries"][0][0][0] = Value::String("5".into());
    std::fs::write(&target, serde_json::to_string_pretty(&c).unwrap()).unwrap();
    let out = chainlab(&["corpus-verify", "--corpus", corpus.to_str().unwrap(), "--random", "0"]);
    assert_eq!(out.code, 1);
    assert_eq!(failed(&report(&out)), vec!["complexes/boundary_tetra.json"]);
}

#[test]
fn bundled_files_match_the_data_directory() {
    for (rel, contents) in bundled_files().unwrap() {
        let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(&rel);
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, contents, "{} is stale; rerun the build_corpus example", rel.display());
    }
}

#[test]
fn approx_adds_marked_decimals_next_to_exact_values() {
    let tetra = data("corpus/complexes/boundary_tetra.json");
    let plain = report(&chainlab(&["seminorm", &tetra, "--degree", "2"]));
    assert_eq!(plain["results"]["classes"][0]["value"], "4");
    let approx = report(&chainlab(&["--approx", "seminorm", &tetra, "--degree", "2"]));
    let v = &approx["results"]["classes"][0]["value"];
    assert_eq!(v["exact"], "4");
    assert_eq!(v["approx_non_authoritative"], 4.0);
}

#[test]
fn text_format_lists_every_assertion() {
    let out = chainlab(&["--format", "text", "simplicial", "sv-bound", &data("corpus/simplicial/boundary_tetra.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("command: "));
    assert!(serde_json::from_str::<Value>(&out.stdout).is_err());
}

#[test]
fn homology_of_a_single_degree() {
    let torus = data("corpus/complexes/torus7.json");
    let r = report(&chainlab(&["homology", &torus, "--degree", "1"]));
    let degrees = r["results"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 1);
    assert_eq!(degrees[0]["dimension"], 2);
    assert_eq!(chainlab(&["homology", &torus, "--degree", "7"]).code, 1);
}

#[test]
fn every_subcommand_runs_on_bundled_inputs() {
    let runs: Vec<Vec<String>> = vec![
        vec!["homology".into(), data("corpus/complexes/torus7.json")],
        vec!["seminorm".into(), data("corpus/complexes/boundary_tetra.json"), "--class".into(), data("cycles/boundary_tetra_fundamental.json")],
        vec!["dual".into(), data("corpus/complexes/weighted_circle4.json")],
        vec!["cone".into(), data("corpus/maps/scalar2_circle3.json")],
        vec!["translate-check".into(), data("corpus/maps/identity_tetra.json"), "--exhaustive".into()],
        vec!["group".into(), "bch".into(), data("corpus/groups/z3.json"), "--top".into(), "2".into()],
        vec!["group".into(), "eta".into(), data("corpus/covers/antipodal_icosahedron.json")],
        vec!["simplicial".into(), "fundamental".into(), data("corpus/simplicial/torus7.json")],
        vec!["simplicial".into(), "prism".into(), data("corpus/simplicial/circle3.json")],
        vec!["simplicial".into(), "series".into(), "--instance".into(), "perturbed".into(), "--steps".into(), "6".into()],
    ];
    for args in runs {
        let out = chainlab(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_eq!(report(&out)["passed"], true);
    }
    let rp2 = chainlab(&["simplicial", "fundamental", &data("corpus/simplicial/rp2.json")]);
    assert_eq!(rp2.code, 1);
}

#[test]
fn size_cap_override_refuses_large_bar_complexes() {
    let bin = env!("CARGO_BIN_EXE_chainlab");
    let s3 = data("corpus/groups/s3.json");
    let out = Command::new(bin).args(["group", "l1h", &s3, "--top", "2"]).env("CHAINLAB_SIZE_CAP", "100").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("216"), "{stderr}");
    let ok = Command::new(bin).args(["group", "l1h", &s3, "--top", "2"]).env("CHAINLAB_SIZE_CAP", "1000").output().unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
}
