use std::path::Path;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use super::report::{exact, Fmt, Report};
use crate::complex::{l1_operator_norm, ChainMap, NormedComplex, Orientation, ValidationReport, ViolationKind};
use crate::cone::{self, ExhaustiveLimits, ProbeResult};
use crate::error::{Error, Result};
use crate::group::{
    bar_complex, bounded_cohomology_of_group, dual_identification, l1_homology_of_group, module_complex,
    tensor_coefficients, FiniteGroup, GroupHomology, MonomialModule,
};
use crate::homology::{self, gromov_duality, HomologyClass, SeminormResult};
use crate::io::{self, ComplexFile, CoverFile, CycleFile, GroupFile, Loaded, MapFile, ModuleFile, SimplicialFile};
use crate::random;
use crate::rational::{self, Rational};
use crate::simplicial::{
    eta_map, fundamental_cycle, is_orientation_obstruction, orient, prism, relabel_by_orbit, sv_upper_bound,
    SeriesInstance, SimplicialAction, SimplicialComplex,
};

type Outcome = std::result::Result<Value, Value>;

/// Options shared by every command.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ctx {
    pub fmt: Fmt,
    pub seed: u64,
}

pub(super) fn load<T: DeserializeOwned>(r: &mut Report, path: &Path) -> Result<(T, Loaded)> {
    let loaded = io::read_json(path)?;
    r.input(&loaded);
    Ok((io::parse(&loaded)?, loaded))
}

fn outcome(ok: bool, pass: Value, fail: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail())
    }
}

fn violations(v: &ValidationReport, kinds: &[ViolationKind]) -> Outcome {
    let hits: Vec<Value> = v
        .violations
        .iter()
        .filter(|x| kinds.contains(&x.kind))
        .map(|x| json!({"kind": format!("{:?}", x.kind), "degree": x.degree, "entry": x.entry, "message": x.message}))
        .collect();
    outcome(hits.is_empty(), json!("no violations"), || json!(hits))
}

fn whole(v: &ValidationReport) -> Outcome {
    violations(
        v,
        &[
            ViolationKind::Shape,
            ViolationKind::NormLength,
            ViolationKind::NonPositiveWeight,
            ViolationKind::SquareNonZero,
            ViolationKind::LabelCount,
            ViolationKind::NotChainMap,
        ],
    )
}

fn err_value(e: &Error) -> Value {
    json!({"error": e.to_string()})
}

fn class_label(c: &NormedComplex, alpha: &HomologyClass) -> Value {
    let labels = c.labels.as_ref().and_then(|l| l.get(alpha.degree));
    let terms: Vec<Value> = alpha
        .representative
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let basis = labels.and_then(|l| l.get(i)).cloned().unwrap_or_else(|| format!("e{i}"));
            json!([rational::format(x), basis])
        })
        .collect();
    json!({"degree": alpha.degree, "terms": terms})
}

/// Independent check of an LP semi-norm answer: the certificate vanishes on
/// everything arriving in the degree, has dual norm at most one and pairs to
/// the value with the class; the witness has that norm and differs from the
/// representative by something arriving in the degree.
pub fn verify_seminorm(c: &NormedComplex, alpha: &HomologyClass, s: &SeminormResult) -> Outcome {
    let n = alpha.degree;
    let incoming = c.incoming(n);
    let y = &s.certificate;
    if y.len() != c.dim(n) || s.witness.len() != c.dim(n) {
        return Err(json!({"reason": "certificate or witness has the wrong length"}));
    }
    let on_image = incoming.vec_mul(y);
    if let Some(j) = on_image.iter().position(|x| !x.is_zero()) {
        return Err(json!({"reason": "certificate is not closed", "column": j, "value": rational::format(&on_image[j])}));
    }
    let dual_norm = c.norm(n).dual().norm(y);
    if dual_norm > Rational::one() {
        return Err(json!({"reason": "certificate dual norm exceeds 1", "dual_norm": rational::format(&dual_norm)}));
    }
    let pairing = rational::dot(y, &alpha.representative);
    if pairing != s.value {
        return Err(json!({"reason": "pairing differs from value", "pairing": rational::format(&pairing), "value": rational::format(&s.value)}));
    }
    let witness_norm = c.norm(n).norm(&s.witness);
    if witness_norm != s.value {
        return Err(json!({"reason": "witness norm differs from value", "witness_norm": rational::format(&witness_norm)}));
    }
    let diff: Vec<Rational> = s.witness.iter().zip(&alpha.representative).map(|(a, b)| a - b).collect();
    if diff.iter().any(|x| !x.is_zero()) && incoming.solve(&diff).is_none() {
        return Err(json!({"reason": "witness is not homologous to the class", "difference": exact(&diff)}));
    }
    Ok(json!({"value": rational::format(&s.value), "certificate_dual_norm": rational::format(&dual_norm)}))
}

// ---------------------------------------------------------------- validate

pub fn validate(_cx: &Ctx, path: &Path) -> Result<Report> {
    let mut r = Report::new("validate");
    let loaded = io::read_json(path)?;
    r.input(&loaded);
    let obj = loaded
        .value
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{}: expected a JSON object", path.display())))?;
    let has = |k: &str| obj.contains_key(k);
    let kind = if has("boundaries") {
        "complex"
    } else if has("mats") {
        "map"
    } else if has("table") {
        "group"
    } else if has("weights") && has("action") {
        "module"
    } else if has("action") {
        "cover"
    } else if has("simplices") {
        "simplicial"
    } else if has("coefficients") {
        "cycle"
    } else {
        return Err(Error::Parse(format!("{}: not a complex, map, group, module, cover, simplicial or cycle file", path.display())));
    };
    r.result("kind", json!(kind));
    match kind {
        "complex" => {
            let c = io::parse::<ComplexFile>(&loaded)?.to_complex_unchecked()?;
            r.result("dims", json!(c.dims));
            r.result("orientation", json!(format!("{:?}", c.orientation).to_lowercase()));
            let v = c.validate();
            r.check("shapes", violations(&v, &[ViolationKind::Shape]));
            r.check("norm-weights", violations(&v, &[ViolationKind::NormLength, ViolationKind::NonPositiveWeight]));
            r.check("labels", violations(&v, &[ViolationKind::LabelCount]));
            r.check("square-zero", violations(&v, &[ViolationKind::SquareNonZero]));
        }
        "map" => {
            let f = io::map_from_file_unchecked(path, &io::parse::<MapFile>(&loaded)?)?;
            r.result("source_dims", json!(f.source.dims));
            r.result("target_dims", json!(f.target.dims));
            r.check("chain-map", whole(&f.validate()));
        }
        "group" => {
            let g = io::parse::<GroupFile>(&loaded)?;
            r.check("group-axioms", group_outcome(&g));
        }
        "module" => {
            let m = io::parse::<ModuleFile>(&loaded)?;
            let gf = m.group.as_ref().ok_or_else(|| Error::Parse(format!("{}: module file needs an inline group", path.display())))?;
            match gf.to_group() {
                Ok(g) => {
                    r.check("group-axioms", Ok(json!({"order": g.order()})));
                    r.check("monomial-isometric-action", m.to_module(&g).map(|v| json!({"dim": v.dim()})).map_err(|e| err_value(&e)));
                }
                Err(e) => r.check("group-axioms", Err(err_value(&e))),
            }
        }
        "cover" => {
            let f = io::parse::<CoverFile>(&loaded)?;
            let gf = f.group.as_ref().ok_or_else(|| Error::Parse(format!("{}: cover file needs an inline group", path.display())))?;
            match gf.to_group() {
                Ok(g) => {
                    r.check("group-axioms", Ok(json!({"order": g.order()})));
                    let a = f.to_cover(Arc::new(g)).map(|(_, a)| json!({"free": a.is_free(), "orbits": a.orbits().len()}));
                    r.check("simplicial-action", a.map_err(|e| err_value(&e)));
                }
                Err(e) => r.check("group-axioms", Err(err_value(&e))),
            }
        }
        "simplicial" => {
            let k = io::parse::<SimplicialFile>(&loaded)?.to_complex()?;
            r.result("f_vector", json!((0..=k.dimension()).map(|n| k.count(n)).collect::<Vec<_>>()));
            let c = k.chain_complex(None)?;
            r.check("square-zero", whole(&c.validate()));
            r.check("boundary-operator-norms", boundary_norms(&c));
        }
        _ => {
            let z = io::parse::<CycleFile>(&loaded)?;
            z.coefficients()?;
            r.result("degree", json!(z.degree));
            r.result("length", json!(z.coefficients.len()));
        }
    }
    Ok(r)
}

fn group_outcome(g: &GroupFile) -> Outcome {
    g.to_group()
        .map(|g| json!({"order": g.order(), "abelian": g.is_abelian()}))
        .map_err(|e| err_value(&e))
}

/// `‖∂_n‖ = n + 1` for simplicial boundaries with unit weights.
fn boundary_norms(c: &NormedComplex) -> Outcome {
    let mut norms = Vec::new();
    for n in 1..=c.top_degree() {
        if c.dim(n) == 0 {
            continue;
        }
        let q = l1_operator_norm(&c.maps[n - 1], &c.norm(n).weights, &c.norm(n - 1).weights);
        if q != rational::int(n as i64 + 1) {
            return Err(json!({"degree": n, "norm": rational::format(&q), "expected": n + 1}));
        }
        norms.push(json!({"degree": n, "norm": rational::format(&q)}));
    }
    Ok(json!(norms))
}

// ---------------------------------------------------------------- complexes

pub fn homology(cx: &Ctx, path: &Path, only: Option<usize>) -> Result<Report> {
    let mut r = Report::new("homology");
    let (file, _) = load::<ComplexFile>(&mut r, path)?;
    let c = file.to_complex()?;
    let range = match only {
        Some(n) if n > c.top_degree() => return Err(Error::DegreeOutOfRange { degree: n, top: c.top_degree() }),
        Some(n) => n..=n,
        None => 0..=c.top_degree(),
    };
    let mut degrees = Vec::new();
    for n in range {
        let h = homology::homology(&c, n)?;
        let reps: Vec<Value> = h.basis_classes().iter().map(|a| cx.fmt.qs(&a.representative)).collect();
        degrees.push(json!({
            "degree": n,
            "dimension": h.dimension,
            "kernel_dim": h.kernel_dim,
            "image_rank": h.image_rank,
            "basis": reps,
        }));
        let closed = h.basis_classes().iter().all(|a| a.check_cycle(&c).is_ok());
        let independent = h.boundary_basis.hstack(&h.cycle_basis).rank() == h.image_rank + h.dimension;
        let counted = h.kernel_dim == h.image_rank + h.dimension;
        r.check(
            format!("basis-classes-degree-{n}"),
            outcome(closed && independent && counted, json!({"dimension": h.dimension}), || {
                json!({"closed": closed, "independent_mod_boundaries": independent, "rank_count": counted})
            }),
        );
    }
    r.result("orientation", json!(format!("{:?}", c.orientation).to_lowercase()));
    r.result("betti", json!(homology::betti_numbers(&c)?));
    r.result("degrees", json!(degrees));
    Ok(r)
}

pub fn seminorm(cx: &Ctx, path: &Path, degree: Option<usize>, class: Option<&Path>) -> Result<Report> {
    let mut r = Report::new("seminorm");
    let (file, _) = load::<ComplexFile>(&mut r, path)?;
    let c = file.to_complex()?;
    let classes: Vec<(String, HomologyClass)> = match class {
        Some(p) => {
            let (z, _) = load::<CycleFile>(&mut r, p)?;
            vec![("supplied".to_string(), HomologyClass::new(&c, z.degree, z.coefficients()?)?)]
        }
        None => {
            let degrees: Vec<usize> = match degree {
                Some(n) => {
                    c.check_degree(n)?;
                    vec![n]
                }
                None => (0..=c.top_degree()).collect(),
            };
            let mut out = Vec::new();
            for n in degrees {
                for (k, a) in homology::homology(&c, n)?.basis_classes().into_iter().enumerate() {
                    out.push((format!("degree-{n}-class-{k}"), a));
                }
            }
            out
        }
    };
    let mut rows = Vec::new();
    for (name, a) in classes {
        let s = match c.orientation {
            Orientation::Homological => homology::seminorm(&c, &a)?,
            Orientation::Cohomological => homology::coseminorm(&c, &a)?,
        };
        rows.push(json!({
            "name": name,
            "class": class_label(&c, &a),
            "value": cx.fmt.q(&s.value),
            "witness": cx.fmt.qs(&s.witness),
            "certificate": cx.fmt.qs(&s.certificate),
        }));
        r.check(format!("certificate-{name}"), verify_seminorm(&c, &a, &s));
    }
    r.result("classes", json!(rows));
    Ok(r)
}

pub fn dual(_cx: &Ctx, path: &Path, output: Option<&Path>) -> Result<Report> {
    let mut r = Report::new("dual");
    let (file, _) = load::<ComplexFile>(&mut r, path)?;
    let c = file.to_complex()?;
    let d = c.dual()?;
    r.check("dual-is-valid", whole(&d.validate()));
    let back = d.dual()?;
    r.check(
        "double-dual-is-original",
        outcome(back == c, json!("equal"), || {
            let m = (0..c.maps.len()).find(|&k| back.maps[k] != c.maps[k]);
            json!({"first_differing_map": m})
        }),
    );
    let out = ComplexFile::from_complex(&d);
    if let Some(p) = output {
        std::fs::write(p, io::to_pretty(&out)).map_err(|source| Error::Io { path: p.display().to_string(), source })?;
        r.result("written", json!(p.display().to_string()));
    }
    r.result("dual", serde_json::to_value(&out).expect("serializable"));
    Ok(r)
}

/// Gromov duality for every basis class plus the duality principle.
pub fn check_duality(r: &mut Report, fmt: Fmt, c: &NormedComplex) -> Result<()> {
    if c.orientation != Orientation::Homological {
        return Err(Error::NormKind("duality checks start from a chain complex".into()));
    }
    let mut rows = Vec::new();
    for n in 0..=c.top_degree() {
        for (k, a) in homology::homology(c, n)?.basis_classes().into_iter().enumerate() {
            let d = gromov_duality(c, &a)?;
            rows.push(json!({
                "degree": n,
                "class": k,
                "primal": fmt.q(&d.primal_seminorm),
                "dual_sup": fmt.q(&d.dual_sup),
                "certificate": d.certificate.as_ref().map(|v| fmt.qs(v)),
                "certificate_norm": fmt.opt(&d.certificate_norm),
            }));
            r.check(format!("gromov-degree-{n}-class-{k}"), verify_gromov(c, &a, &d));
        }
    }
    let profile = homology::duality_profile(c)?;
    r.result("gromov", json!(rows));
    r.result("homology_dims", json!(profile.homology_dims));
    r.result("cohomology_dims", json!(profile.cohomology_dims));
    r.check(
        "duality-principle",
        outcome(
            profile.consistent(),
            json!({"homology_vanishes": profile.homology_vanishes(), "cohomology_vanishes": profile.cohomology_vanishes()}),
            || json!({"homology_dims": profile.homology_dims, "cohomology_dims": profile.cohomology_dims}),
        ),
    );
    Ok(())
}

fn verify_gromov(c: &NormedComplex, a: &HomologyClass, d: &homology::DualityReport) -> Outcome {
    let fail = |reason: &str| {
        Err(json!({
            "reason": reason,
            "primal": rational::format(&d.primal_seminorm),
            "dual_sup": rational::format(&d.dual_sup),
        }))
    };
    if !d.agree || d.primal_seminorm != d.dual_sup {
        return fail("primal and dual values differ");
    }
    let Some(phi) = &d.certificate else {
        return if d.primal_seminorm.is_zero() { Ok(json!({"value": "0"})) } else { fail("no certificate for a nonzero value") };
    };
    let n = a.degree;
    if c.incoming(n).vec_mul(phi).iter().any(|x| !x.is_zero()) {
        return fail("certificate is not a cocycle");
    }
    if !rational::dot(phi, &a.representative).is_one() {
        return fail("certificate does not pair to 1");
    }
    let norm = c.norm(n).dual().norm(phi);
    if Some(&norm) != d.certificate_norm.as_ref() || norm.recip() != d.dual_sup {
        return fail("1/‖certificate‖ differs from the dual value");
    }
    Ok(json!({"value": rational::format(&d.primal_seminorm), "certificate_norm": rational::format(&norm)}))
}

pub fn duality_check(cx: &Ctx, path: &Path) -> Result<Report> {
    let mut r = Report::new("duality-check");
    let (file, _) = load::<ComplexFile>(&mut r, path)?;
    let c = file.to_complex()?;
    check_duality(&mut r, cx.fmt, &c)?;
    Ok(r)
}

// ---------------------------------------------------------------- maps

pub(super) fn load_map(r: &mut Report, path: &Path) -> Result<ChainMap> {
    let (file, _) = load::<MapFile>(r, path)?;
    io::map_from_file_unchecked(path, &file)
}

/// Cone structure, both isomorphism criteria, the long exact sequence and
/// the dual-cone identification. Returns `false` when `f` is not a chain map.
pub fn check_cone(r: &mut Report, f: &ChainMap) -> Result<bool> {
    let v = whole(&f.validate());
    let valid = v.is_ok();
    r.check("chain-map", v);
    if !valid {
        return Ok(false);
    }
    let homological = f.source.orientation == Orientation::Homological;
    let c = if homological { cone::cone(f)? } else { cone::cocone(f)? };
    r.check("cone-square-zero", whole(&c.complex.validate()));
    let betti = homology::betti_numbers(&c.complex)?;
    r.result(
        "cone",
        json!({
            "kind": if homological { "cone" } else { "cocone" },
            "first_degree": c.first_degree,
            "dims": c.complex.dims,
            "homology_dims": betti,
        }),
    );
    let iso = cone::iso_check(f)?;
    r.result("iso", json!({"direct": iso.direct, "via_cone": iso.via_cone}));
    r.check(
        "iso-criteria-agree",
        outcome(iso.agree(), json!({"iso": iso.direct}), || json!({"direct": iso.direct, "via_cone": iso.via_cone})),
    );
    if homological {
        r.check(
            "long-exact-ranks",
            match cone::long_exact_rank_check(f)? {
                None => Ok(json!("every degree")),
                Some(n) => Err(json!({"degree": n, "cone_homology_dims": betti})),
            },
        );
        match cone::cone_dual_iso(f) {
            Ok((iso, isometric)) => {
                r.check("dual-cone-identification-commutes", Ok(json!({"dims": iso.source.dims})));
                r.check(
                    "dual-cone-identification-isometric",
                    outcome(isometric, json!("weights carried onto weights"), || {
                        let n = (0..iso.mats.len())
                            .find(|&n| iso.mats[n].mul_vec(&iso.source.norm(n).weights) != iso.target.norm(n).weights);
                        json!({"degree": n})
                    }),
                );
            }
            Err(e) => r.check("dual-cone-identification-commutes", Err(err_value(&e))),
        }
    }
    Ok(true)
}

fn probes(fmt: Fmt, p: &[ProbeResult]) -> Value {
    json!(p
        .iter()
        .map(|x| json!({"degree": x.degree, "label": x.label, "before": fmt.q(&x.before), "after": fmt.q(&x.after)}))
        .collect::<Vec<_>>())
}

fn first_unpreserved(p: &[ProbeResult]) -> Value {
    p.iter().find(|x| !x.preserved()).map_or(Value::Null, |x| {
        json!({"degree": x.degree, "label": x.label, "before": rational::format(&x.before), "after": rational::format(&x.after)})
    })
}

/// Both parts of the translation principle for a chain map.
pub fn check_translation(
    r: &mut Report,
    fmt: Fmt,
    f: &ChainMap,
    extra: &[HomologyClass],
    exhaustive: Option<ExhaustiveLimits>,
) -> Result<()> {
    let t = cone::translation_check(f, extra, exhaustive)?;
    r.result(
        "translation",
        json!({
            "homology_iso": t.homology_iso.direct,
            "cohomology_iso": t.cohomology_iso.direct,
            "hypothesis_isometric": t.hypothesis_isometric,
            "part2_verified": t.part2_verified,
            "probe_scope": t.probe_scope,
            "hypothesis_probes": probes(fmt, &t.hypothesis_probes),
            "conclusion_probes": probes(fmt, &t.conclusion_probes),
            "exhaustive": t.exhaustive.map(|e| json!({
                "hypothesis_isometric": e.hypothesis_isometric,
                "conclusion_isometric": e.conclusion_isometric,
            })),
            "exhaustive_requested": exhaustive.is_some(),
        }),
    );
    r.check(
        "part1-biconditional",
        outcome(
            t.part1_holds,
            json!({"homology_iso": t.homology_iso.direct, "cohomology_iso": t.cohomology_iso.direct}),
            || json!({"homology_iso": t.homology_iso.direct, "cohomology_iso": t.cohomology_iso.direct}),
        ),
    );
    let part2 = if t.hypothesis_isometric {
        match t.part2_verified {
            Some(true) => Ok(json!({"claimed": true, "probes": t.conclusion_probes.len()})),
            _ => Err(json!({"claimed": true, "probe": first_unpreserved(&t.conclusion_probes)})),
        }
    } else {
        Ok(json!({
            "claimed": false,
            "reason": if t.cohomology_iso.direct { "dual map changes a probe co-semi-norm" } else { "dual map is not a cohomology isomorphism" },
            "probe": first_unpreserved(&t.hypothesis_probes),
        }))
    };
    r.check("part2-on-probes", part2);
    if let Some(e) = t.exhaustive {
        let res = if e.hypothesis_isometric {
            outcome(e.conclusion_isometric == Some(true), json!({"claimed": true}), || {
                json!({"claimed": true, "conclusion_isometric": e.conclusion_isometric})
            })
        } else {
            Ok(json!({"claimed": false}))
        };
        r.check("part2-on-unit-balls", res);
    }
    Ok(())
}

pub fn cone(_cx: &Ctx, path: &Path) -> Result<Report> {
    let mut r = Report::new("cone");
    let f = load_map(&mut r, path)?;
    check_cone(&mut r, &f)?;
    Ok(r)
}

pub fn translate_check(cx: &Ctx, path: &Path, exhaustive: bool, probe_files: &[std::path::PathBuf]) -> Result<Report> {
    let mut r = Report::new("translate-check");
    let f = load_map(&mut r, path)?;
    f.ensure_valid()?;
    let mut extra = Vec::new();
    for p in probe_files {
        let (z, _) = load::<CycleFile>(&mut r, p)?;
        extra.push(HomologyClass::new(&f.source, z.degree, z.coefficients()?)?);
    }
    check_translation(&mut r, cx.fmt, &f, &extra, exhaustive.then(ExhaustiveLimits::default))?;
    Ok(r)
}

// ---------------------------------------------------------------- groups

pub(super) fn module_for(group: &FiniteGroup, file: Option<&ModuleFile>) -> Result<MonomialModule> {
    let Some(m) = file else {
        return Ok(MonomialModule::trivial_line(group));
    };
    if let Some(g) = &m.group {
        if g.table != group.table() {
            return Err(Error::InvalidModule("module's group table differs from the group file".into()));
        }
    }
    m.to_module(group)
}

fn degrees_json(fmt: Fmt, h: &GroupHomology) -> Value {
    json!(h
        .degrees
        .iter()
        .map(|d| json!({
            "degree": d.degree,
            "dimension": d.dimension,
            "reliable": d.reliable,
            "basis_norms": fmt.qs(&d.basis_norms),
        }))
        .collect::<Vec<_>>())
}

fn vanishing(r: &mut Report, h: &GroupHomology, fmt: Fmt) {
    for d in h.reliable().filter(|d| d.degree >= 1) {
        r.check(
            format!("vanishing-degree-{}", d.degree),
            outcome(d.dimension == 0, json!({"dimension": 0}), || {
                json!({"dimension": d.dimension, "basis_norms": fmt.qs(&d.basis_norms)})
            }),
        );
    }
}

/// ℓ¹ homology through degree `top - 1`: degree 0 is the coinvariants of
/// the coefficients and every positive degree vanishes.
pub fn check_l1_homology(r: &mut Report, fmt: Fmt, g: &Arc<FiniteGroup>, v: &MonomialModule, top: usize) -> Result<()> {
    if top == 0 {
        return Err(Error::Precondition("--top must be at least 1".into()));
    }
    let h = l1_homology_of_group(g, v, top)?;
    r.result("l1_homology", degrees_json(fmt, &h));
    r.result("coefficient_coinvariants_dim", json!(h.coefficient_dim));
    let h0 = h.degrees[0].dimension;
    r.check(
        "degree-0-is-coinvariants",
        outcome(h0 == h.coefficient_dim, json!({"dimension": h0}), || json!({"h0": h0, "coinvariants": h.coefficient_dim})),
    );
    vanishing(r, &h, fmt);
    Ok(())
}

/// Bounded cohomology through degree `top - 1`, plus the identification of
/// the invariant cochains with the dual of the coinvariant chains.
pub fn check_bounded_cohomology(
    r: &mut Report,
    fmt: Fmt,
    g: &Arc<FiniteGroup>,
    v: &MonomialModule,
    top: usize,
) -> Result<()> {
    if top == 0 {
        return Err(Error::Precondition("--top must be at least 1".into()));
    }
    let h = bounded_cohomology_of_group(g, v, top)?;
    r.result("bounded_cohomology", degrees_json(fmt, &h));
    r.result("coefficient_invariants_dim", json!(h.coefficient_dim));
    let h0 = h.degrees[0].dimension;
    r.check(
        "degree-0-is-invariants",
        outcome(h0 == h.coefficient_dim, json!({"dimension": h0}), || json!({"h0": h0, "invariants": h.coefficient_dim})),
    );
    vanishing(r, &h, fmt);
    let x = tensor_coefficients(&bar_complex(g.clone(), top)?.equivariant, v)?;
    r.check("resolution-dual-identification", identification(&x)?);
    Ok(())
}

pub(super) fn identification(x: &crate::group::EquivariantComplex) -> Result<Outcome> {
    let d = dual_identification(x)?;
    Ok(outcome(d.holds(), json!("basis, norms and maps agree"), || {
        json!({"basis_matches": d.basis_matches, "norms_match": d.norms_match, "maps_match": d.maps_match})
    }))
}

/// `(V_G)' ≅ (V')^G` for a coefficient module on its own.
pub fn check_module(r: &mut Report, g: &Arc<FiniteGroup>, v: &MonomialModule) -> Result<()> {
    r.check("module-dual-identification", identification(&module_complex(g.clone(), v)?)?);
    Ok(())
}

pub fn group_homology(cx: &Ctx, path: &Path, coeffs: Option<&Path>, top: usize, bounded: bool) -> Result<Report> {
    let mut r = Report::new(if bounded { "group bch" } else { "group l1h" });
    let (gf, _) = load::<GroupFile>(&mut r, path)?;
    let g = Arc::new(gf.to_group()?);
    let mf = match coeffs {
        Some(p) => Some(load::<ModuleFile>(&mut r, p)?.0),
        None => None,
    };
    let v = module_for(&g, mf.as_ref())?;
    r.result("group_order", json!(g.order()));
    r.result("coefficient_dim", json!(v.dim()));
    r.result("top", json!(top));
    check_module(&mut r, &g, &v)?;
    if bounded {
        check_bounded_cohomology(&mut r, cx.fmt, &g, &v, top)?;
    } else {
        check_l1_homology(&mut r, cx.fmt, &g, &v, top)?;
    }
    Ok(r)
}

/// The η map for one fundamental domain, compared on `H_0` of coinvariants
/// with a second domain. Domains are given in the input's vertex labels.
pub fn check_eta(
    r: &mut Report,
    fmt: Fmt,
    seed: u64,
    k: &SimplicialComplex,
    action: &SimplicialAction,
    domain: Option<&[usize]>,
    compare: Option<&[usize]>,
) -> Result<()> {
    let relabel = !action.preserves_order(k);
    let (k2, a2, new_label) = if relabel {
        relabel_by_orbit(k, action)?
    } else {
        (k.clone(), action.clone(), (0..k.vertex_count()).collect())
    };
    let translate = |d: &[usize]| -> Result<Vec<usize>> {
        d.iter()
            .map(|&v| new_label.get(v).copied().ok_or_else(|| Error::InvalidAction(format!("domain vertex {v} is not a vertex"))))
            .collect()
    };
    let first = match domain {
        Some(d) => translate(d)?,
        None => a2.propose_domain(),
    };
    let second = match compare {
        Some(d) => translate(d)?,
        None => a2.orbits().iter().map(|o| *o.last().expect("orbits are nonempty")).collect(),
    };
    let eta = eta_map(&k2, &a2, &first)?;
    r.result("relabelled_orbit_major", json!(relabel));
    r.result("vertex_relabelling", json!(new_label));
    let mut old_label = vec![0; new_label.len()];
    for (old, &new) in new_label.iter().enumerate() {
        old_label[new] = old;
    }
    let input_labels = |d: &[usize]| d.iter().map(|&v| old_label[v]).collect::<Vec<_>>();
    r.result("domain", json!(first));
    r.result("compare_domain", json!(second));
    r.result("domain_input_labels", json!(input_labels(&first)));
    r.result("compare_domain_input_labels", json!(input_labels(&second)));
    r.result("operator_norms", fmt.qs(&eta.operator_norms));
    r.result("chain_dims", json!(eta.map.source.dims));
    r.result("bar_dims", json!(eta.map.target.dims));
    r.check("chain-map", whole(&eta.map.validate()));
    r.check("equivariant", outcome(eta.is_equivariant(), json!("every element and simplex"), || json!("η(g·σ) ≠ g·η(σ)")));
    let bad = (0..eta.operator_norms.len())
        .find(|&n| eta.map.source.dim(n) > 0 && !eta.operator_norms[n].is_one());
    r.check(
        "operator-norm-one",
        outcome(bad.is_none(), json!("1 in every degree"), || {
            let n = bad.expect("checked");
            json!({"degree": n, "norm": rational::format(&eta.operator_norms[n])})
        }),
    );
    let mut rng = random::rng(seed);
    let mut theta = Ok(json!("θ = ηᵀ on a seeded cochain in every degree"));
    for n in 0..eta.map.mats.len() {
        let f: Vec<Rational> = (0..eta.map.target.dim(n)).map(|_| rational::int(rng.gen_range(-3..=3))).collect();
        let a = eta.theta_by_formula(n, &f);
        let b = eta.theta_by_transpose(n, &f);
        if a != b {
            let j = (0..a.len()).find(|&j| a[j] != b[j]).expect("differs");
            theta = Err(json!({"degree": n, "simplex": j, "formula": rational::format(&a[j]), "transpose": rational::format(&b[j])}));
            break;
        }
    }
    r.check("theta-formula", theta);
    let other = eta_map(&k2, &a2, &second)?;
    let h0 = eta.on_coinvariant_homology(0)?;
    let h0b = other.on_coinvariant_homology(0)?;
    r.result("h0_map", json!(h0.to_rows().iter().map(|row| fmt.qs(row)).collect::<Vec<_>>()));
    r.check(
        "domain-independence-degree-0",
        outcome(h0 == h0b, json!("equal"), || json!({"first": h0.first_difference(&h0b)})),
    );
    Ok(())
}

pub fn eta(
    cx: &Ctx,
    path: &Path,
    group: Option<&Path>,
    domain: Option<&[usize]>,
    compare: Option<&[usize]>,
) -> Result<Report> {
    let mut r = Report::new("group eta");
    let (cover, _) = load::<CoverFile>(&mut r, path)?;
    let g = match (group, &cover.group) {
        (Some(p), _) => load::<GroupFile>(&mut r, p)?.0.to_group()?,
        (None, Some(gf)) => gf.to_group()?,
        (None, None) => return Err(Error::Parse(format!("{}: no inline group; pass a group file", path.display()))),
    };
    let (k, a) = cover.to_cover(Arc::new(g))?;
    check_eta(&mut r, cx.fmt, cx.seed, &k, &a, domain, compare)?;
    Ok(r)
}

// ---------------------------------------------------------------- simplicial

fn simplex_labels(k: &SimplicialComplex, n: usize, idx: &[usize]) -> Value {
    json!(idx.iter().map(|&j| SimplicialComplex::label(&k.simplices(n)[j])).collect::<Vec<_>>())
}

/// Boundary norms, then either the fundamental-cycle checks (sv bound and
/// prism) or validation of the orientation obstruction.
pub fn check_simplicial(r: &mut Report, fmt: Fmt, k: &SimplicialComplex) -> Result<()> {
    let c = k.chain_complex(None)?;
    r.result("f_vector", json!((0..=k.dimension()).map(|n| k.count(n)).collect::<Vec<_>>()));
    r.check("square-zero", whole(&c.validate()));
    r.check("boundary-operator-norms", boundary_norms(&c));
    match fundamental_cycle(k) {
        Ok(_) => {
            r.result("orientable", json!(true));
            check_fundamental(r, fmt, k, &c)
        }
        Err(Error::NonOrientable { witness }) => {
            r.result("orientable", json!(false));
            r.check("orientation-obstruction", obstruction(k, &witness));
            Ok(())
        }
        Err(Error::NotPseudoManifold(msg)) => {
            r.result("closed_pseudo_manifold", json!(msg));
            match orient(k, true) {
                Ok(_) => r.result("orientable_with_boundary", json!(true)),
                Err(Error::NonOrientable { witness }) => {
                    r.result("orientable_with_boundary", json!(false));
                    r.check("orientation-obstruction", obstruction(k, &witness));
                }
                Err(Error::NotPseudoManifold(m)) => r.result("pseudo_manifold_with_boundary", json!(m)),
                Err(e) => return Err(e),
            }
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn obstruction(k: &SimplicialComplex, witness: &[usize]) -> Outcome {
    let labels = simplex_labels(k, k.dimension(), witness);
    outcome(is_orientation_obstruction(k, witness), json!({"odd_cycle": labels}), || {
        json!({"not_an_odd_cycle": labels})
    })
}

fn check_fundamental(r: &mut Report, fmt: Fmt, k: &SimplicialComplex, c: &NormedComplex) -> Result<()> {
    let z = fundamental_cycle(k)?;
    let n = z.dimension;
    let dz = k.boundary_matrix(n).mul_vec(&z.coefficients);
    let units = z.coefficients.iter().all(|x| rational::abs(x).is_one());
    r.result("fundamental_cycle", fmt.qs(&z.coefficients));
    r.check(
        "fundamental-cycle",
        match dz.iter().position(|x| !x.is_zero()) {
            Some(i) => Err(json!({"face": SimplicialComplex::label(&k.simplices(n - 1)[i]), "coefficient": rational::format(&dz[i])})),
            None => outcome(units, json!({"l1_norm": rational::format(&z.l1_norm())}), || json!("a coefficient is not ±1")),
        },
    );
    let sv = sv_upper_bound(k)?;
    r.result(
        "sv_bound",
        json!({
            "upper_bound": fmt.q(&sv.upper_bound),
            "fundamental_cycle_norm": fmt.q(&sv.fundamental_cycle_norm),
            "top_degree_is_maximal": sv.top_degree_is_maximal,
            "minimizer": fmt.qs(&sv.minimizer),
            "certificate": fmt.qs(&sv.certificate),
            "meaning": crate::simplicial::SvBound::DISCLAIMER,
        }),
    );
    let s = SeminormResult { value: sv.upper_bound.clone(), witness: sv.minimizer.clone(), certificate: sv.certificate.clone() };
    r.check("sv-bound-certificate", verify_seminorm(c, &z.class(), &s));
    r.check(
        "sv-bound-at-most-cycle-norm",
        outcome(sv.upper_bound <= sv.fundamental_cycle_norm, json!(rational::format(&sv.upper_bound)), || {
            json!({"bound": rational::format(&sv.upper_bound), "cycle_norm": rational::format(&sv.fundamental_cycle_norm)})
        }),
    );
    check_prism(r, fmt, k, n, &z.coefficients)
}

fn check_prism(r: &mut Report, fmt: Fmt, k: &SimplicialComplex, degree: usize, z: &[Rational]) -> Result<()> {
    let p = prism(k, degree, z)?;
    let bound = rational::int(degree as i64 + 1) * &p.cycle_norm;
    r.result(
        "prism",
        json!({
            "cycle_degree": degree,
            "b_norm": fmt.q(&p.b_norm),
            "cycle_norm": fmt.q(&p.cycle_norm),
            "bound": fmt.q(&bound),
            "product_f_vector": (0..=p.product.dimension()).map(|n| p.product.count(n)).collect::<Vec<_>>(),
        }),
    );
    r.check(
        "prism-boundary-identity",
        outcome(p.boundary_identity, json!("∂b = top copy − bottom copy"), || {
            let db = p.product.boundary_matrix(degree + 1).mul_vec(&p.b);
            let i = (0..db.len()).find(|&i| db[i] != &p.top[i] - &p.bottom[i]).unwrap_or(0);
            json!({"simplex": SimplicialComplex::label(&p.product.simplices(degree)[i])})
        }),
    );
    r.check(
        "prism-norm-bound",
        outcome(p.norm_bound_holds(), json!({"b_norm": rational::format(&p.b_norm), "bound": rational::format(&bound)}), || {
            json!({"b_norm": rational::format(&p.b_norm), "bound": rational::format(&bound)})
        }),
    );
    Ok(())
}

pub fn fundamental(cx: &Ctx, path: &Path) -> Result<Report> {
    let mut r = Report::new("simplicial fundamental");
    let (file, _) = load::<SimplicialFile>(&mut r, path)?;
    let k = file.to_complex()?;
    let c = k.chain_complex(None)?;
    r.check("boundary-operator-norms", boundary_norms(&c));
    match fundamental_cycle(&k) {
        Ok(z) => {
            r.result("dimension", json!(z.dimension));
            r.result("fundamental_cycle", cx.fmt.qs(&z.coefficients));
            r.result("l1_norm", cx.fmt.q(&z.l1_norm()));
            r.check("orientable", Ok(json!({"top_simplices": z.coefficients.len()})));
            r.check("cycle", outcome(z.class().check_cycle(&c).is_ok(), json!("∂z = 0"), || json!("∂z ≠ 0")));
        }
        Err(Error::NonOrientable { witness }) => {
            r.check("orientable", Err(json!({"odd_cycle": simplex_labels(&k, k.dimension(), &witness)})));
            r.check("orientation-obstruction", obstruction(&k, &witness));
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

pub fn sv_bound(cx: &Ctx, path: &Path) -> Result<Report> {
    let mut r = Report::new("simplicial sv-bound");
    let (file, _) = load::<SimplicialFile>(&mut r, path)?;
    let k = file.to_complex()?;
    let c = k.chain_complex(None)?;
    check_fundamental(&mut r, cx.fmt, &k, &c)?;
    Ok(r)
}

pub fn prism_cmd(cx: &Ctx, path: &Path, cycle: Option<&Path>) -> Result<Report> {
    let mut r = Report::new("simplicial prism");
    let (file, _) = load::<SimplicialFile>(&mut r, path)?;
    let k = file.to_complex()?;
    let (degree, z) = match cycle {
        Some(p) => {
            let (z, _) = load::<CycleFile>(&mut r, p)?;
            (z.degree, z.coefficients()?)
        }
        None => {
            let z = fundamental_cycle(&k)?;
            (z.dimension, z.coefficients)
        }
    };
    check_prism(&mut r, cx.fmt, &k, degree, &z)?;
    Ok(r)
}

/// The partial sums `b̄_K` and the telescoping identity for every `K`.
pub fn check_series(r: &mut Report, fmt: Fmt, inst: &SeriesInstance, steps: usize) -> Result<()> {
    let s = crate::simplicial::invisibility_series(&inst.map, inst.degree, &inst.z, inst.d, &inst.b, steps)?;
    r.result(
        "series",
        json!({
            "degree": s.degree,
            "map_degree": fmt.q(&s.d),
            "steps": steps,
            "term_norms": fmt.qs(&s.term_norms),
            "ratios": s.ratios.iter().map(|x| fmt.opt(x)).collect::<Vec<_>>(),
            "max_ratio": fmt.opt(&s.max_ratio),
            "observed_geometric_decay": s.observed_geometric_decay(),
            "last_partial_sum": fmt.qs(s.partial_sums.last().expect("K = 0 is present")),
            "scope": crate::simplicial::SeriesReport::SCOPE,
        }),
    );
    for (k, ok) in s.identity_holds.iter().enumerate().skip(1) {
        r.check(
            format!("telescoping-K{k}"),
            outcome(*ok, json!("∂b̄_K = z − d^(−K) f^K(z)"), || json!({"K": k, "partial_sum": exact(&s.partial_sums[k])})),
        );
    }
    Ok(())
}

pub fn series_from_files(
    r: &mut Report,
    map: &Path,
    cycle: &Path,
    chain: &Path,
    d: i64,
) -> Result<SeriesInstance> {
    let f = load_map(r, map)?;
    let (z, _) = load::<CycleFile>(r, cycle)?;
    let (b, _) = load::<CycleFile>(r, chain)?;
    if b.degree != z.degree + 1 {
        return Err(Error::Shape(format!("chain has degree {}, expected {}", b.degree, z.degree + 1)));
    }
    Ok(SeriesInstance {
        complex: f.source.clone(),
        map: f,
        degree: z.degree,
        z: z.coefficients()?,
        d,
        b: b.coefficients()?,
    })
}
