//! One function per subcommand, each producing a report in both output forms.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use topquiver::gen::{self, GenBounds, Weights};
use topquiver::morphism::{RegularityReport, SquareReport};
use topquiver::pimsner::verify_generator_map;
use topquiver::{
    check_factor_map, equivalence_check, validate, CorrMorphism, EdgeVector, Error, FiniteQuiver,
    GeneratorMap, Presentation, QuiverMorphism,
};

use crate::input::{self, Malformed};

pub struct Outcome {
    pub ok: bool,
    pub human: Vec<String>,
    pub structured: Value,
}

impl Outcome {
    fn new(ok: bool, human: Vec<String>, structured: impl Serialize) -> Self {
        let structured = serde_json::to_value(structured).expect("reports serialize");
        Outcome {
            ok,
            human,
            structured,
        }
    }
}

type Result<T> = std::result::Result<T, Malformed>;

fn list(ids: &[String]) -> String {
    if ids.is_empty() {
        "(none)".into()
    } else {
        ids.join(", ")
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn validate_file(path: &Path) -> Result<Outcome> {
    let data = input::quiver_data(path)?;
    let report = validate(&data);
    let human = if report.is_valid() {
        vec![format!(
            "valid: vertices {}, edges {}",
            data.vertices.len(),
            data.edges.len()
        )]
    } else {
        report
            .violations
            .iter()
            .map(|v| format!("invalid: {v}"))
            .collect()
    };
    Ok(Outcome::new(report.is_valid(), human, &report))
}

pub fn classify(path: &Path) -> Result<Outcome> {
    let q = input::quiver(path)?;
    let c = q.classify();
    let human = vec![
        format!("sinks: {}", list(&c.sinks)),
        format!("fin: {}", list(&c.fin)),
        format!("reg: {}", list(&c.reg)),
        format!("sing: {}", list(&c.sing)),
    ];
    Ok(Outcome::new(true, human, &c))
}

fn square_outcome(report: &SquareReport) -> Outcome {
    let human = if report.is_morphism() {
        vec!["morphism: both squares commute".into()]
    } else {
        report
            .failures
            .iter()
            .map(|f| format!("not a morphism: {f}"))
            .collect()
    };
    Outcome::new(
        report.is_morphism(),
        human,
        json!({ "morphism": report.is_morphism(), "squares": report }),
    )
}

pub fn check_morphism(path: &Path) -> Result<Outcome> {
    let m = input::morphism(path)?;
    Ok(square_outcome(&m.check_morphism()))
}

/// The morphism's regularity report, or the failing square outcome.
fn regularity(m: &QuiverMorphism) -> std::result::Result<RegularityReport, Outcome> {
    let squares = m.check_morphism();
    if !squares.is_morphism() {
        return Err(square_outcome(&squares));
    }
    Ok(m.check_regular().expect("squares were checked"))
}

fn regularity_lines(r: &RegularityReport) -> Vec<String> {
    let mut lines = vec![
        format!("A1: {}", r.a1),
        format!("A2: {}", pass_fail(r.a2_holds())),
    ];
    lines.extend(r.a2_failures.iter().map(|f| format!("  {f}")));
    if r.a3_holds() {
        lines.push("A3: pass".into());
    } else {
        lines.push(format!(
            "A3: fail at {} (over a regular vertex, emits no edge)",
            r.a3_failures.join(", ")
        ));
    }
    lines
}

fn regularity_outcome(r: &RegularityReport) -> Outcome {
    Outcome::new(
        r.is_regular(),
        regularity_lines(r),
        json!({ "regular": r.is_regular(), "report": r }),
    )
}

pub fn check_regular(path: &Path) -> Result<Outcome> {
    let m = input::morphism(path)?;
    Ok(match regularity(&m) {
        Ok(r) => regularity_outcome(&r),
        Err(o) => o,
    })
}

pub fn compose(outer: &Path, inner: &Path) -> Result<Outcome> {
    let n = input::morphism(outer)?;
    let m = input::morphism(inner)?;
    let nm = QuiverMorphism::compose(&n, &m).map_err(|e| match e {
        Error::CompositionMismatch => Malformed(format!(
            "codomain of {} is not the domain of {}",
            inner.display(),
            outer.display()
        )),
        e => e.into(),
    })?;
    let data = nm.to_data();
    let text = serde_json::to_string_pretty(&data).expect("morphisms serialize");
    Ok(Outcome::new(true, vec![text], &data))
}

pub fn check_covariance(path: &Path) -> Result<Outcome> {
    let m = input::morphism(path)?;
    let squares = m.check_morphism();
    if !squares.is_morphism() {
        return Ok(square_outcome(&squares));
    }
    let report = CorrMorphism::build(m)?.check_covariance()?;
    let human = vec![
        format!("C1: {}", report.c1),
        format!("C2: {}", report.c2),
        format!("C3: {}", report.c3),
        format!("C4: {}", report.c4),
        format!("  reduction route: {}", report.c4_reduction),
        format!("  operator route: {}", report.c4_operator),
    ];
    Ok(Outcome::new(
        report.is_covariant(),
        human,
        json!({ "covariant": report.is_covariant(), "report": report }),
    ))
}

pub fn c4lemma(path: &Path, seed: u64, samples: usize) -> Result<Outcome> {
    let m = input::morphism(path)?;
    let r = match regularity(&m) {
        Ok(r) => r,
        Err(o) => return Ok(o),
    };
    if !r.a2_holds() {
        let mut human = vec!["(μ¹)⁽¹⁾ is undefined: A2 fails".to_string()];
        human.extend(regularity_lines(&r));
        return Ok(Outcome::new(
            false,
            human,
            json!({ "defined": false, "report": r }),
        ));
    }
    let cm = CorrMorphism::build(m.clone())?;
    let cod = m.cod();
    let mut cases: Vec<(String, EdgeVector)> = (0..cod.num_edges())
        .map(|x| {
            (
                format!("δ_{}", cod.edge_id(x)),
                EdgeVector::delta(cod.num_edges(), x),
            )
        })
        .collect();
    let mut rng = gen::rng_for(seed);
    for i in 0..samples {
        let g = gen::random_edge_vector(&mut rng, cod);
        cases.push((format!("random #{i} {}", g.labelled(cod)), g));
    }
    let mut human = Vec::new();
    let mut results = Vec::new();
    let mut ok = true;
    for (label, g) in &cases {
        let holds = cm.c4lemma_check(g)?;
        ok &= holds;
        human.push(format!("g = {label}: {}", pass_fail(holds)));
        results.push(json!({ "g": label, "holds": holds }));
    }
    Ok(Outcome::new(
        ok,
        human,
        json!({ "defined": true, "seed": seed, "checks": results }),
    ))
}

pub fn presentation(path: &Path) -> Result<Outcome> {
    let p = Presentation::emit(input::quiver(path)?);
    let structured: Vec<Value> = p
        .relations()
        .iter()
        .map(|r| json!({ "kind": r.kind, "relation": p.format_relation(r) }))
        .collect();
    Ok(Outcome::new(
        true,
        p.lines(),
        json!({ "relations": structured }),
    ))
}

/// The induced generator map, or an outcome explaining why there is none.
fn induced(m: &QuiverMorphism) -> Result<std::result::Result<GeneratorMap, Outcome>> {
    match regularity(m) {
        Err(o) => Ok(Err(o)),
        Ok(r) if !r.is_regular() => {
            let mut o = regularity_outcome(&r);
            o.human.insert(
                0,
                "no induced homomorphism: the morphism is not regular".into(),
            );
            Ok(Err(o))
        }
        Ok(_) => Ok(Ok(GeneratorMap::induced(m)?)),
    }
}

pub fn induced_hom(path: &Path) -> Result<Outcome> {
    let m = input::morphism(path)?;
    let map = match induced(&m)? {
        Ok(map) => map,
        Err(o) => return Ok(o),
    };
    let lines = map.lines();
    let images: Vec<Value> = lines
        .iter()
        .map(|l| {
            let (g, image) = l.split_once(" ↦ ").expect("map lines contain ↦");
            json!({ "generator": g, "image": image })
        })
        .collect();
    Ok(Outcome::new(true, lines, json!({ "images": images })))
}

pub fn verify_induced(path: &Path) -> Result<Outcome> {
    let m = input::morphism(path)?;
    let map = match induced(&m)? {
        Ok(map) => map,
        Err(o) => return Ok(o),
    };
    let report = verify_generator_map(&map)?;
    let human = report
        .relations
        .iter()
        .map(|r| match &r.images {
            None => format!("{:?} {}: holds", r.kind, r.relation),
            Some((l, rhs)) => format!("{:?} {}: fails, image {l} ≠ {rhs}", r.kind, r.relation),
        })
        .collect();
    Ok(Outcome::new(report.all_hold(), human, &report))
}

pub fn factor_check(path: &Path) -> Result<Outcome> {
    let m = input::morphism(path)?;
    let report = check_factor_map(&m)?;
    let equivalent = equivalence_check(&m)?;
    let mut human = vec![format!("F1: {}", pass_fail(report.f1_holds()))];
    human.extend(report.f1.iter().map(|f| format!("  {f}")));
    human.push(format!("F2: {}", pass_fail(report.f2_holds())));
    human.extend(report.f2.iter().map(|f| {
        format!(
            "  at ({}, {}): {} preimages in the fiber",
            f.edge, f.vertex, f.preimages
        )
    }));
    if report.regular_factor_holds() {
        human.push("regular factor: pass".into());
    } else {
        human.push(format!(
            "regular factor: fail at {}",
            report.regular_factor.join(", ")
        ));
    }
    human.extend(report.notes.iter().map(|n| format!("note: {n}")));
    human.push(format!(
        "agrees with the regular-morphism verdict: {}",
        if equivalent { "yes" } else { "no" }
    ));
    Ok(Outcome::new(
        report.all_pass() && equivalent,
        human,
        json!({ "report": report, "equivalent": equivalent }),
    ))
}

fn weights(counting: bool) -> Weights {
    if counting {
        Weights::Counting
    } else {
        Weights::Pool
    }
}

fn json_outcome(value: impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(&value).expect("generated data serializes");
    Outcome::new(true, vec![text], value)
}

pub fn gen_quiver(seed: u64, bounds: GenBounds, counting: bool) -> Outcome {
    let q: std::sync::Arc<FiniteQuiver> = gen::gen_quiver(seed, bounds, weights(counting));
    json_outcome(q.data())
}

pub fn gen_regular_morphism(seed: u64, bounds: GenBounds, counting: bool) -> Result<Outcome> {
    let m = gen::gen_regular_morphism(seed, bounds, weights(counting))?;
    Ok(json_outcome(m.to_data()))
}
