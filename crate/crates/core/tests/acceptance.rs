//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use topquiver::correspondence::QuiverCorrespondence;
use topquiver::gen::{self, GenBounds, Weights};
use topquiver::pimsner::{verify_induced, Basis, Deg2Element, Generator};
use topquiver::{
    check_factor_map, equivalence_check, fixtures, CorrMorphism, Fragment, GeneratorMap,
    Presentation, QuiverMorphism,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const BOUNDS: GenBounds = GenBounds::new(8, 16);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn regular(seed: u64) -> Result<QuiverMorphism, String> {
    gen::gen_regular_morphism(seed, BOUNDS, Weights::Pool).map_err(|e| e.to_string())
}

fn a3_only_mutants(count: usize) -> Result<Vec<QuiverMorphism>, String> {
    let mut out = Vec::new();
    let mut seed = 10_000;
    while out.len() < count {
        let m = regular(seed)?;
        if let Some(s) = gen::add_sink_over_regular(&mut gen::rng_for(seed), &m) {
            out.push(s);
        }
        seed += 1;
    }
    Ok(out)
}

fn category_closure() -> Outcome {
    for seed in 0..200 {
        let (n, m) =
            gen::gen_composable_pair(seed, BOUNDS, Weights::Pool).map_err(|e| e.to_string())?;
        ensure(
            m.dom().num_vertices() <= 8 && m.dom().num_edges() <= 16,
            || format!("seed {seed}: size bound"),
        )?;
        let nm = QuiverMorphism::compose(&n, &m).map_err(|e| e.to_string())?;
        let report = nm.check_regular().map_err(|e| e.to_string())?;
        ensure(report.is_regular(), || format!("seed {seed}: {report:?}"))?;
    }
    Ok("200 composable pairs, every composite regular".into())
}

fn correspondence_conditions() -> Outcome {
    for seed in 0..200 {
        let report = CorrMorphism::build(regular(seed)?)
            .and_then(|c| c.check_covariance())
            .map_err(|e| e.to_string())?;
        ensure(report.is_correspondence_morphism(), || {
            format!("seed {seed}: {report:?}")
        })?;
    }
    for (i, m) in a3_only_mutants(50)?.into_iter().enumerate() {
        let report = CorrMorphism::build(m)
            .and_then(|c| c.check_covariance())
            .map_err(|e| e.to_string())?;
        ensure(report.is_correspondence_morphism(), || {
            format!("A3 mutant {i}: {report:?}")
        })?;
    }
    Ok("C1, C2 on 200 regular morphisms and 50 A3-only mutants".into())
}

fn covariance() -> Outcome {
    for seed in 0..200 {
        let report = CorrMorphism::build(regular(seed)?)
            .and_then(|c| c.check_covariance())
            .map_err(|e| e.to_string())?;
        ensure(
            report.c3.passed() && report.c4_reduction.passed() && report.c4_operator.passed(),
            || format!("seed {seed}: {report:?}"),
        )?;
    }
    for (i, m) in a3_only_mutants(50)?.into_iter().enumerate() {
        let report = CorrMorphism::build(m)
            .and_then(|c| c.check_covariance())
            .map_err(|e| e.to_string())?;
        ensure(report.c3.witness().is_some(), || {
            format!("A3 mutant {i}: C3 did not fail")
        })?;
    }
    Ok("C3 and both C4 routes on 200 regular morphisms; C3 witnessed on 50 A3-only mutants".into())
}

fn rank_one_intertwining() -> Outcome {
    let mut checks = 0;
    for seed in 0..200 {
        let m = regular(seed)?;
        let cm = CorrMorphism::build(m.clone()).map_err(|e| e.to_string())?;
        let mut rng = gen::rng_for(seed);
        for k in 0..5 {
            let g = gen::random_edge_vector(&mut rng, m.cod());
            let holds = cm.c4lemma_check(&g).map_err(|e| e.to_string())?;
            ensure(holds, || format!("seed {seed}, g #{k}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} exact operator equalities"))
}

fn factor_equivalence() -> Outcome {
    let mut kinds = [0usize; 3];
    for seed in 0..200u64 {
        let m = gen::gen_regular_morphism(seed, GenBounds::new(6, 10), Weights::Counting)
            .map_err(|e| e.to_string())?;
        let mut rng = gen::rng_for(seed);
        let m = match seed % 4 {
            1 => gen::drop_lifted_edge(&mut rng, &m),
            2 => gen::duplicate_lifted_edge(&mut rng, &m),
            3 => gen::add_sink_over_regular(&mut rng, &m),
            _ => None,
        }
        .unwrap_or(m);
        let factor = check_factor_map(&m).map_err(|e| e.to_string())?;
        let reg = m.check_regular().map_err(|e| e.to_string())?;
        ensure(equivalence_check(&m).map_err(|e| e.to_string())?, || {
            format!("seed {seed}: verdicts differ")
        })?;
        ensure(factor.f2_holds() == reg.a2_holds(), || {
            format!("seed {seed}: F2 vs A2")
        })?;
        ensure(factor.regular_factor_holds() == reg.a3_holds(), || {
            format!("seed {seed}: regular factor vs A3")
        })?;
        if reg.is_regular() {
            kinds[0] += 1;
        }
        if !reg.a2_holds() {
            kinds[1] += 1;
        }
        if !reg.a3_holds() {
            kinds[2] += 1;
        }
    }
    ensure(kinds.iter().all(|&k| k >= 20), || {
        format!("unbalanced mix {kinds:?}")
    })?;
    Ok(format!(
        "200 counting morphisms ({} regular, {} A2-broken, {} A3-broken)",
        kinds[0], kinds[1], kinds[2]
    ))
}

fn induced_homomorphism() -> Outcome {
    for seed in 0..200 {
        let m = regular(seed)?;
        let report = verify_induced(&m).map_err(|e| e.to_string())?;
        ensure(report.all_hold(), || {
            format!("seed {seed}: {:?}", report.failures().collect::<Vec<_>>())
        })?;
        let map = GeneratorMap::induced(&m).map_err(|e| e.to_string())?;
        ensure(map.is_degree_preserving(), || {
            format!("seed {seed}: image not homogeneous")
        })?;
        ensure(map.is_unital(), || format!("seed {seed}: not unital"))?;

        let (n, m) =
            gen::gen_composable_pair(seed, BOUNDS, Weights::Pool).map_err(|e| e.to_string())?;
        let nm = QuiverMorphism::compose(&n, &m).map_err(|e| e.to_string())?;
        let direct = GeneratorMap::induced(&nm).map_err(|e| e.to_string())?;
        let composed = GeneratorMap::induced(&m)
            .and_then(|gm| GeneratorMap::compose(&gm, &GeneratorMap::induced(&n)?))
            .map_err(|e| e.to_string())?;
        ensure(direct == composed, || {
            format!("seed {seed}: induced map of composite differs")
        })?;
    }
    Ok("200 morphisms: relations, functoriality, grading, unitality".into())
}

fn oracles() -> Outcome {
    for seed in 0..100 {
        let q = gen::gen_quiver(seed, GenBounds::new(6, 10), Weights::Pool);
        let x = QuiverCorrespondence::new(&q);
        let oracle = x.ideal_jx_by_kernel().map_err(|e| e.to_string())?;
        ensure(x.ideal_jx() == oracle, || {
            format!("seed {seed}: J_X differs from kernel oracle")
        })?;
    }

    let mut morphisms = 0;
    for seed in 0..100 {
        let m = regular(seed)?;
        let mut rng = gen::rng_for(seed);
        let variants = [
            Some(m.clone()),
            gen::drop_lifted_edge(&mut rng, &m),
            gen::duplicate_lifted_edge(&mut rng, &m),
            gen::add_sink_over_regular(&mut rng, &m),
            gen::perturb_weight(&mut rng, &m),
        ];
        for v in variants.into_iter().flatten() {
            let a2 = v.check_regular().map_err(|e| e.to_string())?.a2_holds();
            let pushed = (0..v.dom().num_vertices())
                .all(|d| v.pushforward_at(d) == QuiverMorphism::fiber_measure(v.cod(), v.vmap(d)));
            ensure(a2 == pushed, || {
                format!("seed {seed}: pushforward oracle disagrees with A2")
            })?;
            morphisms += 1;
        }
    }

    for seed in 0..100 {
        let mut rng = gen::rng_for(seed);
        let q = gen::random_quiver(&mut rng, GenBounds::new(5, 10), Weights::Pool);
        let x = QuiverCorrespondence::new(&q);
        let t = gen::random_operator(&mut rng, &q);
        let rebuilt = x
            .rank_one_decompose(&t)
            .and_then(|p| x.sum_theta(&p))
            .map_err(|e| e.to_string())?;
        ensure(rebuilt == t, || {
            format!("seed {seed}: rank-one reconstruction")
        })?;
    }

    for seed in 0..50 {
        let m = regular(seed)?;
        let cm = CorrMorphism::build(m.clone()).map_err(|e| e.to_string())?;
        let x = QuiverCorrespondence::new(m.cod());
        let t = gen::random_operator(&mut gen::rng_for(seed), m.cod());
        let a = x
            .rank_one_decompose(&t)
            .and_then(|p| cm.push_rank_one_sum(&p))
            .map_err(|e| e.to_string())?;
        let b = x
            .rank_one_decompose_by_columns(&t)
            .and_then(|p| cm.push_rank_one_sum(&p))
            .map_err(|e| e.to_string())?;
        ensure(a == b, || format!("seed {seed}: decomposition dependence"))?;
    }
    Ok(format!("J_X on 100 quivers, pushforward on {morphisms} morphisms, 100 reconstructions, 50 decompositions"))
}

fn fixture_regressions() -> Outcome {
    let lines = Presentation::emit(fixtures::q_loop()).lines();
    for rel in ["t* t = p", "p = t t*"] {
        ensure(lines.iter().any(|l| l == rel), || {
            format!("Q_LOOP lacks {rel}")
        })?;
    }
    let frag = Fragment::new(fixtures::q_loop());
    let p = Deg2Element::basis(Basis::P(0));
    let tstar_t = frag.reduce(&[
        topquiver::pimsner::Letter::t(0).adjoint(),
        topquiver::pimsner::Letter::t(0),
    ]);
    ensure(tstar_t.as_ref() == Ok(&p), || {
        "t*t does not reduce to p".into()
    })?;
    ensure(frag.equal(&Deg2Element::basis(Basis::TT(0, 0)), &p), || {
        "tt* is not p".into()
    })?;

    let lines = Presentation::emit(fixtures::q_wloop()).lines();
    for rel in ["t* t = 2 p", "p = (1/2) t t*"] {
        ensure(lines.iter().any(|l| l == rel), || {
            format!("Q_WLOOP lacks {rel}")
        })?;
    }

    let m = fixtures::m_collapse();
    let map = GeneratorMap::induced(&m).map_err(|e| e.to_string())?;
    let dom = m.dom();
    let sum = |b: fn(usize) -> Basis, ids: [&str; 2], edge: bool| {
        ids.iter().fold(Deg2Element::zero(), |acc, id| {
            let i = if edge {
                dom.edge(id).unwrap()
            } else {
                dom.vertex(id).unwrap()
            };
            acc.add(&Deg2Element::basis(b(i)))
        })
    };
    ensure(
        map.image(Generator::P(0)) == &sum(Basis::P, ["a", "b"], false),
        || "p_u image".into(),
    )?;
    ensure(
        map.image(Generator::T(0)) == &sum(Basis::T, ["e1", "e2"], true),
        || "t_ℓ image".into(),
    )?;
    ensure(
        verify_induced(&m).map_err(|e| e.to_string())?.all_hold(),
        || "M_COLLAPSE relations".into(),
    )?;
    Ok("Q_LOOP, Q_WLOOP presentations and M_COLLAPSE induced map".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 category closure", category_closure),
        (
            "AC2 correspondence-morphism conditions",
            correspondence_conditions,
        ),
        ("AC3 covariance", covariance),
        ("AC4 rank-one intertwining", rank_one_intertwining),
        ("AC5 factor-map equivalence", factor_equivalence),
        ("AC6 induced homomorphism", induced_homomorphism),
        ("AC7 oracle equivalences", oracles),
        ("AC8 fixture regressions", fixture_regressions),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
