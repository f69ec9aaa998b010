use proptest::prelude::*;
use topquiver::correspondence::QuiverCorrespondence;
use topquiver::gen::{self, GenBounds, Weights};
use topquiver::morphism::MorphismData;
use topquiver::{check_factor_map, equivalence_check, CorrMorphism, QuiverMorphism};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

fn regular(seed: u64) -> QuiverMorphism {
    gen::gen_regular_morphism(seed, GenBounds::default(), Weights::Pool).unwrap()
}

/// A regular morphism or one of its single-condition mutants, chosen by seed.
fn mutant(seed: u64, weights: Weights) -> QuiverMorphism {
    let m = gen::gen_regular_morphism(seed, GenBounds::new(6, 10), weights).unwrap();
    let mut rng = gen::rng_for(seed ^ 0x5eed);
    let mutated = match seed % 5 {
        1 => gen::drop_lifted_edge(&mut rng, &m),
        2 => gen::duplicate_lifted_edge(&mut rng, &m),
        3 => gen::add_sink_over_regular(&mut rng, &m),
        4 if weights == Weights::Pool => gen::perturb_weight(&mut rng, &m),
        _ => None,
    };
    mutated.unwrap_or(m)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn composition_is_regular_and_associative(seed in any::<u64>()) {
        let (n, m) = gen::gen_composable_pair(seed, GenBounds::default(), Weights::Pool).unwrap();
        let nm = QuiverMorphism::compose(&n, &m).unwrap();
        prop_assert!(nm.check_regular().unwrap().is_regular());

        let k = gen::random_cover(&mut gen::rng_for(seed), m.dom().clone());
        let left = QuiverMorphism::compose(&nm, &k).unwrap();
        let right = QuiverMorphism::compose(&n, &QuiverMorphism::compose(&m, &k).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let id_dom = QuiverMorphism::identity(m.dom().clone());
        let id_cod = QuiverMorphism::identity(m.cod().clone());
        prop_assert_eq!(QuiverMorphism::compose(&m, &id_dom).unwrap(), m.clone());
        prop_assert_eq!(QuiverMorphism::compose(&id_cod, &m).unwrap(), m.clone());
        prop_assert!(QuiverMorphism::compose(&m, &n).is_err() || m.dom() == n.cod());
    }

    #[test]
    fn pullbacks_are_functorial(seed in any::<u64>()) {
        let (n, m) = gen::gen_composable_pair(seed, GenBounds::default(), Weights::Pool).unwrap();
        let nm = CorrMorphism::build(QuiverMorphism::compose(&n, &m).unwrap()).unwrap();
        let (cn, cm) = (CorrMorphism::build(n).unwrap(), CorrMorphism::build(m).unwrap());
        prop_assert_eq!(nm.mu0_matrix(), cm.mu0_matrix().mul(&cn.mu0_matrix()).unwrap());
        prop_assert_eq!(nm.mu1_matrix(), cm.mu1_matrix().mul(&cn.mu1_matrix()).unwrap());
    }

    #[test]
    fn pushforward_oracle_matches_a2(seed in any::<u64>()) {
        let m = mutant(seed, Weights::Pool);
        let report = m.check_regular().unwrap();
        let measures_match = (0..m.dom().num_vertices()).all(|v| {
            m.pushforward_at(v) == QuiverMorphism::fiber_measure(m.cod(), m.vmap(v))
        });
        prop_assert_eq!(report.a2_holds(), measures_match);
    }

    #[test]
    fn regular_morphisms_are_covariant(seed in any::<u64>()) {
        let m = regular(seed);
        let cm = CorrMorphism::build(m.clone()).unwrap();
        let report = cm.check_covariance().unwrap();
        prop_assert!(report.is_covariant(), "{:?}", report);
        prop_assert_eq!(report.c4_routes_agree(), Some(true));

        let mut rng = gen::rng_for(seed);
        let xi = gen::random_edge_vector(&mut rng, m.cod());
        prop_assert!(m.integral_identity_check(&xi).unwrap());
        prop_assert!(cm.contraction_check(&xi).unwrap());
        prop_assert!(cm.c4lemma_check(&xi).unwrap());
    }

    #[test]
    fn a2_measure_failures_break_c2(seed in any::<u64>()) {
        let m = regular(seed);
        let mut rng = gen::rng_for(seed);
        for broken in [
            gen::drop_lifted_edge(&mut rng, &m),
            gen::duplicate_lifted_edge(&mut rng, &m),
            gen::perturb_weight(&mut rng, &m),
        ].into_iter().flatten() {
            let report = CorrMorphism::build(broken).unwrap().check_covariance().unwrap();
            prop_assert!(!report.c2.passed());
        }
    }

    #[test]
    fn a3_only_mutants_keep_c1_c2_and_lose_c3(seed in any::<u64>()) {
        let m = regular(seed);
        if let Some(s) = gen::add_sink_over_regular(&mut gen::rng_for(seed), &m) {
            let report = CorrMorphism::build(s).unwrap().check_covariance().unwrap();
            prop_assert!(report.is_correspondence_morphism());
            prop_assert!(report.c3.witness().is_some());
        }
    }

    #[test]
    fn mu1_super_ignores_the_decomposition(seed in any::<u64>()) {
        let m = regular(seed);
        let cm = CorrMorphism::build(m.clone()).unwrap();
        let x = QuiverCorrespondence::new(m.cod());
        let t = gen::random_operator(&mut gen::rng_for(seed), m.cod());
        let by_entries = cm.push_rank_one_sum(&x.rank_one_decompose(&t).unwrap()).unwrap();
        let by_columns = cm.push_rank_one_sum(&x.rank_one_decompose_by_columns(&t).unwrap()).unwrap();
        prop_assert_eq!(by_entries, by_columns);
    }

    #[test]
    fn factor_maps_are_regular_morphisms(seed in any::<u64>()) {
        let m = mutant(seed, Weights::Counting);
        let factor = check_factor_map(&m).unwrap();
        let regular = m.check_regular().unwrap();
        prop_assert!(equivalence_check(&m).unwrap());
        prop_assert_eq!(factor.f2_holds(), regular.a2_holds());
        prop_assert_eq!(factor.regular_factor_holds(), regular.a3_holds());
        // lift counts are the pushforward masses
        for f2 in &factor.f2 {
            let v = m.dom().vertex(&f2.vertex).unwrap();
            let x = m.cod().edge(&f2.edge).unwrap();
            let mass = m.pushforward_at(v).get(&x).cloned().unwrap_or_default();
            prop_assert_eq!(mass, num_rational::BigRational::from_integer(f2.preimages.into()));
        }
    }

    #[test]
    fn generated_morphisms_round_trip_through_json(seed in any::<u64>()) {
        let m = mutant(seed, Weights::Pool);
        let text = serde_json::to_string(&m.to_data()).unwrap();
        let back: MorphismData = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.build().unwrap(), m);
    }
}
