//! Wandering-vector invariants: the core-reduction sweep, certificate
//! replay, monotonicity and the constructive searches.

mod common;

use common::{load_rep_fixture, rep_fixture_names};
use kg2_core::wandering::{violations_at, Condition, WanderingSearch, WanderingStatus};
use kg2_core::{
    check_conditions, classify, dilate, find_wandering, is_wandering, left_regular_graph,
    NormalWord, RepTag, Theta2Graph,
};

/// Condition sweep caps sized so the W4 scan keeps full forward room.
fn safe_cap(d: &kg2_core::DilationResult, v: usize) -> usize {
    (d.depth() - d.distance(v)) as usize
}

// Conditions live on the core: a condition fires at some safe vertex of the
// truncation iff it fires at some core vertex.
#[test]
fn conditions_reduce_to_the_core() {
    for name in rep_fixture_names() {
        let d = dilate(&load_rep_fixture(name), 4).unwrap();
        let core = d.core();
        for condition in [Condition::W1, Condition::W2, Condition::W3, Condition::W4] {
            let fires_at = |v: usize, cap: usize| {
                violations_at(&d, v, cap).0.iter().any(|w| w.condition == condition)
            };
            let on_core = core.iter().any(|&v| fires_at(v, 4));
            let anywhere = (0..d.vertex_count()).any(|v| {
                !d.is_frontier(v) && safe_cap(&d, v) >= 1 && fires_at(v, safe_cap(&d, v).min(4))
            });
            assert_eq!(
                on_core, anywhere,
                "{name}: condition {condition:?} fires off-core xor on-core"
            );
        }
    }
}

#[test]
fn violation_witnesses_replay() {
    for name in rep_fixture_names() {
        let d = dilate(&load_rep_fixture(name), 4).unwrap();
        for v in 0..d.vertex_count() {
            if d.is_frontier(v) {
                continue;
            }
            let (violations, _) = violations_at(&d, v, 3);
            for violation in &violations {
                assert!(
                    kg2_core::wandering::replay(&d, v, violation),
                    "{name}: witness {violation:?} fails to replay at {}",
                    d.graph().name(v)
                );
            }
        }
    }
}

#[test]
fn wandering_is_monotone_in_depth() {
    let d = dilate(&load_rep_fixture("rep-one-vertex-identity.json"), 4).unwrap();
    let core = d.core()[0];
    let zeta = d
        .follow(core, &NormalWord::from_parts(vec![2], vec![2], d.theta()).unwrap())
        .unwrap()
        .0;
    let at_two = is_wandering(&d, zeta, 2).unwrap();
    assert!(at_two.wandering);
    for len in (0..=2).rev() {
        assert!(is_wandering(&d, zeta, len).unwrap().wandering);
    }
}

#[test]
fn ring_sibling_construction_yields_wandering_vectors() {
    // the constructive route: a blue ring off the core plus a sibling word
    let d = dilate(&load_rep_fixture("rep-one-vertex-identity.json"), 4).unwrap();
    let core = d.core()[0];
    let b = d
        .follow(core, &NormalWord::from_parts(vec![], vec![2], d.theta()).unwrap())
        .unwrap()
        .0;
    // b carries the blue unit ring; its sibling exit S_2 b must be wandering
    let report = check_conditions(&d, b, 1).unwrap();
    assert_eq!(report.status, WanderingStatus::Violates);
    let zeta = d.graph().blue_edge(2, b).unwrap().0;
    assert!(is_wandering(&d, zeta, 2).unwrap().wandering);
}

#[test]
fn find_wandering_on_the_aperiodic_type_1_example() {
    let d = dilate(&load_rep_fixture("rep-one-vertex-identity.json"), 4).unwrap();
    let class = classify(&d, 2).unwrap();
    assert_eq!(class.tag, RepTag::Type1);
    match find_wandering(&d, &class, 2).unwrap() {
        WanderingSearch::Found { certificate } => {
            assert!(certificate.wandering);
            // the vertex S_2 T_2 ξ0, reached red-then-blue from the core
            let core = d.core()[0];
            let zeta = d
                .follow(core, &NormalWord::from_parts(vec![2], vec![2], d.theta()).unwrap())
                .unwrap()
                .0;
            assert_eq!(certificate.vertex, d.graph().name(zeta));
        }
        other => panic!("expected a wandering vertex, got {other:?}"),
    }
}

#[test]
fn find_wandering_reports_the_periodic_obstruction() {
    let d = dilate(&load_rep_fixture("rep-self-pair-flip.json"), 3).unwrap();
    let class = classify(&d, 2).unwrap();
    assert_eq!(class.tag, RepTag::Type1);
    match find_wandering(&d, &class, 2).unwrap() {
        WanderingSearch::NoneByPeriodicity { witness, verified } => {
            assert_eq!((witness.a, witness.b), (1, 1));
            assert!(verified);
        }
        other => panic!("expected the periodicity obstruction, got {other:?}"),
    }
}

#[test]
fn find_wandering_on_the_left_regular_model() {
    let d = left_regular_graph(&Theta2Graph::identity(2, 2), 3);
    let class = kg2_core::RepClass { tag: RepTag::UnknownAtDepth, witness: None, word_bound: 2 };
    match find_wandering(&d, &class, 2).unwrap() {
        WanderingSearch::Found { certificate } => {
            // the first enumerated vertex is the identity word
            assert_eq!(certificate.vertex, "e() f()");
            assert!(certificate.wandering);
        }
        other => panic!("expected the first basis vertex, got {other:?}"),
    }
}

#[test]
fn synthetic_class_tags_fail_closed() {
    // feeding a wrong tag never panics: the constructive route verifies its
    // candidates and falls back to an inconclusive answer
    let d = dilate(&load_rep_fixture("rep-one-vertex-identity.json"), 4).unwrap();
    let wrong = kg2_core::RepClass {
        tag: RepTag::Type2a,
        witness: Some(kg2_core::classify::ClassWitness {
            vertex: "xi0".to_string(),
            u: vec![1],
            v: vec![],
        }),
        word_bound: 2,
    };
    match find_wandering(&d, &wrong, 2) {
        Err(kg2_core::wandering::WanderingError::Inconclusive(_)) => {}
        other => panic!("the sibling of a core ring is not wandering here, got {other:?}"),
    }
}

#[test]
fn twisted_pair_rows_coincide_for_nontrivial_alpha() {
    use kg2_core::{twisted_pair, OneColourGraph};
    use num_complex::Complex64;
    // a two-vertex one-colour swap, twisted by α = (1 2): red 2 duplicates
    // blue 1, so the unit-period rows coincide with γ = α⁻¹
    let mut seed = OneColourGraph::new(2);
    let x = seed.add_vertex("x").unwrap();
    let y = seed.add_vertex("y").unwrap();
    let one = Complex64::new(1.0, 0.0);
    seed.set_edge(1, x, y, one).unwrap();
    seed.set_edge(1, y, x, one).unwrap();
    let rep = twisted_pair(&seed, &[2, 1]).unwrap();
    let d = dilate(&rep, 3).unwrap();
    let witness = match kg2_core::find_period(d.theta(), 4, 4, 4096).unwrap() {
        kg2_core::Periodicity::Periodic(w) => w,
        other => panic!("twisted pairs are periodic, got {other:?}"),
    };
    assert_eq!((witness.a, witness.b), (1, 1));
    assert_eq!(witness.gamma_of(&[1]), Some(&vec![2]));
    assert!(kg2_core::verify_no_wandering_periodic(&d, &witness).unwrap());
}

#[test]
fn phase_seed_keeps_the_same_wandering_structure() {
    // unimodular scalars never affect ray collisions
    let plain = dilate(&load_rep_fixture("rep-one-vertex-identity.json"), 3).unwrap();
    let phased = dilate(&load_rep_fixture("rep-one-vertex-identity-phase.json"), 3).unwrap();
    assert_eq!(plain.vertex_count(), phased.vertex_count());
    for v in 0..plain.vertex_count() {
        if plain.is_frontier(v) {
            continue;
        }
        let a = violations_at(&plain, v, 2).0;
        let b = violations_at(&phased, v, 2).0;
        assert_eq!(a, b, "vertex {}", plain.graph().name(v));
    }
}
