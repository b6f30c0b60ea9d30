mod common;

use std::path::PathBuf;

use common::rng;
use proptest::prelude::*;
use qprop::composition::{build_environment_scenario, induced_bivalence, PostStatus, DEFAULT_DIMENSION_CAP};
use qprop::random;
use qprop::scenario::{
    parse_unvalidated, ComplexLit, ContextSpec, EvaluationSpec, PropositionSpec, StateSpec, SubspaceSpec,
    SCHEMA_VERSION,
};
use qprop::spin::{self, Axis};
use qprop::{parse_scenario, truth_table, Model, Scenario, ScenarioError, Subspace, TruthValue, DEFAULT_EPS};
use rand::Rng;

const EPS: f64 = DEFAULT_EPS;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn values(model: &Model) -> Vec<(String, TruthValue)> {
    truth_table(&model.evaluation_input().unwrap(), &model.evaluation_propositions()).unwrap()
}

fn assert_same_model(a: &Model, b: &Model) {
    assert_eq!(a.dimension, b.dimension);
    assert_eq!(a.states.len(), b.states.len());
    for (x, y) in a.states.iter().zip(&b.states) {
        assert_eq!(x.name, y.name);
        assert!(x.state.span().approx_eq(&y.state.span(), 1e-9));
        assert!(x.home.approx_eq(&y.home, 1e-9), "home of {}", x.name);
    }
    assert_eq!(a.contexts.len(), b.contexts.len());
    for (x, y) in a.contexts.iter().zip(&b.contexts) {
        assert_eq!(x.label(), y.label());
        assert_eq!(x.len(), y.len(), "{}", x.label());
        for (p, q) in x.ranges().iter().zip(y.ranges()) {
            assert!(p.approx_eq(q, 1e-9), "member of {}", x.label());
        }
    }
    assert_eq!(a.propositions.len(), b.propositions.len());
    for (x, y) in a.propositions.iter().zip(&b.propositions) {
        assert_eq!(x.name, y.name);
        assert!(x.subspace.approx_eq(&y.subspace, 1e-9), "{}", x.name);
    }
    assert_eq!(
        a.evaluation.as_ref().map(|e| (&e.state, &e.propositions, &e.context)),
        b.evaluation.as_ref().map(|e| (&e.state, &e.propositions, &e.context))
    );
    match (&a.environment, &b.environment) {
        (None, None) => {}
        (Some(x), Some(y)) => {
            assert_eq!(x.space, y.space);
            assert_eq!((x.axis, x.splice_index, &x.composite_context), (y.axis, y.splice_index, &y.composite_context));
            assert_eq!(x.queries, y.queries);
            for (p, q) in x.env_propositions.iter().zip(&y.env_propositions) {
                assert_eq!(p.name, q.name);
                assert!(p.subspace.approx_eq(&q.subspace, 1e-9));
            }
            assert_same_model(&x.system, &y.system);
        }
        _ => panic!("environment present in only one model"),
    }
}

#[test]
fn intro_fixture_values() {
    let m = parse_scenario(&fixture("intro_qubit.json")).unwrap().resolve(EPS).unwrap();
    let got = values(&m);
    let expected = [
        ("P_z+", TruthValue::True),
        ("P_z−", TruthValue::False),
        ("P_x+", TruthValue::Gap),
        ("P_x−", TruthValue::Gap),
    ];
    assert_eq!(got, expected.map(|(n, v)| (n.to_string(), v)).to_vec());
}

#[test]
fn classical_limit_fixture_values() {
    let m = parse_scenario(&fixture("classical_limit.json")).unwrap().resolve(EPS).unwrap();
    let got: Vec<TruthValue> = values(&m).into_iter().map(|(_, v)| v).collect();
    use TruthValue::*;
    assert_eq!(got, vec![True, False, Gap, Gap, Gap, Gap]);
}

#[test]
fn environment_fixture_matches_generator() {
    let from_file = parse_scenario(&fixture("env_two_qubit.json")).unwrap().resolve(EPS).unwrap();
    let ctxs = [spin::context(Axis::Z, "S"), spin::context(Axis::X, "S")];
    let generated = build_environment_scenario(1, 1, &ctxs, Axis::Z, DEFAULT_DIMENSION_CAP)
        .unwrap()
        .resolve(EPS)
        .unwrap();
    assert_same_model(&from_file, &generated);
    let report = induced_bivalence(&from_file, "P_Sx+", "P_1z+").unwrap();
    assert_eq!(report.witness_lattice, "Σ_A");
    assert_eq!(report.post_status, PostStatus::Bivalent);
}

#[test]
fn fixtures_round_trip() {
    for name in ["intro_qubit.json", "classical_limit.json", "env_two_qubit.json"] {
        let s = parse_scenario(&fixture(name)).unwrap();
        assert_eq!(parse_scenario(&s.to_json_pretty()).unwrap(), s, "{name}");
    }
    for n in 1..=3 {
        let ctxs = [spin::context(Axis::Z, "S"), spin::context(Axis::X, "S")];
        let s = build_environment_scenario(n, n, &ctxs, Axis::Z, DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(parse_scenario(&s.to_json_pretty()).unwrap(), s);
    }
}

#[test]
fn fixtures_pass_check() {
    for name in ["intro_qubit.json", "classical_limit.json", "env_two_qubit.json"] {
        let items = parse_unvalidated(&fixture(name)).unwrap().check(EPS);
        assert!(items.iter().all(|i| i.ok), "{name}: {items:?}");
    }
}

#[test]
fn version_and_unknown_fields_are_rejected() {
    let text = fixture("intro_qubit.json");
    assert!(matches!(
        parse_scenario(&text.replacen("\"schema_version\": 1", "\"schema_version\": 7", 1)),
        Err(ScenarioError::UnsupportedVersion { found: 7 })
    ));
    assert!(matches!(
        parse_scenario(&text.replacen("\"dimension\"", "\"colour\": 1, \"dimension\"", 1)),
        Err(ScenarioError::Syntax { .. })
    ));
}

fn span_spec(s: &Subspace) -> SubspaceSpec {
    SubspaceSpec::Span(
        s.basis_vectors()
            .into_iter()
            .map(|v| v.into_iter().map(ComplexLit::from).collect())
            .collect(),
    )
}

fn random_scenario(seed: u64, d: usize) -> Scenario {
    let mut r = rng(seed);
    let ctxs: Vec<_> = (0..r.random_range(1..=3))
        .map(|i| random::context(&mut r, &format!("Σ_{i}"), d))
        .collect();
    let home = ctxs[0].ranges()[0].clone();
    let amps = home.basis().apply(&random::gaussian_vector(&mut r, home.dim())).unwrap();
    let propositions: Vec<PropositionSpec> = (0..r.random_range(0..4))
        .map(|i| PropositionSpec {
            name: format!("P{i}"),
            subspace: span_spec(&random::any_subspace(&mut r, d)),
        })
        .collect();
    Scenario {
        schema_version: SCHEMA_VERSION,
        name: Some(format!("random {seed}")),
        dimension: d,
        eps: if r.random_bool(0.5) { Some(1e-8) } else { None },
        states: vec![StateSpec {
            name: "ψ".into(),
            amplitudes: amps.into_iter().map(ComplexLit::from).collect(),
            home: Some(span_spec(&home)),
        }],
        contexts: ctxs
            .iter()
            .map(|c| ContextSpec {
                label: c.label().to_string(),
                projectors: c.ranges().iter().map(span_spec).collect(),
            })
            .collect(),
        evaluation: Some(EvaluationSpec {
            state: "ψ".into(),
            propositions: propositions.iter().map(|p| p.name.clone()).collect(),
            context: None,
        }),
        propositions,
        environment: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_scenarios_round_trip(seed in any::<u64>(), d in 2usize..=4) {
        let s = random_scenario(seed, d);
        let text = s.to_json_pretty();
        let parsed = parse_unvalidated(&text).unwrap();
        prop_assert_eq!(&parsed, &s);
        prop_assert_eq!(parsed.to_json_pretty(), text);
        prop_assert!(s.resolve(EPS).is_ok());
    }
}
