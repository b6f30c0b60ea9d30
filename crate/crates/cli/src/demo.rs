//! Built-in demonstrations: the single-qubit gap, environment-induced
//! bivalence, and the commuting (classical) limit.

use qprop::composition::{
    build_environment_scenario, build_sigma_a, induced_bivalence, member_name, stability_filter, tensor_subspace,
    DEFAULT_DIMENSION_CAP,
};
use qprop::context::{check_distributivity, ElementSet};
use qprop::spin::{self, Axis, Sign};
use qprop::valuation::{evaluate_disjunction_with_negation, negation_of};
use qprop::{
    commutator, lattice_of, observable_commutator, paste_sublattice, truth_table, Context, Error,
    LatticeCollection, Model, Proposition, Subspace, TruthValue, ValuationInput,
};

use crate::report::{bivalence_lines, row_lines, table, DemoReport, Row, Section};

fn section(title: &str, lines: Vec<String>) -> Section {
    Section {
        title: title.to_string(),
        lines,
    }
}

/// `{0}`, `H`, a proposition name, or `dim-k`.
fn describe(s: &Subspace, named: &[Proposition], eps: f64) -> String {
    if s.is_zero() {
        return "{0}".into();
    }
    if s.is_full() {
        return "H".into();
    }
    named
        .iter()
        .find(|p| p.subspace.approx_eq(s, eps))
        .map(|p| p.name.clone())
        .unwrap_or_else(|| format!("dim-{}", s.dim()))
}

fn axis_prop(axis: Axis, sign: Sign, prefix: &str) -> Proposition {
    Proposition::new(format!("P_{prefix}{axis}{}", sign.symbol()), spin::ray(axis, sign))
}

fn rows(table: &[(String, TruthValue)]) -> Vec<Row> {
    table.iter().map(|(n, v)| Row::new(n.clone(), *v)).collect()
}

fn fmt_norm(x: f64) -> String {
    // avoid "-0.000000" and roundoff noise in fixed output
    if x.abs() < 1e-12 {
        "0".into()
    } else {
        format!("{x:.6}")
    }
}

fn lattice_lines(coll: &LatticeCollection, named: &[Proposition], eps: f64) -> Vec<String> {
    coll.lattices()
        .iter()
        .map(|l| {
            let els: Vec<String> = l.elements().iter().map(|e| describe(e, named, eps)).collect();
            format!("L({}) = {{{}}}", l.label(), els.join(", "))
        })
        .collect()
}

pub fn intro(eps: f64) -> Result<DemoReport, Error> {
    let ctxs = [spin::context(Axis::Z, ""), spin::context(Axis::X, "")];
    let coll = LatticeCollection::from_contexts(2, &ctxs, eps)?;
    let props: Vec<Proposition> = [Axis::Z, Axis::X]
        .into_iter()
        .flat_map(|a| [Sign::Plus, Sign::Minus].map(|s| axis_prop(a, s, "")))
        .collect();
    let input = ValuationInput::new(spin::state(Axis::Z, Sign::Plus), spin::ray(Axis::Z, Sign::Plus), coll.clone(), eps)?;

    let mut sections = vec![section(
        "contexts and their lattices",
        lattice_lines(&coll, &props, eps),
    )];

    let mut vals = truth_table(&input, &props)?;
    let x_plus = &props[2];
    vals.push((
        format!("{0} ∨ {1}", x_plus.name, negation_of(x_plus).name),
        evaluate_disjunction_with_negation(&input, x_plus)?,
    ));
    let mut lines = vec!["state [1, 0], home ran(P_z+)".to_string()];
    lines.extend(row_lines(&rows(&vals)));
    sections.push(section("valuation", lines));

    let sub = paste_sublattice(&coll, eps);
    let (a, b, c) = (&props[0].subspace, &props[2].subspace, &props[3].subspace);
    let r = check_distributivity(&sub, a, b, c, eps)?;
    sections.push(section(
        "distributivity with a = P_z+, b = P_x+, c = P_x−",
        vec![
            format!("a ∧ (b ∨ c)       = {}", describe(&r.lhs, &props, eps)),
            format!("(a ∧ b) ∨ (a ∧ c) = {}", describe(&r.rhs, &props, eps)),
            format!("equal: {}", r.holds),
        ],
    ));

    let mut cells = vec![std::iter::once(String::new())
        .chain(props.iter().map(|p| p.name.clone()))
        .collect::<Vec<_>>()];
    for p in &props {
        let mut row = vec![p.name.clone()];
        for q in &props {
            let commutes = p.subspace.commutes_with(&q.subspace, eps)?;
            let norm = commutator(&p.subspace.projector(), &q.subspace.projector())?.frobenius_norm();
            row.push(format!("{} {}", if commutes { "C" } else { "·" }, fmt_norm(norm)));
        }
        cells.push(row);
    }
    let mut lines = vec!["C = subspaces commute; number = ‖[P, Q]‖_F".to_string()];
    lines.extend(table(&cells));
    sections.push(section("commutativity", lines));

    Ok(DemoReport {
        kind: "demo",
        demo: "intro".into(),
        sections,
    })
}

fn system_contexts() -> Vec<Context> {
    vec![spin::context(Axis::Z, "S"), spin::context(Axis::X, "S")]
}

fn env_model(n_env: usize, eps: f64) -> Result<Model, Error> {
    build_environment_scenario(n_env, 1, &system_contexts(), Axis::Z, DEFAULT_DIMENSION_CAP)?
        .resolve(eps)
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

fn bivalence_reports(model: &Model) -> Result<Vec<qprop::composition::BivalenceReport>, Error> {
    let env = model.environment.as_ref().expect("generated scenarios have an environment");
    env.queries
        .iter()
        .map(|q| induced_bivalence(model, &q.system_proposition, &q.env_proposition))
        .collect()
}

pub fn environment(eps: f64) -> Result<DemoReport, Error> {
    let sigma_a = build_sigma_a();
    let mut lines = vec![format!("{} is a valid context with {} members:", sigma_a.label(), sigma_a.len())];
    let names = [
        "P_Sz+∧P_1z−",
        "P_Sz−∧P_1z−",
        "P_Sx+∧P_1z+",
        "P_Sx−∧P_1z+",
    ];
    for (n, p) in names.iter().zip(sigma_a.projectors()) {
        lines.push(format!("  {n}  rank {}", p.rank()));
    }
    lines.push(format!("L({}) has {} elements", sigma_a.label(), lattice_of(&sigma_a, eps)?.len()));
    let mut sections = vec![section("composite context", lines)];

    let home = tensor_subspace(&spin::ray(Axis::Z, Sign::Plus), &spin::ray(Axis::Z, Sign::Minus));
    let conj = tensor_subspace(&spin::ray(Axis::X, Sign::Plus), &spin::ray(Axis::Z, Sign::Plus));
    let meet = home.meet(&conj, eps)?;
    sections.push(section(
        "meet",
        vec![format!(
            "(P_Sz+∧P_1z−) ∧ (P_Sx+∧P_1z+) = {}",
            if meet.is_zero() { "{0}".to_string() } else { format!("dim-{}", meet.dim()) }
        )],
    ));

    let model = env_model(1, eps)?;
    let env = model.environment.as_ref().expect("environment");
    let isolated = truth_table(&env.system.evaluation_input()?, &env.system.evaluation_propositions())?;
    let mut lines = vec!["state Ψ = |Sz+⟩ with contexts Σ_Sz, Σ_Sx".to_string()];
    lines.extend(row_lines(&rows(&isolated)));
    sections.push(section("isolated system", lines));

    let composite = truth_table(&model.evaluation_input()?, &model.evaluation_propositions())?;
    let mut lines = vec!["state Ψ⊗ε′ = |Sz+⟩|1z−⟩, home ran(P_Sz+∧P_1z−)".to_string()];
    lines.extend(row_lines(&rows(&composite)));
    sections.push(section("composite valuation", lines));

    let lines = bivalence_reports(&model)?.iter().flat_map(bivalence_lines).collect();
    sections.push(section("environment-induced bivalence", lines));

    let mut cells = vec![vec![
        "n_env".to_string(),
        "dimension".to_string(),
        "spliced context".to_string(),
        "statuses".to_string(),
    ]];
    for n in 1..=3 {
        let m = env_model(n, eps)?;
        let env = m.environment.as_ref().expect("environment");
        let statuses: Vec<String> = bivalence_reports(&m)?
            .iter()
            .map(|b| format!("{} {:?}", b.proposition, b.post_status))
            .collect();
        cells.push(vec![
            n.to_string(),
            m.dimension.to_string(),
            format!("{} ({} members)", env.composite_context, m.context(&env.composite_context).map_or(0, Context::len)),
            statuses.join(", "),
        ]);
    }
    sections.push(section("environment size sweep", table(&cells)));

    let x_env = Context::new(
        "Σ_Sz⊗Σ_1x",
        [Sign::Plus, Sign::Minus]
            .into_iter()
            .flat_map(|s| {
                [Sign::Plus, Sign::Minus]
                    .into_iter()
                    .map(move |t| spin::projector(Axis::Z, s).kron(&spin::projector(Axis::X, t)))
            })
            .collect(),
        eps,
    )?;
    let mut candidates = model.contexts.clone();
    candidates.push(x_env);
    let outcome = stability_filter(&env.space, Axis::Z, &candidates, 1e-8);
    let mut lines: Vec<String> = outcome.retained.iter().map(|c| format!("stable    {}", c.label())).collect();
    lines.extend(outcome.rejected.iter().map(|r| format!("rejected  {}: {}", r.label, r.reason)));
    sections.push(section("pointer-basis stability", lines));

    Ok(DemoReport {
        kind: "demo",
        demo: "environment".into(),
        sections,
    })
}

pub fn classical_limit(eps: f64) -> Result<DemoReport, Error> {
    let mut cells = vec![std::iter::once(String::new())
        .chain(Axis::ALL.iter().map(|a| format!("σ_{a}")))
        .collect::<Vec<_>>()];
    let mut worst: f64 = 0.0;
    for a in Axis::ALL {
        let mut row = vec![format!("σ_{a}")];
        for b in Axis::ALL {
            let c = observable_commutator(&spin::spectral_decomposition(a), &spin::spectral_decomposition(b), eps)?;
            let direct = spin::pauli(a)
                .matmul(&spin::pauli(b))?
                .sub(&spin::pauli(b).matmul(&spin::pauli(a))?)?;
            worst = worst.max(c.sub(&direct)?.max_abs());
            row.push(fmt_norm(c.frobenius_norm()));
        }
        cells.push(row);
    }
    let mut lines = vec!["‖[A, B]‖_F from spectral decompositions".to_string()];
    lines.extend(table(&cells));
    lines.push(format!(
        "agreement with directly assembled Pauli matrices: {}",
        if worst <= 1e-12 { "within 1e-12" } else { "FAILED" }
    ));
    let mut sections = vec![section("observable commutators", lines)];

    let ctxs: Vec<Context> = Axis::ALL.iter().map(|a| spin::context(*a, "")).collect();
    let coll = LatticeCollection::from_contexts(2, &ctxs, eps)?;
    let props: Vec<Proposition> = Axis::ALL
        .into_iter()
        .flat_map(|a| [Sign::Plus, Sign::Minus].map(|s| axis_prop(a, s, "")))
        .collect();
    let sub = paste_sublattice(&coll, eps);
    let mut lines = vec![format!("{} elements", sub.elements().len())];
    for (i, e) in sub.elements().iter().enumerate() {
        lines.push(format!("  {:<5} blocks {}", describe(e, &props, eps), sub.blocks_of(i).join(", ")));
    }
    sections.push(section("pasted sublattice of three qubit contexts", lines));

    let input = ValuationInput::new(spin::state(Axis::Z, Sign::Plus), spin::ray(Axis::Z, Sign::Plus), coll, eps)?;
    let vals = truth_table(&input, &props)?;
    let gaps = vals.iter().filter(|(_, v)| *v == TruthValue::Gap).count();
    let mut lines = row_lines(&rows(&vals));
    lines.push(format!("{gaps} of {} propositions have no value", vals.len()));
    sections.push(section("noncommuting contexts in state |z+⟩", lines));

    // two commuting observables on two qubits and their common refinement
    let id = Subspace::full(2);
    let lift = |axis_first: bool, sign: Sign| {
        let r = spin::ray(Axis::Z, sign);
        if axis_first {
            tensor_subspace(&r, &id)
        } else {
            tensor_subspace(&id, &r)
        }
    };
    let a_ctx = Context::from_ranges("Σ_A1", &[lift(true, Sign::Plus), lift(true, Sign::Minus)], eps)?;
    let b_ctx = Context::from_ranges("Σ_B1", &[lift(false, Sign::Plus), lift(false, Sign::Minus)], eps)?;
    let joint_ranges: Vec<Subspace> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .flat_map(|s| [Sign::Plus, Sign::Minus].map(move |t| tensor_subspace(&spin::ray(Axis::Z, s), &spin::ray(Axis::Z, t))))
        .collect();
    let joint = Context::from_ranges("Σ_AB", &joint_ranges, eps)?;
    let c = commutator(&a_ctx.projectors()[0], &b_ctx.projectors()[0])?;
    let two_props: Vec<Proposition> = [(&a_ctx, "A"), (&b_ctx, "B")]
        .into_iter()
        .flat_map(|(ctx, tag)| {
            ctx.ranges()
                .iter()
                .enumerate()
                .map(move |(i, r)| Proposition::new(format!("{tag}{}", if i == 0 { '+' } else { '−' }), r.clone()))
        })
        .collect();
    let coll = LatticeCollection::from_contexts(4, &[a_ctx.clone(), b_ctx.clone(), joint.clone()], eps)?;
    let mut lines = vec![format!("‖[P_A+, P_B+]‖_F = {}", fmt_norm(c.frobenius_norm()))];
    for (i, home) in joint.ranges().iter().enumerate() {
        let psi = qprop::StateVector::new(home.basis().column(0))?;
        let input = ValuationInput::new(psi, home.clone(), coll.clone(), eps)?;
        let vals = truth_table(&input, &two_props)?;
        let rendered: Vec<String> = vals.iter().map(|(n, v)| format!("{n}={}", v.rendered())).collect();
        lines.push(format!("home {}: {}", member_name(&joint, i), rendered.join(" ")));
    }
    lines.push("every proposition is determinate once the common refinement is a context".to_string());
    sections.push(section("commuting observables", lines));

    Ok(DemoReport {
        kind: "demo",
        demo: "classical-limit".into(),
        sections,
    })
}
