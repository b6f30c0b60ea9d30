//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::path::{Path, PathBuf};
use std::process::Command;

use nalgebra::DMatrix;
use qprop::composition::{build_sigma_a, induced_bivalence, tensor_subspace, PostStatus};
use qprop::context::lattice_law_violations;
use qprop::diagram::HasseGraph;
use qprop::linalg::{ComplexMatrix, C64};
use qprop::spin::{self, Axis, Sign};
use qprop::valuation::{context_valuation_profile, evaluate_disjunction_with_negation};
use qprop::{
    check_distributivity, commutator, evaluate, lattice_of, observable_commutator, paste_sublattice, random, Context,
    LatticeCollection, Model, Proposition, StateVector, Subspace, TruthValue, ValuationInput, DEFAULT_EPS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = DEFAULT_EPS;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect()
}

fn load(name: &str) -> Result<Model, String> {
    let text = std::fs::read_to_string(fixture(name)).map_err(err)?;
    qprop::parse_scenario(&text).map_err(err)?.resolve(EPS).map_err(err)
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).expect("golden file")
}

fn ray(axis: Axis, sign: Sign) -> Proposition {
    Proposition::new(format!("P_{axis}{}", sign.symbol()), spin::ray(axis, sign))
}

fn state_in(r: &mut ChaCha8Rng, home: &Subspace) -> StateVector {
    StateVector::new(home.basis().apply(&random::gaussian_vector(r, home.dim())).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let coll = LatticeCollection::from_contexts(2, &[spin::context(Axis::Z, ""), spin::context(Axis::X, "")], EPS)
        .map_err(err)?;
    let psi = StateVector::from_real(&[1.0, 0.0]).map_err(err)?;
    let input = ValuationInput::with_default_home(psi, coll, EPS).map_err(err)?;
    let expected = [
        (ray(Axis::Z, Sign::Plus), TruthValue::True),
        (ray(Axis::Z, Sign::Minus), TruthValue::False),
        (ray(Axis::X, Sign::Plus), TruthValue::Gap),
        (ray(Axis::X, Sign::Minus), TruthValue::Gap),
    ];
    for (p, v) in &expected {
        let got = evaluate(&input, p).map_err(err)?;
        ensure(got == *v, format!("{} = {got}, expected {v}", p.name))?;
    }
    let d = evaluate_disjunction_with_negation(&input, &expected[2].0).map_err(err)?;
    ensure(d == TruthValue::True, format!("Q ∨ ¬Q = {d}"))?;
    Ok("P_z+ = 1, P_z− = 0, P_x± = 0/0, P_x+ ∨ ¬P_x+ = 1".into())
}

fn criterion_2() -> Outcome {
    let coll = LatticeCollection::from_contexts(2, &[spin::context(Axis::Z, ""), spin::context(Axis::X, "")], EPS)
        .map_err(err)?;
    let sub = paste_sublattice(&coll, EPS);
    let a = spin::ray(Axis::Z, Sign::Plus);
    let r = check_distributivity(
        &sub,
        &a,
        &spin::ray(Axis::X, Sign::Plus),
        &spin::ray(Axis::X, Sign::Minus),
        EPS,
    )
    .map_err(err)?;
    ensure(r.lhs.approx_eq(&a, EPS), "a ∧ (b ∨ c) is not ran(P_z+)")?;
    ensure(r.rhs.is_zero(), "(a ∧ b) ∨ (a ∧ c) is not {0}")?;
    ensure(!r.holds, "equality flag is set")?;
    Ok("a ∧ (b ∨ c) = ran(P_z+), (a ∧ b) ∨ (a ∧ c) = {0}".into())
}

fn criterion_3() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    let mut profiles = 0;
    for i in 0..100 {
        let d = 2 + i % 4;
        let ctx = random::context(&mut r, "Σ", d);
        let coll = LatticeCollection::from_contexts(d, std::slice::from_ref(&ctx), EPS).map_err(err)?;
        for home in ctx.ranges() {
            let input = ValuationInput::new(state_in(&mut r, home), home.clone(), coll.clone(), 1e-8).map_err(err)?;
            let p = context_valuation_profile(&input, &ctx).map_err(err)?;
            let trues = p.values().filter(|v| **v == TruthValue::True).count();
            let gaps = p.values().filter(|v| **v == TruthValue::Gap).count();
            ensure(trues == 1 && gaps == 0, format!("context #{i}: {trues} true, {gaps} gaps"))?;
            profiles += 1;
        }
    }
    Ok(format!("100 contexts, {profiles} home choices, one true and no gaps each"))
}

fn criterion_4() -> Outcome {
    let sigma_a = build_sigma_a();
    Context::new("Σ_A", sigma_a.projectors().to_vec(), EPS).map_err(err)?;
    let home = tensor_subspace(&spin::ray(Axis::Z, Sign::Plus), &spin::ray(Axis::Z, Sign::Minus));
    let conj = tensor_subspace(&spin::ray(Axis::X, Sign::Plus), &spin::ray(Axis::Z, Sign::Plus));
    ensure(home.meet(&conj, EPS).map_err(err)?.is_zero(), "meet is not {0}")?;
    let model = load("env_two_qubit.json")?;
    let input = model.evaluation_input().map_err(err)?;
    let v = evaluate(&input, &Proposition::new("P_Sx+∧P_1z+", conj)).map_err(err)?;
    ensure(v == TruthValue::False, format!("conjunction = {v}"))?;
    let b = induced_bivalence(&model, "P_Sx+", "P_1z+").map_err(err)?;
    ensure(b.pre_value == TruthValue::Gap, format!("isolated P_Sx+ = {}", b.pre_value))?;
    ensure(b.post_status == PostStatus::Bivalent, format!("status {:?}", b.post_status))?;
    Ok("Σ_A valid, meet = {0}, conjunction = 0, P_Sx+ gap becomes Bivalent".into())
}

fn criterion_5() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let mut commuting = 0;
    for i in 0..200 {
        let d = 2 + i % 4;
        let (a, b) = match i % 3 {
            0 => {
                let (x, y) = random::commuting_pair(&mut r, d);
                (x.ranges()[0].clone(), y.ranges()[r.random_range(0..y.len())].clone())
            }
            1 => {
                let a = random::any_subspace(&mut r, d);
                let b = if r.random_bool(0.5) { a.complement() } else { Subspace::full(d) };
                (a, b)
            }
            _ => {
                let (ka, kb) = (r.random_range(1..d), r.random_range(1..d));
                (random::subspace(&mut r, d, ka), random::subspace(&mut r, d, kb))
            }
        };
        let lattice = a.commutes_with(&b, EPS).map_err(err)?;
        let norm = commutator(&a.projector(), &b.projector()).map_err(err)?.frobenius_norm();
        ensure(lattice == (norm <= 1e-8), format!("pair #{i}: lattice test {lattice}, ‖[P,Q]‖ = {norm:e}"))?;
        commuting += usize::from(lattice);
    }
    Ok(format!("200 pairs agree ({commuting} commuting)"))
}

fn criterion_6() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    let (mut exhaustive, mut sampled) = (0, 0);
    for i in 0..60 {
        let d = 2 + i % 4;
        let ctx = if i % 10 == 9 {
            // force more than 16 elements
            let basis = random::orthonormal_basis(&mut r, 5);
            random::context_from_basis("Σ_5", &basis, &[1, 1, 1, 1, 1])
        } else {
            random::context(&mut r, "Σ", d)
        };
        let l = lattice_of(&ctx, EPS).map_err(err)?;
        let problems = lattice_law_violations(&l, 1e-8, 1000, i as u64);
        ensure(problems.is_empty(), format!("lattice #{i}: {}", problems.join("; ")))?;
        if l.len() <= 16 {
            exhaustive += 1;
        } else {
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} lattices checked exhaustively, {sampled} on 1000 sampled triples"))
}

fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Null space of `[(I−P_a); (I−P_b)]` from an SVD.
fn meet_oracle(a: &Subspace, b: &Subspace) -> Subspace {
    let d = a.ambient_dim();
    let id = ComplexMatrix::identity(d);
    let mut stacked = DMatrix::<C64>::zeros(2 * d, d);
    stacked
        .view_mut((0, 0), (d, d))
        .copy_from(&to_na(&id.sub(a.projector().matrix()).unwrap()));
    stacked
        .view_mut((d, 0), (d, d))
        .copy_from(&to_na(&id.sub(b.projector().matrix()).unwrap()));
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.unwrap();
    let basis: Vec<Vec<C64>> = (0..d)
        .filter(|&k| svd.singular_values[k] <= 1e-7)
        .map(|k| (0..d).map(|j| v_t[(k, j)].conj()).collect())
        .collect();
    Subspace::from_spanning(d, &basis, EPS).unwrap()
}

fn criterion_7() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(7);
    let mut nontrivial = 0;
    for i in 0..100 {
        let d = 1 + i % 4;
        let (a, b) = if i % 2 == 0 && d >= 2 {
            // share a random direction so the meet is not {0}
            let common = random::gaussian_vector(&mut r, d);
            let mut va = vec![common.clone()];
            let mut vb = vec![common];
            for _ in 0..r.random_range(0..d - 1) {
                va.push(random::gaussian_vector(&mut r, d));
            }
            for _ in 0..r.random_range(0..d - 1) {
                vb.push(random::gaussian_vector(&mut r, d));
            }
            (
                Subspace::from_spanning(d, &va, EPS).map_err(err)?,
                Subspace::from_spanning(d, &vb, EPS).map_err(err)?,
            )
        } else {
            (random::any_subspace(&mut r, d), random::any_subspace(&mut r, d))
        };
        let m = a.meet(&b, EPS).map_err(err)?;
        let o = meet_oracle(&a, &b);
        let same = m.is_contained_in(&o, EPS).map_err(err)? && o.is_contained_in(&m, EPS).map_err(err)?;
        ensure(same, format!("pair #{i}: meet dim {} vs oracle dim {}", m.dim(), o.dim()))?;
        nontrivial += usize::from(!m.is_zero());
    }
    Ok(format!("100 pairs match the SVD null-space oracle ({nontrivial} nonzero meets)"))
}

fn marker_listing(graphs: &[HasseGraph]) -> String {
    let mut out = String::new();
    for g in graphs {
        let mut g = g.clone();
        // unnamed trivial vertices take their fixed values
        for (v, e) in g.vertices.iter_mut().zip(&g.elements) {
            if v.marker == qprop::diagram::Marker::Unvalued && e.is_trivial() {
                v.marker = if e.is_zero() {
                    qprop::diagram::Marker::FalseCircle
                } else {
                    qprop::diagram::Marker::TrueSquare
                };
            }
        }
        out.push_str(&g.title);
        out.push('\n');
        for v in &g.vertices {
            out.push_str(&format!("{} {:?}\n", v.label(), v.marker));
        }
    }
    out
}

/// Edges of a subset-sum lattice must link masks differing in one bit.
fn boolean_edges_ok(g: &HasseGraph) -> bool {
    let n = g.vertices.len();
    let mut expected = Vec::new();
    for u in 0..n {
        for bit in 0..n.trailing_zeros() {
            let v = u | (1 << bit);
            if v != u {
                expected.push((u, v));
            }
        }
    }
    expected.sort_unstable();
    let mut got = g.edges.clone();
    got.sort_unstable();
    got == expected
}

fn criterion_8() -> Outcome {
    let intro = qprop_cli::diagram_graphs(&load("intro_qubit.json")?, false).map_err(err)?;
    let env_model = load("env_two_qubit.json")?;
    let env = qprop_cli::diagram_graphs(&env_model, false).map_err(err)?;
    let system = qprop_cli::diagram_graphs(&env_model.environment.as_ref().unwrap().system, false).map_err(err)?;
    for (name, graphs) in [
        ("intro_markers.txt", &intro),
        ("env_markers.txt", &env),
        ("env_system_markers.txt", &system),
    ] {
        let got = marker_listing(graphs);
        ensure(got == golden(name), format!("{name} differs:\n{got}"))?;
        for g in graphs.iter() {
            ensure(boolean_edges_ok(g), format!("{}: edges are not the Boolean covering relation", g.title))?;
        }
    }
    ensure(env[0].vertices.len() == 16 && env[0].edges.len() == 32, "L(Σ_A) is not 16 nodes / 32 edges")?;
    Ok("intro, isolated-system and L(Σ_A) marker and edge sets match".into())
}

fn criterion_9() -> Outcome {
    let c = observable_commutator(
        &spin::spectral_decomposition(Axis::Z),
        &spin::spectral_decomposition(Axis::X),
        EPS,
    )
    .map_err(err)?;
    let (z, x) = (spin::pauli(Axis::Z), spin::pauli(Axis::X));
    let direct = z.matmul(&x).map_err(err)?.sub(&x.matmul(&z).map_err(err)?).map_err(err)?;
    let diff = c.sub(&direct).map_err(err)?.max_abs();
    ensure(diff <= 1e-12, format!("σz/σx differs by {diff:e}"))?;

    let mut r = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let d = 2 + i % 4;
        let (a, b) = random::commuting_pair(&mut r, d);
        let spec = |ctx: &Context, r: &mut ChaCha8Rng| -> Vec<(f64, qprop::Projector)> {
            ctx.projectors().iter().map(|p| (r.random_range(-3.0..3.0), p.clone())).collect()
        };
        let (sa, sb) = (spec(&a, &mut r), spec(&b, &mut r));
        worst = worst.max(observable_commutator(&sa, &sb, 1e-8).map_err(err)?.max_abs());
    }
    ensure(worst <= 1e-12, format!("commuting families leave {worst:e}"))?;
    Ok(format!("σz/σx agree to {diff:.1e}; commuting families vanish to {worst:.1e}"))
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qprop")).args(args).output().map_err(err)?;
    ensure(out.status.success(), format!("qprop {} exited with {}", args.join(" "), out.status))?;
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let intro = fixture("intro_qubit.json");
    let env = fixture("env_two_qubit.json");
    let paths: Vec<String> = [&intro, &env].iter().map(|p| Path::new(p).display().to_string()).collect();
    let runs: Vec<Vec<&str>> = vec![
        vec!["demo", "intro"],
        vec!["demo", "environment"],
        vec!["demo", "classical-limit"],
        vec!["demo", "intro", "--json"],
        vec!["demo", "environment", "--json"],
        vec!["demo", "classical-limit", "--json"],
        vec!["diagram", &paths[1], "--include-trivials"],
        vec!["diagram", &paths[0], "--pasted", "--cluster-blocks"],
        vec!["eval", &paths[1], "--json"],
    ];
    for args in &runs {
        let (a, b) = (run_bin(args)?, run_bin(args)?);
        ensure(a == b, format!("qprop {} differs between runs", args.join(" ")))?;
        ensure(!a.is_empty(), format!("qprop {} printed nothing", args.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("single-qubit valuation", criterion_1),
        ("distributivity failure", criterion_2),
        ("one true member per context", criterion_3),
        ("environment-induced bivalence", criterion_4),
        ("subspace commutativity vs commutator", criterion_5),
        ("lattice laws", criterion_6),
        ("meet vs null-space oracle", criterion_7),
        ("diagram marker sets", criterion_8),
        ("observable commutator", criterion_9),
        ("demo determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  criterion {:>2}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {:>2}  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
