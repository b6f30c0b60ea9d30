//! Composite systems: tensor products of subspaces and states, the two-qubit
//! context `Σ_A`, scenario generation for a qubit coupled to `N` environment
//! qubits, and the environment-induced bivalence report.

use serde::{Deserialize, Serialize};

use crate::context::{find_common_lattices, Context};
use crate::error::{Error, Result};
use crate::linalg::{kron_vec, ComplexMatrix, C64};
use crate::scenario::{
    BivalenceQuery, ComplexLit, ContextSpec, EnvironmentSpec, EvaluationSpec, Model, PropositionSpec, Scenario,
    StateSpec, SubspaceSpec, SCHEMA_VERSION,
};
use crate::spin::{self, Axis, Sign};
use crate::subspace::{matrix_commutator, Projector, StateVector, Subspace, DEFAULT_EPS};
use crate::valuation::{evaluate, Proposition, TruthValue};

/// Largest total dimension a generated scenario may have.
pub const DEFAULT_DIMENSION_CAP: usize = 1 << 12;

/// Ordered tensor factors, system first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSpace {
    factor_dims: Vec<usize>,
}

impl CompositeSpace {
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(Error::InvalidInput(format!("invalid factor dimensions {factor_dims:?}")));
        }
        Ok(CompositeSpace { factor_dims })
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn total_dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    pub fn system_dim(&self) -> usize {
        self.factor_dims[0]
    }

    /// Dimension of everything after the system factor.
    pub fn environment_dim(&self) -> usize {
        self.factor_dims[1..].iter().product()
    }

    /// `1 ⊗ … ⊗ p ⊗ … ⊗ 1` with `p` on factor `index`.
    pub fn embed_projector(&self, index: usize, p: &Projector) -> Result<Projector> {
        self.check_factor(index, p.ambient_dim())?;
        Ok(self
            .factor_dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == index { p.clone() } else { Projector::identity(d) })
            .reduce(|acc, f| acc.kron(&f))
            .expect("at least one factor"))
    }

    /// `H ⊗ … ⊗ s ⊗ … ⊗ H` with `s` on factor `index`.
    pub fn embed_subspace(&self, index: usize, s: &Subspace) -> Result<Subspace> {
        self.check_factor(index, s.ambient_dim())?;
        Ok(self
            .factor_dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == index { s.clone() } else { Subspace::full(d) })
            .reduce(|acc, f| tensor_subspace(&acc, &f))
            .expect("at least one factor"))
    }

    fn check_factor(&self, index: usize, dim: usize) -> Result<()> {
        match self.factor_dims.get(index) {
            Some(&d) if d == dim => Ok(()),
            Some(&d) => Err(Error::DimensionMismatch { expected: d, found: dim }),
            None => Err(Error::InvalidInput(format!(
                "factor index {index} out of range for {} factors",
                self.factor_dims.len()
            ))),
        }
    }
}

/// `a ⊗ b`, with basis the Kronecker products of the factor bases.
pub fn tensor_subspace(a: &Subspace, b: &Subspace) -> Subspace {
    let d = a.ambient_dim() * b.ambient_dim();
    let cols: Vec<Vec<C64>> = a
        .basis_vectors()
        .iter()
        .flat_map(|u| b.basis_vectors().into_iter().map(move |v| kron_vec(u, &v)))
        .collect();
    Subspace::from_orthonormal_columns(d, &cols).expect("kronecker columns have product length")
}

/// `|a⟩|b⟩`, renormalized.
pub fn tensor_state(a: &StateVector, b: &StateVector) -> StateVector {
    StateVector::new(kron_vec(a.amplitudes(), b.amplitudes())).expect("product of nonzero vectors")
}

pub fn kron_matrix(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// `{P_Sz+⊗P_1z−, P_Sz−⊗P_1z−, P_Sx+⊗P_1z+, P_Sx−⊗P_1z+}` on `C^4`.
pub fn build_sigma_a() -> Context {
    use spin::projector as p;
    let e_minus = p(Axis::Z, Sign::Minus);
    let e_plus = p(Axis::Z, Sign::Plus);
    Context::new(
        "Σ_A",
        vec![
            p(Axis::Z, Sign::Plus).kron(&e_minus),
            p(Axis::Z, Sign::Minus).kron(&e_minus),
            p(Axis::X, Sign::Plus).kron(&e_plus),
            p(Axis::X, Sign::Minus).kron(&e_plus),
        ],
        DEFAULT_EPS,
    )
    .expect("Σ_A is a context")
}

/// Short tag of a context label: `Σ_Sz` becomes `Sz`.
fn context_tag(label: &str) -> &str {
    label.strip_prefix("Σ_").unwrap_or(label)
}

/// Name of member `index` of a context: `P_Sz+` / `P_Sz−` for two-member
/// contexts, `P_<tag>#i` otherwise.
pub fn member_name(ctx: &Context, index: usize) -> String {
    let tag = context_tag(ctx.label());
    if ctx.len() == 2 {
        let sign = if index == 0 { Sign::Plus } else { Sign::Minus };
        format!("P_{tag}{}", sign.symbol())
    } else {
        format!("P_{tag}#{index}")
    }
}

fn pointer_name(k: usize, axis: Axis, sign: Sign) -> String {
    format!("P_{k}{axis}{}", sign.symbol())
}

fn span_spec(s: &Subspace) -> SubspaceSpec {
    SubspaceSpec::Span(
        s.basis_vectors()
            .into_iter()
            .map(|v| v.into_iter().map(ComplexLit::from).collect())
            .collect(),
    )
}

fn vector_lits(v: &[C64]) -> Vec<ComplexLit> {
    v.iter().copied().map(ComplexLit::from).collect()
}

/// Generates a scenario for a system coupled to `n_env` environment qubits.
///
/// The first two system contexts are spliced with the environment at factor
/// `splice_index` (1-based): members of the first are paired with the `−`
/// pointer projector, members of the second with the `+` pointer projector.
/// For `n_env == 1` with `Σ_Sz`, `Σ_Sx` and the z axis this is exactly `Σ_A`.
pub fn build_environment_scenario(
    n_env: usize,
    splice_index: usize,
    system_contexts: &[Context],
    env_axis: Axis,
    dimension_cap: usize,
) -> Result<Scenario> {
    if n_env == 0 {
        return Err(Error::InvalidSplice("at least one environment qubit is required".into()));
    }
    if splice_index == 0 || splice_index > n_env {
        return Err(Error::InvalidSplice(format!(
            "splice index {splice_index} is outside 1..={n_env}"
        )));
    }
    if system_contexts.len() < 2 {
        return Err(Error::MissingContext(format!(
            "two system contexts are needed for splicing, got {}",
            system_contexts.len()
        )));
    }
    let d_s = system_contexts[0].ambient_dim();
    for c in system_contexts {
        if c.ambient_dim() != d_s {
            return Err(Error::DimensionMismatch {
                expected: d_s,
                found: c.ambient_dim(),
            });
        }
    }
    let total = 2usize
        .checked_pow(n_env as u32)
        .and_then(|e| e.checked_mul(d_s))
        .filter(|&t| t <= dimension_cap)
        .ok_or(Error::TooLarge {
            dim: d_s.saturating_mul(2usize.saturating_pow(n_env as u32)),
            cap: dimension_cap,
        })?;

    let mut factor_dims = vec![d_s];
    factor_dims.extend(std::iter::repeat_n(2, n_env));
    let k = splice_index;
    let pointer = |sign: Sign| span_spec(&spin::ray(env_axis, sign));

    // Environment part as a list of factor specs; `at_splice` goes on factor k.
    let env_factors = |at_splice: SubspaceSpec| -> Vec<SubspaceSpec> {
        (1..=n_env)
            .map(|i| if i == k { at_splice.clone() } else { SubspaceSpec::Full(2) })
            .collect()
    };
    let composite = |system: SubspaceSpec, at_splice: SubspaceSpec| -> SubspaceSpec {
        let mut f = vec![system];
        f.extend(env_factors(at_splice));
        SubspaceSpec::Tensor(f)
    };
    let env_only = |at_splice: SubspaceSpec| -> SubspaceSpec {
        let f = env_factors(at_splice);
        if f.len() == 1 {
            f.into_iter().next().expect("one factor")
        } else {
            SubspaceSpec::Tensor(f)
        }
    };

    let first = &system_contexts[0];
    let second = &system_contexts[1];
    let e_prime = Sign::Minus;
    let e_second = Sign::Plus;
    let spliced_label = if n_env == 1 { "Σ_A".to_string() } else { "Σ_SE".to_string() };

    // isolated system
    let system_props: Vec<PropositionSpec> = system_contexts
        .iter()
        .flat_map(|c| {
            c.ranges().iter().enumerate().map(move |(i, r)| PropositionSpec {
                name: member_name(c, i),
                subspace: span_spec(r),
            })
        })
        .collect();
    let psi = first.ranges()[0].basis_vectors().remove(0);
    let system = Scenario {
        schema_version: SCHEMA_VERSION,
        name: Some("isolated system".into()),
        dimension: d_s,
        eps: None,
        states: vec![StateSpec {
            name: "Ψ".into(),
            amplitudes: vector_lits(&psi),
            home: Some(span_spec(&first.ranges()[0])),
        }],
        contexts: system_contexts
            .iter()
            .map(|c| ContextSpec {
                label: c.label().to_string(),
                projectors: c.ranges().iter().map(span_spec).collect(),
            })
            .collect(),
        evaluation: Some(EvaluationSpec {
            state: "Ψ".into(),
            propositions: system_props.iter().map(|p| p.name.clone()).collect(),
            context: None,
        }),
        propositions: system_props,
        environment: None,
    };

    // composite contexts
    let mut contexts = Vec::new();
    let mut spliced = Vec::new();
    let mut conj_props = Vec::new();
    for (ctx, sign) in [(first, e_prime), (second, e_second)] {
        for (i, r) in ctx.ranges().iter().enumerate() {
            spliced.push(composite(span_spec(r), pointer(sign)));
            conj_props.push(PropositionSpec {
                name: format!("{}∧{}", member_name(ctx, i), pointer_name(k, env_axis, sign)),
                subspace: composite(span_spec(r), pointer(sign)),
            });
        }
    }
    contexts.push(ContextSpec {
        label: spliced_label.clone(),
        projectors: spliced,
    });
    for ctx in system_contexts {
        contexts.push(ContextSpec {
            label: format!("{}⊗1", ctx.label()),
            projectors: ctx
                .ranges()
                .iter()
                .map(|r| composite(span_spec(r), SubspaceSpec::Full(2)))
                .collect(),
        });
    }
    for ctx in system_contexts {
        let mut members = Vec::new();
        for r in ctx.ranges() {
            for sign in [Sign::Plus, Sign::Minus] {
                members.push(composite(span_spec(r), pointer(sign)));
            }
        }
        contexts.push(ContextSpec {
            label: format!("{}⊗Σ_{k}{env_axis}", ctx.label()),
            projectors: members,
        });
    }

    let env_props: Vec<PropositionSpec> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .map(|s| PropositionSpec {
            name: pointer_name(k, env_axis, s),
            subspace: env_only(pointer(s)),
        })
        .collect();

    let mut propositions = conj_props;
    for s in [Sign::Plus, Sign::Minus] {
        propositions.push(PropositionSpec {
            name: pointer_name(k, env_axis, s),
            subspace: composite(SubspaceSpec::Full(d_s), pointer(s)),
        });
    }
    for ctx in system_contexts {
        for (i, r) in ctx.ranges().iter().enumerate() {
            propositions.push(PropositionSpec {
                name: member_name(ctx, i),
                subspace: composite(span_spec(r), SubspaceSpec::Full(2)),
            });
        }
    }

    let eps_state: Vec<C64> = (0..n_env)
        .map(|_| spin::eigenvector(env_axis, e_prime))
        .reduce(|a, b| kron_vec(&a, &b))
        .expect("n_env >= 1");
    let composite_state = kron_vec(&psi, &eps_state);
    let bivalence = second
        .ranges()
        .iter()
        .enumerate()
        .map(|(i, _)| BivalenceQuery {
            system_proposition: member_name(second, i),
            env_proposition: pointer_name(k, env_axis, e_second),
        })
        .collect();

    Ok(Scenario {
        schema_version: SCHEMA_VERSION,
        name: Some(format!("system + {n_env} environment qubit(s), splice at {k}")),
        dimension: total,
        eps: None,
        states: vec![StateSpec {
            name: "Ψ⊗ε′".into(),
            amplitudes: vector_lits(&composite_state),
            home: Some(composite(span_spec(&first.ranges()[0]), pointer(e_prime))),
        }],
        contexts,
        evaluation: Some(EvaluationSpec {
            state: "Ψ⊗ε′".into(),
            propositions: propositions.iter().map(|p| p.name.clone()).collect(),
            context: Some(spliced_label.clone()),
        }),
        propositions,
        environment: Some(EnvironmentSpec {
            factor_dims,
            preferred_axis: env_axis,
            splice_index: k,
            composite_context: spliced_label,
            system: Box::new(system),
            env_propositions: env_props,
            bivalence,
        }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PostStatus {
    Bivalent,
    StillGap,
}

/// Outcome of coupling a gappy system proposition to the environment.
///
/// `pre_value` is the isolated-system value. A `Bivalent` status with a `Gap`
/// pre-value is the inferred transition: the proposition is either true or
/// false but its value is not fixed by the procedure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivalenceReport {
    pub proposition: String,
    pub pre_value: TruthValue,
    pub witness_lattice: String,
    pub companion_env_prop: String,
    pub companion_value: TruthValue,
    pub conjunction_value: TruthValue,
    pub post_status: PostStatus,
}

/// Runs the gap-to-bivalence inference for system proposition `prop_q`
/// against environment proposition `env_prop` (both looked up by name in the
/// scenario's environment section).
pub fn induced_bivalence(model: &Model, prop_q: &str, env_prop: &str) -> Result<BivalenceReport> {
    let env = model
        .environment
        .as_ref()
        .ok_or_else(|| Error::MissingContext("scenario has no environment section".into()))?;
    let q = env
        .system
        .proposition(prop_q)
        .ok_or_else(|| Error::UnknownName(prop_q.to_string()))?;
    let e2 = env
        .env_propositions
        .iter()
        .find(|p| p.name == env_prop)
        .ok_or_else(|| Error::MissingEnvProp(env_prop.to_string()))?;

    let isolated = env.system.evaluation_input()?;
    let pre_value = evaluate(&isolated, q)?;

    let composite = model.evaluation_input()?;
    let eps = composite.eps();
    let companion = Proposition::new(
        e2.name.clone(),
        tensor_subspace(&Subspace::full(env.space.system_dim()), &e2.subspace),
    );
    let conjunction = Proposition::new(format!("{}∧{}", q.name, e2.name), tensor_subspace(&q.subspace, &e2.subspace));

    let witnesses = find_common_lattices(composite.collection(), composite.home(), &conjunction.subspace, eps)?;
    let witness_lattice = if witnesses.contains(&env.composite_context) {
        env.composite_context.clone()
    } else {
        witnesses.into_iter().next().ok_or_else(|| {
            Error::MissingContext(format!(
                "no composite lattice contains both the state's home and {}",
                conjunction.name
            ))
        })?
    };

    let companion_value = evaluate(&composite, &companion)?;
    let conjunction_value = evaluate(&composite, &conjunction)?;
    let post_status = if companion_value == TruthValue::False && conjunction_value == TruthValue::False {
        PostStatus::Bivalent
    } else {
        PostStatus::StillGap
    };
    Ok(BivalenceReport {
        proposition: q.name.clone(),
        pre_value,
        witness_lattice,
        companion_env_prop: e2.name.clone(),
        companion_value,
        conjunction_value,
        post_status,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rejection {
    pub label: String,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct StabilityOutcome {
    pub retained: Vec<Context>,
    pub rejected: Vec<Rejection>,
}

/// Keeps the composite contexts whose members are diagonal in the preferred
/// basis of every environment qubit, i.e. commute with each pointer projector
/// `P_{k,axis,±}`.
pub fn stability_filter(
    space: &CompositeSpace,
    env_axis: Axis,
    candidates: &[Context],
    eps: f64,
) -> StabilityOutcome {
    let mut retained = Vec::new();
    let mut rejected = Vec::new();
    'candidates: for ctx in candidates {
        if ctx.ambient_dim() != space.total_dim() {
            rejected.push(Rejection {
                label: ctx.label().to_string(),
                reason: format!(
                    "acts on dimension {}, composite space has {}",
                    ctx.ambient_dim(),
                    space.total_dim()
                ),
            });
            continue;
        }
        for k in 1..space.factor_dims().len() {
            if space.factor_dims()[k] != 2 {
                rejected.push(Rejection {
                    label: ctx.label().to_string(),
                    reason: format!("environment factor {k} is not a qubit"),
                });
                continue 'candidates;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let pointer = space
                    .embed_projector(k, &spin::projector(env_axis, sign))
                    .expect("qubit factor");
                for (i, p) in ctx.projectors().iter().enumerate() {
                    let c = matrix_commutator(p.matrix(), pointer.matrix()).expect("same dimension");
                    if c.frobenius_norm() > eps {
                        rejected.push(Rejection {
                            label: ctx.label().to_string(),
                            reason: format!(
                                "member #{i} is not diagonal in the {env_axis} basis of environment qubit {k}"
                            ),
                        });
                        continue 'candidates;
                    }
                }
            }
        }
        retained.push(ctx.clone());
    }
    StabilityOutcome { retained, rejected }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};
    use crate::subspace::DEFAULT_EPS as EPS;

    fn r(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn tensor_subspace_examples() {
        let zp = spin::ray(Axis::Z, Sign::Plus);
        let zm = spin::ray(Axis::Z, Sign::Minus);
        let t = tensor_subspace(&zp, &zm);
        assert_eq!(t.ambient_dim(), 4);
        let expected = Subspace::from_spanning(4, &[r(&[0.0, 1.0, 0.0, 0.0])], 0.0).unwrap();
        assert!(t.approx_eq(&expected, EPS));

        let one = Subspace::full(1);
        assert!(tensor_subspace(&zp, &one).approx_eq(&zp, EPS));

        // [1,1]/√2 ⊗ [1,0] = [1,0,1,0]/√2
        let xz = tensor_subspace(&spin::ray(Axis::X, Sign::Plus), &zp);
        let expected = Subspace::from_spanning(4, &[r(&[1.0, 0.0, 1.0, 0.0])], 0.0).unwrap();
        assert!(xz.approx_eq(&expected, EPS));
    }

    #[test]
    fn tensor_state_examples() {
        let t = tensor_state(&spin::state(Axis::Z, Sign::Plus), &spin::state(Axis::Z, Sign::Minus));
        assert_eq!(t.amplitudes(), &[ZERO, ONE, ZERO, ZERO]);
        let scalar = StateVector::new(vec![ONE]).unwrap();
        let v = spin::state(Axis::Y, Sign::Plus);
        assert_eq!(tensor_state(&v, &scalar).amplitudes(), v.amplitudes());
        let t = tensor_state(&spin::state(Axis::X, Sign::Plus), &spin::state(Axis::Z, Sign::Plus));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = r(&[h, 0.0, h, 0.0]);
        for (a, b) in t.amplitudes().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn sigma_a_is_a_valid_four_member_context() {
        let a = build_sigma_a();
        assert_eq!(a.len(), 4);
        let sum = a
            .projectors()
            .iter()
            .fold(ComplexMatrix::zeros(4, 4), |acc, p| acc.add(p.matrix()).unwrap());
        assert!(sum.sub(&ComplexMatrix::identity(4)).unwrap().max_abs() < 1e-15);
        for p in a.projectors() {
            assert_eq!(p.rank(), 1);
            assert!((p.matrix().trace().re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn splice_must_be_in_range() {
        let ctxs = [spin::context(Axis::Z, "S"), spin::context(Axis::X, "S")];
        assert!(matches!(
            build_environment_scenario(1, 2, &ctxs, Axis::Z, DEFAULT_DIMENSION_CAP),
            Err(Error::InvalidSplice(_))
        ));
        assert!(matches!(
            build_environment_scenario(2, 0, &ctxs, Axis::Z, DEFAULT_DIMENSION_CAP),
            Err(Error::InvalidSplice(_))
        ));
        assert!(matches!(
            build_environment_scenario(12, 1, &ctxs, Axis::Z, DEFAULT_DIMENSION_CAP),
            Err(Error::TooLarge { dim: 8192, cap: 4096 })
        ));
        assert!(matches!(
            build_environment_scenario(1, 1, &ctxs[..1], Axis::Z, DEFAULT_DIMENSION_CAP),
            Err(Error::MissingContext(_))
        ));
    }

    #[test]
    fn composite_space_embedding() {
        let space = CompositeSpace::new(vec![2, 2, 2]).unwrap();
        assert_eq!(space.total_dim(), 8);
        assert_eq!(space.environment_dim(), 4);
        let p = space.embed_projector(1, &spin::projector(Axis::Z, Sign::Plus)).unwrap();
        assert_eq!(p.rank(), 4);
        let s = space.embed_subspace(1, &spin::ray(Axis::Z, Sign::Plus)).unwrap();
        assert!(s.projector().approx_eq(&p, EPS));
        assert!(space.embed_projector(3, &Projector::identity(2)).is_err());
        assert!(space.embed_projector(0, &Projector::identity(3)).is_err());
    }

    #[test]
    fn stability_filter_examples() {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        let out = stability_filter(&space, Axis::Z, &[build_sigma_a()], EPS);
        assert_eq!(out.retained.len(), 1);
        assert!(out.rejected.is_empty());

        use spin::projector as p;
        let bad = Context::new(
            "Σ_A(x-env)",
            vec![
                p(Axis::Z, Sign::Plus).kron(&p(Axis::X, Sign::Minus)),
                p(Axis::Z, Sign::Minus).kron(&p(Axis::X, Sign::Minus)),
                p(Axis::X, Sign::Plus).kron(&p(Axis::X, Sign::Plus)),
                p(Axis::X, Sign::Minus).kron(&p(Axis::X, Sign::Plus)),
            ],
            EPS,
        )
        .unwrap();
        let out = stability_filter(&space, Axis::Z, std::slice::from_ref(&bad), EPS);
        assert!(out.retained.is_empty());
        assert_eq!(out.rejected[0].label, "Σ_A(x-env)");
        // the same context is stable for an x-axis pointer basis
        assert_eq!(stability_filter(&space, Axis::X, &[bad], EPS).retained.len(), 1);

        assert!(stability_filter(&space, Axis::Z, &[], EPS).retained.is_empty());
    }
}
