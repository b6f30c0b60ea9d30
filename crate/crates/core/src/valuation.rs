//! Three-valued valuation of propositions in a state whose home subspace lives
//! in a collection of invariant-subspace lattices.
//!
//! A proposition is true when the state lies in the meet of its home and the
//! proposition's subspace, false when it does not, and has no value (a gap)
//! when the two subspaces share no lattice of the collection, so the meet is
//! undefined. The whole space is checked first and is always true; this is
//! what makes `Q ∨ ¬Q` true while both disjuncts are gaps.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::{find_common_lattices, Context, ElementSet, HilbertSublattice, LatticeCollection};
use crate::error::{Error, Result};
use crate::subspace::{StateVector, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruthValue {
    True,
    False,
    Gap,
}

impl TruthValue {
    /// `"1"`, `"0"` or `"0/0"`.
    pub fn rendered(self) -> &'static str {
        match self {
            TruthValue::True => "1",
            TruthValue::False => "0",
            TruthValue::Gap => "0/0",
        }
    }

    pub fn status(self) -> &'static str {
        match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Gap => "gap",
        }
    }

    /// `Some(bool)` for a determinate value, `None` for a gap.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Gap => None,
        }
    }

    pub fn is_determinate(self) -> bool {
        self != TruthValue::Gap
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.rendered())
    }
}

#[derive(Clone, Debug)]
pub struct Proposition {
    pub name: String,
    pub subspace: Subspace,
}

impl Proposition {
    pub fn new(name: impl Into<String>, subspace: Subspace) -> Self {
        Proposition {
            name: name.into(),
            subspace,
        }
    }
}

/// `¬P`, represented by the orthogonal complement.
pub fn negation_of(prop: &Proposition) -> Proposition {
    Proposition::new(format!("¬{}", prop.name), prop.subspace.complement())
}

/// A state, the subspace it is declared to live in, and the lattice collection
/// that decides which meets exist.
#[derive(Clone, Debug)]
pub struct ValuationInput {
    state: StateVector,
    home: Subspace,
    collection: LatticeCollection,
    eps: f64,
}

impl ValuationInput {
    pub fn new(state: StateVector, home: Subspace, collection: LatticeCollection, eps: f64) -> Result<Self> {
        if home.ambient_dim() != state.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: home.ambient_dim(),
                found: state.ambient_dim(),
            });
        }
        if collection.ambient_dim() != state.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: collection.ambient_dim(),
                found: state.ambient_dim(),
            });
        }
        if !home.contains_vector(&state, eps)? {
            return Err(Error::InvalidInput("the home subspace does not contain the state".into()));
        }
        if collection.lattices_containing(&home, eps).is_empty() {
            return Err(Error::InvalidInput(
                "the home subspace is not an element of any lattice in the collection".into(),
            ));
        }
        Ok(ValuationInput {
            state,
            home,
            collection,
            eps,
        })
    }

    /// Uses the one-dimensional span of the state as its home.
    pub fn with_default_home(state: StateVector, collection: LatticeCollection, eps: f64) -> Result<Self> {
        let home = state.span();
        Self::new(state, home, collection, eps)
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn home(&self) -> &Subspace {
        &self.home
    }

    pub fn collection(&self) -> &LatticeCollection {
        &self.collection
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Value of `prop` in the input state.
pub fn evaluate(input: &ValuationInput, prop: &Proposition) -> Result<TruthValue> {
    let eps = input.eps;
    let target = &prop.subspace;
    if target.ambient_dim() != input.home.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: input.home.ambient_dim(),
            found: target.ambient_dim(),
        });
    }
    if target.is_full() {
        return Ok(TruthValue::True);
    }
    if find_common_lattices(&input.collection, &input.home, target, eps)?.is_empty() {
        return Ok(TruthValue::Gap);
    }
    let m = input.home.meet(target, eps)?;
    if m.is_zero() {
        return Ok(TruthValue::False);
    }
    Ok(m.contains_vector(&input.state, eps)?.into())
}

/// `Q ∨ ¬Q`, represented by the whole space: true in every allowable state.
pub fn evaluate_disjunction_with_negation(input: &ValuationInput, prop: &Proposition) -> Result<TruthValue> {
    let whole = Proposition::new(
        format!("{0} ∨ ¬{0}", prop.name),
        Subspace::full(input.home.ambient_dim()),
    );
    if prop.subspace.ambient_dim() != whole.subspace.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: whole.subspace.ambient_dim(),
            found: prop.subspace.ambient_dim(),
        });
    }
    evaluate(input, &whole)
}

/// Values of every member of `ctx` when the home is one of the context's
/// ranges. Exactly one member comes out true.
pub fn context_valuation_profile(input: &ValuationInput, ctx: &Context) -> Result<BTreeMap<usize, TruthValue>> {
    let eps = input.eps;
    if ctx.ambient_dim() != input.home.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: input.home.ambient_dim(),
            found: ctx.ambient_dim(),
        });
    }
    if ctx.member_with_range(&input.home, eps).is_none() {
        return Err(Error::HomeNotInContext(ctx.label().to_string()));
    }
    ctx.ranges()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let m = input.home.meet(r, eps)?;
            let v = !m.is_zero() && m.contains_vector(&input.state, eps)?;
            Ok((i, TruthValue::from(v)))
        })
        .collect()
}

/// `evaluate` over a list, order preserved. Fails with every per-proposition
/// error collected if any proposition fails.
pub fn truth_table(input: &ValuationInput, props: &[Proposition]) -> Result<Vec<(String, TruthValue)>> {
    let mut rows = Vec::with_capacity(props.len());
    let mut failures = Vec::new();
    for p in props {
        match evaluate(input, p) {
            Ok(v) => rows.push((p.name.clone(), v)),
            Err(e) => failures.push((p.name.clone(), e)),
        }
    }
    if failures.is_empty() {
        Ok(rows)
    } else {
        Err(Error::Batch(failures))
    }
}

/// Valuation inside a single pasted sublattice, where every meet exists.
/// Both `home` and `prop` must be elements; the result is never a gap.
pub fn evaluate_in_sublattice(
    sublattice: &HilbertSublattice,
    state: &StateVector,
    home: &Subspace,
    prop: &Proposition,
    eps: f64,
) -> Result<TruthValue> {
    if !sublattice.contains(home, eps) || !sublattice.contains(&prop.subspace, eps) {
        return Err(Error::NotAnElement);
    }
    if !home.contains_vector(state, eps)? {
        return Err(Error::InvalidInput("the home subspace does not contain the state".into()));
    }
    let m = home.meet(&prop.subspace, eps)?;
    Ok(m.contains_vector(state, eps)?.into())
}
