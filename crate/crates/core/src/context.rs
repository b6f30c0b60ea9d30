//! Contexts, their invariant-subspace lattices, collections of lattices and
//! the pasted Hilbert sublattice.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::subspace::{subspace_sum, Projector, Subspace};

/// One way a candidate context can fail validation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContextViolation {
    TooFewMembers { count: usize },
    DimensionMismatch { index: usize, expected: usize, found: usize },
    TrivialMember { index: usize, rank: usize },
    NotOrthogonal { first: usize, second: usize, magnitude: f64 },
    Incomplete { trace: f64, deviation: f64 },
}

impl fmt::Display for ContextViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextViolation::TooFewMembers { count } => {
                write!(f, "a context needs at least 2 projectors, got {count}")
            }
            ContextViolation::DimensionMismatch { index, expected, found } => {
                write!(f, "projector #{index} acts on dimension {found}, expected {expected}")
            }
            ContextViolation::TrivialMember { index, rank } => {
                write!(f, "projector #{index} is trivial (rank {rank})")
            }
            ContextViolation::NotOrthogonal { first, second, magnitude } => write!(
                f,
                "NotOrthogonal: projectors #{first} and #{second} do not annihilate (max |PQ| = {magnitude:.3e})"
            ),
            ContextViolation::Incomplete { trace, deviation } => write!(
                f,
                "Incomplete: projectors do not sum to identity (trace of sum {trace:.6}, max deviation {deviation:.3e})"
            ),
        }
    }
}

/// A complete family of mutually annihilating nontrivial projectors.
#[derive(Clone, Debug)]
pub struct Context {
    label: String,
    projectors: Vec<Projector>,
    ranges: Vec<Subspace>,
}

impl Context {
    pub fn new(label: impl Into<String>, projectors: Vec<Projector>, eps: f64) -> Result<Self> {
        let label = label.into();
        let violations = Self::violations(&projectors, eps);
        if !violations.is_empty() {
            return Err(Error::InvalidContext { label, violations });
        }
        let ranges = projectors
            .iter()
            .map(|p| p.range(eps))
            .collect::<Result<Vec<_>>>()?;
        Ok(Context {
            label,
            projectors,
            ranges,
        })
    }

    /// Builds the context whose members project onto `ranges`.
    pub fn from_ranges(label: impl Into<String>, ranges: &[Subspace], eps: f64) -> Result<Self> {
        Self::new(label, ranges.iter().map(Subspace::projector).collect(), eps)
    }

    /// Every violated context condition, in a fixed order. Empty means valid.
    pub fn violations(projectors: &[Projector], eps: f64) -> Vec<ContextViolation> {
        let mut out = Vec::new();
        if projectors.len() < 2 {
            out.push(ContextViolation::TooFewMembers {
                count: projectors.len(),
            });
        }
        let Some(first) = projectors.first() else {
            return out;
        };
        let d = first.ambient_dim();
        let mut consistent = true;
        for (index, p) in projectors.iter().enumerate() {
            if p.ambient_dim() != d {
                consistent = false;
                out.push(ContextViolation::DimensionMismatch {
                    index,
                    expected: d,
                    found: p.ambient_dim(),
                });
            }
        }
        if !consistent {
            return out;
        }
        for (index, p) in projectors.iter().enumerate() {
            let rank = p.rank();
            if rank == 0 || rank >= d {
                out.push(ContextViolation::TrivialMember { index, rank });
            }
        }
        for i in 0..projectors.len() {
            for j in i + 1..projectors.len() {
                let a = projectors[i].matrix();
                let b = projectors[j].matrix();
                let magnitude = a
                    .matmul(b)
                    .expect("same dimension")
                    .max_abs()
                    .max(b.matmul(a).expect("same dimension").max_abs());
                if magnitude > eps {
                    out.push(ContextViolation::NotOrthogonal {
                        first: i,
                        second: j,
                        magnitude,
                    });
                }
            }
        }
        let sum = projectors
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, p| acc.add(p.matrix()).expect("same dimension"));
        let deviation = sum.sub(&ComplexMatrix::identity(d)).expect("same dimension").max_abs();
        if deviation > eps {
            out.push(ContextViolation::Incomplete {
                trace: sum.trace().re,
                deviation,
            });
        }
        out
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn ranges(&self) -> &[Subspace] {
        &self.ranges
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.projectors[0].ambient_dim()
    }

    pub fn relabeled(&self, label: impl Into<String>) -> Context {
        Context {
            label: label.into(),
            ..self.clone()
        }
    }

    /// Index of the member whose range equals `s`.
    pub fn member_with_range(&self, s: &Subspace, eps: f64) -> Option<usize> {
        self.ranges.iter().position(|r| r.approx_eq(s, eps))
    }
}

/// Whether two contexts share at least one projector.
pub fn intertwined(a: &Context, b: &Context, eps: f64) -> Result<bool> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(a
        .projectors
        .iter()
        .any(|p| b.projectors.iter().any(|q| p.approx_eq(q, eps))))
}

/// Something whose elements can be tested for membership.
pub trait ElementSet {
    fn ambient_dim(&self) -> usize;
    fn elements(&self) -> &[Subspace];

    fn position(&self, s: &Subspace, eps: f64) -> Option<usize> {
        self.elements().iter().position(|e| e.approx_eq(s, eps))
    }

    fn contains(&self, s: &Subspace, eps: f64) -> bool {
        self.position(s, eps).is_some()
    }
}

/// The Boolean algebra of sums of subsets of a context's ranges.
///
/// Element `i` is the sum of the ranges whose bit is set in `i`, so index 0 is
/// `{0}` and the last index is the whole space.
#[derive(Clone, Debug)]
pub struct InvariantSubspaceLattice {
    context: Context,
    elements: Vec<Subspace>,
}

impl InvariantSubspaceLattice {
    pub fn of(ctx: &Context, eps: f64) -> Result<Self> {
        let n = ctx.len();
        let d = ctx.ambient_dim();
        let mut elements = Vec::with_capacity(1 << n);
        for mask in 0usize..(1 << n) {
            let parts: Vec<Subspace> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| ctx.ranges[i].clone())
                .collect();
            elements.push(subspace_sum(d, &parts, eps)?);
        }
        Ok(InvariantSubspaceLattice {
            context: ctx.clone(),
            elements,
        })
    }

    pub fn label(&self) -> &str {
        self.context.label()
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Nontrivial elements, in index order.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Subspace> {
        self.elements.iter().filter(|e| !e.is_trivial())
    }

    pub(crate) fn relabeled(&self, label: &str) -> Self {
        InvariantSubspaceLattice {
            context: self.context.relabeled(label),
            elements: self.elements.clone(),
        }
    }
}

impl ElementSet for InvariantSubspaceLattice {
    fn ambient_dim(&self) -> usize {
        self.context.ambient_dim()
    }

    fn elements(&self) -> &[Subspace] {
        &self.elements
    }
}

/// `L(Σ)` for a validated context.
pub fn lattice_of(ctx: &Context, eps: f64) -> Result<InvariantSubspaceLattice> {
    InvariantSubspaceLattice::of(ctx, eps)
}

/// One lattice per context, all over the same space, labels unique.
#[derive(Clone, Debug)]
pub struct LatticeCollection {
    ambient_dim: usize,
    lattices: Vec<InvariantSubspaceLattice>,
}

impl LatticeCollection {
    pub fn new(ambient_dim: usize, lattices: Vec<InvariantSubspaceLattice>) -> Result<Self> {
        for (i, l) in lattices.iter().enumerate() {
            if l.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: l.ambient_dim(),
                });
            }
            if lattices[..i].iter().any(|o| o.label() == l.label()) {
                return Err(Error::DuplicateLabel(l.label().to_string()));
            }
        }
        Ok(LatticeCollection {
            ambient_dim,
            lattices,
        })
    }

    pub fn from_contexts(ambient_dim: usize, contexts: &[Context], eps: f64) -> Result<Self> {
        let lattices = contexts
            .iter()
            .map(|c| lattice_of(c, eps))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, lattices)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn lattices(&self) -> &[InvariantSubspaceLattice] {
        &self.lattices
    }

    pub fn get(&self, label: &str) -> Option<&InvariantSubspaceLattice> {
        self.lattices.iter().find(|l| l.label() == label)
    }

    pub fn len(&self) -> usize {
        self.lattices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattices.is_empty()
    }

    /// Labels of every lattice holding `s`.
    pub fn lattices_containing(&self, s: &Subspace, eps: f64) -> Vec<String> {
        self.lattices
            .iter()
            .filter(|l| l.contains(s, eps))
            .map(|l| l.label().to_string())
            .collect()
    }

    /// Same collection with one lattice's label replaced.
    pub fn with_relabeled(&self, from: &str, to: &str) -> Result<Self> {
        let lattices = self
            .lattices
            .iter()
            .map(|l| if l.label() == from { l.relabeled(to) } else { l.clone() })
            .collect();
        Self::new(self.ambient_dim, lattices)
    }
}

/// Labels of every lattice in `coll` containing both `a` and `b`. An empty
/// result means the meet of `a` and `b` is undefined within the collection.
pub fn find_common_lattices(
    coll: &LatticeCollection,
    a: &Subspace,
    b: &Subspace,
    eps: f64,
) -> Result<Vec<String>> {
    for s in [a, b] {
        if s.ambient_dim() != coll.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: coll.ambient_dim(),
                found: s.ambient_dim(),
            });
        }
    }
    Ok(coll
        .lattices
        .iter()
        .filter(|l| l.contains(a, eps) && l.contains(b, eps))
        .map(|l| l.label().to_string())
        .collect())
}

/// Nontrivial elements of `label`'s lattice that no other lattice contains.
pub fn individual_subspaces(coll: &LatticeCollection, label: &str, eps: f64) -> Result<Vec<Subspace>> {
    let lattice = coll
        .get(label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    Ok(lattice
        .nontrivial()
        .filter(|s| {
            coll.lattices
                .iter()
                .filter(|o| o.label() != label)
                .all(|o| !o.contains(s, eps))
        })
        .cloned()
        .collect())
}

/// Union of Boolean blocks glued at shared elements.
#[derive(Clone, Debug)]
pub struct HilbertSublattice {
    ambient_dim: usize,
    elements: Vec<Subspace>,
    blocks: Vec<(String, Vec<usize>)>,
}

impl HilbertSublattice {
    /// Element indices of each block, keyed by lattice label.
    pub fn blocks(&self) -> &[(String, Vec<usize>)] {
        &self.blocks
    }

    /// Labels of the blocks holding element `index`.
    pub fn blocks_of(&self, index: usize) -> Vec<&str> {
        self.blocks
            .iter()
            .filter(|(_, ix)| ix.contains(&index))
            .map(|(l, _)| l.as_str())
            .collect()
    }
}

impl ElementSet for HilbertSublattice {
    fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    fn elements(&self) -> &[Subspace] {
        &self.elements
    }
}

/// Deduplicated union of the collection's lattices. `{0}` comes first, the
/// whole space last, nontrivial elements in order of first appearance.
pub fn paste_sublattice(coll: &LatticeCollection, eps: f64) -> HilbertSublattice {
    let d = coll.ambient_dim;
    let mut elements = vec![Subspace::zero(d)];
    for l in &coll.lattices {
        for s in l.nontrivial() {
            if !elements.iter().any(|e| e.approx_eq(s, eps)) {
                elements.push(s.clone());
            }
        }
    }
    elements.push(Subspace::full(d));
    let blocks = coll
        .lattices
        .iter()
        .map(|l| {
            let idx = l
                .elements
                .iter()
                .map(|s| {
                    elements
                        .iter()
                        .position(|e| e.approx_eq(s, eps))
                        .expect("every lattice element was inserted")
                })
                .collect();
            (l.label().to_string(), idx)
        })
        .collect();
    HilbertSublattice {
        ambient_dim: d,
        elements,
        blocks,
    }
}

#[derive(Clone, Debug)]
pub struct DistributivityReport {
    /// `a ∧ (b ∨ c)`
    pub lhs: Subspace,
    /// `(a ∧ b) ∨ (a ∧ c)`
    pub rhs: Subspace,
    pub holds: bool,
}

/// Evaluates both sides of the distributive law, with meets and joins taken in
/// the ambient space.
pub fn check_distributivity<S: ElementSet + ?Sized>(
    within: &S,
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
    eps: f64,
) -> Result<DistributivityReport> {
    for s in [a, b, c] {
        if !within.contains(s, eps) {
            return Err(Error::NotAnElement);
        }
    }
    let lhs = a.meet(&b.join(c, eps)?, eps)?;
    let rhs = a.meet(b, eps)?.join(&a.meet(c, eps)?, eps)?;
    let holds = lhs.approx_eq(&rhs, eps);
    Ok(DistributivityReport { lhs, rhs, holds })
}

/// Above this many elements, distributivity is checked on sampled triples.
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// Checks the Boolean-algebra laws on `L(Σ)`: element count, trivial elements,
/// closure under meet and join, complementation, invariance under every member
/// projector, and both distributive laws. Returns a description of each failure.
pub fn lattice_law_violations(
    lattice: &InvariantSubspaceLattice,
    eps: f64,
    sampled_triples: usize,
    seed: u64,
) -> Vec<String> {
    let mut out = Vec::new();
    let els = lattice.elements();
    let n = lattice.context().len();
    let d = lattice.ambient_dim();
    if els.len() != 1 << n {
        out.push(format!("expected {} elements, found {}", 1usize << n, els.len()));
    }
    if !lattice.contains(&Subspace::zero(d), eps) {
        out.push("{0} is missing".into());
    }
    if !lattice.contains(&Subspace::full(d), eps) {
        out.push("H is missing".into());
    }
    let mut op = |what: &str, r: Result<Subspace>| -> Option<Subspace> {
        match r {
            Ok(s) => Some(s),
            Err(e) => {
                out.push(format!("{what}: {e}"));
                None
            }
        }
    };
    let mut failures = Vec::new();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate().skip(i) {
            if let Some(m) = op("meet", a.meet(b, eps)) {
                if !lattice.contains(&m, eps) {
                    failures.push(format!("meet of #{i} and #{j} leaves the lattice"));
                }
            }
            if let Some(m) = op("join", a.join(b, eps)) {
                if !lattice.contains(&m, eps) {
                    failures.push(format!("join of #{i} and #{j} leaves the lattice"));
                }
            }
        }
        let c = a.complement();
        if !lattice.contains(&c, eps) {
            failures.push(format!("complement of #{i} leaves the lattice"));
        }
        if let Some(m) = op("meet", a.meet(&c, eps)) {
            if !m.is_zero() {
                failures.push(format!("#{i} meets its complement nontrivially"));
            }
        }
        if let Some(j) = op("join", a.join(&c, eps)) {
            if !j.is_full() {
                failures.push(format!("#{i} joined with its complement is not H"));
            }
        }
        for (k, p) in lattice.context().projectors().iter().enumerate() {
            if !a.is_invariant_under(p, eps).unwrap_or(false) {
                failures.push(format!("#{i} is not invariant under member {k}"));
            }
        }
    }
    out.extend(failures);

    let triple = |i: usize, j: usize, k: usize, out: &mut Vec<String>| {
        let (a, b, c) = (&els[i], &els[j], &els[k]);
        match check_distributivity(lattice, a, b, c, eps) {
            Ok(r) if r.holds => {}
            Ok(_) => out.push(format!("distributivity fails on (#{i}, #{j}, #{k})")),
            Err(e) => out.push(format!("distributivity on (#{i}, #{j}, #{k}): {e}")),
        }
        let dual = b
            .meet(c, eps)
            .and_then(|bc| a.join(&bc, eps))
            .and_then(|lhs| Ok((lhs, a.join(b, eps)?.meet(&a.join(c, eps)?, eps)?)));
        match dual {
            Ok((l, r)) if l.approx_eq(&r, eps) => {}
            Ok(_) => out.push(format!("dual distributivity fails on (#{i}, #{j}, #{k})")),
            Err(e) => out.push(format!("dual distributivity on (#{i}, #{j}, #{k}): {e}")),
        }
    };
    let m = els.len();
    if m <= EXHAUSTIVE_LIMIT {
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    triple(i, j, k, &mut out);
                }
            }
        }
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sampled_triples {
            let (i, j, k) = (rng.random_range(0..m), rng.random_range(0..m), rng.random_range(0..m));
            triple(i, j, k, &mut out);
        }
    }
    out
}
