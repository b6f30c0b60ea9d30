//! Three-valued (supervaluation) semantics for propositions about a quantum
//! system, modeled as closed subspaces of a finite-dimensional Hilbert space.
//!
//! A proposition is true or false in a state only relative to a Boolean block
//! (the invariant-subspace lattice of a context) that also contains the
//! state's home subspace; otherwise it has a truth-value gap.

pub mod composition;
pub mod context;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod random;
pub mod scenario;
pub mod spin;
pub mod subspace;
pub mod valuation;

pub use context::{
    check_distributivity, find_common_lattices, lattice_of, paste_sublattice, Context, ElementSet,
    HilbertSublattice, InvariantSubspaceLattice, LatticeCollection,
};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use scenario::{parse_scenario, Model, Scenario, ScenarioError};
pub use subspace::{commutator, observable_commutator, Projector, StateVector, Subspace, DEFAULT_EPS};
pub use valuation::{evaluate, truth_table, Proposition, TruthValue, ValuationInput};
