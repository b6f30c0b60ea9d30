//! Seeded random subspaces, unitaries, states and contexts.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::context::Context;
use crate::linalg::{orthonormalize, ComplexMatrix, C64};
use crate::subspace::{Projector, StateVector, Subspace, DEFAULT_EPS};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// A complex Gaussian vector of length `d`.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<C64> {
    (0..d).map(|_| gaussian(rng)).collect()
}

pub fn state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> StateVector {
    loop {
        if let Ok(s) = StateVector::new(gaussian_vector(rng, d)) {
            return s;
        }
    }
}

/// Span of `k` Gaussian vectors in `C^d` (dimension `min(k, d)` almost surely).
pub fn subspace<R: Rng + ?Sized>(rng: &mut R, d: usize, k: usize) -> Subspace {
    let vs: Vec<Vec<C64>> = (0..k).map(|_| gaussian_vector(rng, d)).collect();
    Subspace::from_spanning(d, &vs, DEFAULT_EPS).expect("finite vectors")
}

/// Subspace of random dimension in `0..=d`.
pub fn any_subspace<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Subspace {
    let k = rng.random_range(0..=d);
    subspace(rng, d, k)
}

/// Orthonormal basis of `C^d` drawn from Gaussian vectors, as columns.
pub fn orthonormal_basis<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Vec<C64>> {
    loop {
        let vs: Vec<Vec<C64>> = (0..d).map(|_| gaussian_vector(rng, d)).collect();
        let b = orthonormalize(&vs, 1e-6, Some(d));
        if b.len() == d {
            return b;
        }
    }
}

pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_columns(d, &orthonormal_basis(rng, d)).expect("square")
}

/// Random partition of `0..d` into `parts >= 2` nonempty consecutive blocks.
fn block_sizes<R: Rng + ?Sized>(rng: &mut R, d: usize, parts: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = (1..d).collect();
    for i in 0..cuts.len() {
        let j = rng.random_range(i..cuts.len());
        cuts.swap(i, j);
    }
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(d)) {
        sizes.push(c - prev);
        prev = c;
    }
    sizes
}

/// Groups the columns of `basis` into a context with block sizes `sizes`.
pub fn context_from_basis(label: &str, basis: &[Vec<C64>], sizes: &[usize]) -> Context {
    let d = basis.len();
    let mut start = 0;
    let mut projectors = Vec::with_capacity(sizes.len());
    for &s in sizes {
        let cols = &basis[start..start + s];
        start += s;
        let b = ComplexMatrix::from_columns(d, cols).expect("columns of length d");
        projectors.push(Projector::new(b.matmul(&b.adjoint()).expect("shapes"), 1e-8).expect("projector"));
    }
    Context::new(label, projectors, 1e-8).expect("orthogonal blocks of a basis form a context")
}

/// A context in `C^d` (`d >= 2`) with a random number of members.
pub fn context<R: Rng + ?Sized>(rng: &mut R, label: &str, d: usize) -> Context {
    assert!(d >= 2, "a context needs at least two dimensions");
    let parts = rng.random_range(2..=d);
    let sizes = block_sizes(rng, d, parts);
    context_from_basis(label, &orthonormal_basis(rng, d), &sizes)
}

/// Two contexts built from different groupings of one shared basis, so every
/// member of one commutes with every member of the other.
pub fn commuting_pair<R: Rng + ?Sized>(rng: &mut R, d: usize) -> (Context, Context) {
    let basis = orthonormal_basis(rng, d);
    let mut shuffled = basis.clone();
    for i in 0..d {
        let j = rng.random_range(i..d);
        shuffled.swap(i, j);
    }
    let (na, nb) = (rng.random_range(2..=d), rng.random_range(2..=d));
    let a = block_sizes(rng, d, na);
    let b = block_sizes(rng, d, nb);
    (context_from_basis("A", &basis, &a), context_from_basis("B", &shuffled, &b))
}
