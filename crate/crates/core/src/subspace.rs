//! Closed subspaces of `C^d` held as orthonormal bases, their projectors, and
//! the ortholattice operations on them.
//!
//! Every subspace is stored as a `d x r` matrix with orthonormal columns; the
//! zero subspace is the `d x 0` matrix and goes through the same code paths as
//! everything else. Equality is decided on projectors: two subspaces are equal
//! when `||P_a - P_b||_F <= eps`.

use crate::context::Context;
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, C64, ZERO};

/// Default tolerance for rank cutoffs, membership and equality tests.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct Projector {
    matrix: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl Subspace {
    /// `{0}` inside `C^d`.
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ComplexMatrix::zeros(ambient_dim, 0),
        }
    }

    /// The whole space `C^d`.
    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ComplexMatrix::identity(ambient_dim),
        }
    }

    /// Span of `vectors`, orthonormalized.
    ///
    /// Directions whose residual after orthogonalization is at most
    /// `tol * max_i ||v_i||` are dropped. `tol == 0` selects [`DEFAULT_EPS`].
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<C64>], tol: f64) -> Result<Self> {
        for v in vectors {
            check_dim(ambient_dim, v.len())?;
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let tol = if tol > 0.0 { tol } else { DEFAULT_EPS };
        let scale = vectors.iter().map(|v| linalg::norm(v)).fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(Self::zero(ambient_dim));
        }
        let q = linalg::orthonormalize(vectors, tol * scale, Some(ambient_dim));
        Self::from_orthonormal_columns(ambient_dim, &q)
    }

    /// Wraps columns that are already orthonormal. Not checked.
    pub(crate) fn from_orthonormal_columns(ambient_dim: usize, cols: &[Vec<C64>]) -> Result<Self> {
        Ok(Subspace {
            ambient_dim,
            basis: ComplexMatrix::from_columns(ambient_dim, cols)?,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the subspace itself.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<C64>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_full()
    }

    /// `basis * basis†`.
    pub fn projector(&self) -> Projector {
        Projector {
            matrix: self
                .basis
                .matmul(&self.basis.adjoint())
                .expect("basis shapes are consistent"),
        }
    }

    fn project(&self, v: &[C64]) -> Vec<C64> {
        let coeffs: Vec<C64> = self.basis.columns().iter().map(|q| linalg::inner(q, v)).collect();
        let mut out = vec![ZERO; self.ambient_dim];
        for (j, c) in coeffs.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += c * self.basis[(i, j)];
            }
        }
        out
    }

    /// Orthogonal complement.
    pub fn complement(&self) -> Subspace {
        let d = self.ambient_dim;
        if self.is_zero() {
            return Self::full(d);
        }
        if self.is_full() {
            return Self::zero(d);
        }
        let mut rest = self.projector().matrix.scale(C64::new(-1.0, 0.0));
        for i in 0..d {
            rest[(i, i)] += C64::new(1.0, 0.0);
        }
        let q = linalg::orthonormalize(&rest.columns(), 0.0, Some(d - self.dim()));
        Subspace {
            ambient_dim: d,
            basis: ComplexMatrix::from_columns(d, &q).expect("columns have ambient length"),
        }
    }

    /// Closed span of `self ∪ other`.
    pub fn join(&self, other: &Subspace, eps: f64) -> Result<Subspace> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors());
        Subspace::from_spanning(self.ambient_dim, &cols, eps)
    }

    /// Intersection, computed as `(a⊥ ∨ b⊥)⊥`.
    pub fn meet(&self, other: &Subspace, eps: f64) -> Result<Subspace> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        Ok(self.complement().join(&other.complement(), eps)?.complement())
    }

    /// `||P v - v|| <= tol * ||v||`. The zero subspace contains no nonzero vector.
    pub fn contains_vector(&self, v: &StateVector, tol: f64) -> Result<bool> {
        self.contains_raw(v.amplitudes(), tol)
    }

    pub(crate) fn contains_raw(&self, v: &[C64], tol: f64) -> Result<bool> {
        Ok(self.residual(v)? <= tol * linalg::norm(v))
    }

    /// `||P v - v||`.
    fn residual(&self, v: &[C64]) -> Result<f64> {
        check_dim(self.ambient_dim, v.len())?;
        let pv = self.project(v);
        Ok(pv
            .iter()
            .zip(v)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Whether `self ⊆ outer`, checked column by column.
    pub fn is_contained_in(&self, outer: &Subspace, tol: f64) -> Result<bool> {
        check_dim(self.ambient_dim, outer.ambient_dim)?;
        if self.dim() > outer.dim() {
            return Ok(false);
        }
        for u in self.basis_vectors() {
            if !outer.contains_raw(&u, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `p` maps this subspace into itself.
    pub fn is_invariant_under(&self, p: &Projector, tol: f64) -> Result<bool> {
        check_dim(self.ambient_dim, p.ambient_dim())?;
        for u in self.basis_vectors() {
            // absolute test: `p` may annihilate `u` only up to roundoff
            let pu = p.matrix.apply(&u)?;
            if self.residual(&pu)? > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as subspaces: same dimension and `||P_a - P_b||_F <= eps`.
    pub fn approx_eq(&self, other: &Subspace, eps: f64) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.projector_distance(other) <= eps
    }

    pub fn projector_distance(&self, other: &Subspace) -> f64 {
        self.projector()
            .matrix
            .sub(&other.projector().matrix)
            .map_or(f64::INFINITY, |m| m.frobenius_norm())
    }

    /// Subspace commutativity in the lattice sense:
    /// `a ∩ (a ∩ b⊥)⊥ ⊆ b`.
    pub fn commutes_with(&self, other: &Subspace, eps: f64) -> Result<bool> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let a_and_not_b = self.meet(&other.complement(), eps)?;
        let lhs = self.meet(&a_and_not_b.complement(), eps)?;
        lhs.is_contained_in(other, eps)
    }
}

/// Internal direct sum of pairwise orthogonal subspaces.
///
/// `ambient_dim` is only consulted when `parts` is empty.
pub fn subspace_sum(ambient_dim: usize, parts: &[Subspace], eps: f64) -> Result<Subspace> {
    let Some(first) = parts.first() else {
        return Ok(Subspace::zero(ambient_dim));
    };
    let d = first.ambient_dim;
    for p in parts {
        check_dim(d, p.ambient_dim)?;
    }
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            let overlap = a.basis.adjoint().matmul(&b.basis)?.max_abs();
            if overlap > eps {
                return Err(Error::NotOrthogonal { overlap });
            }
        }
    }
    let cols: Vec<Vec<C64>> = parts.iter().flat_map(Subspace::basis_vectors).collect();
    Subspace::from_spanning(d, &cols, eps)
}

impl Projector {
    /// Validates Hermiticity and idempotence to within `tol` (max-entry norm).
    pub fn new(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let asymmetry = matrix.hermitian_defect();
        let idempotence = matrix.matmul(&matrix)?.sub(&matrix)?.max_abs();
        if asymmetry > tol || idempotence > tol {
            return Err(Error::NotAProjector {
                asymmetry,
                idempotence,
            });
        }
        Ok(Projector { matrix })
    }

    pub fn identity(d: usize) -> Self {
        Projector {
            matrix: ComplexMatrix::identity(d),
        }
    }

    pub fn zero(d: usize) -> Self {
        Projector {
            matrix: ComplexMatrix::zeros(d, d),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `round(tr P)`.
    pub fn rank(&self) -> usize {
        self.matrix.trace().re.round().max(0.0) as usize
    }

    /// `1 - P`.
    pub fn negate(&self) -> Projector {
        let d = self.ambient_dim();
        Projector {
            matrix: ComplexMatrix::identity(d)
                .sub(&self.matrix)
                .expect("square of the same size"),
        }
    }

    /// Orthonormal basis of the eigenvalue-1 eigenspace.
    pub fn range(&self, tol: f64) -> Result<Subspace> {
        let checked = Projector::new(self.matrix.clone(), tol)?;
        let d = checked.ambient_dim();
        let rank = checked.rank();
        let q = linalg::orthonormalize(&checked.matrix.columns(), tol, Some(rank));
        if q.len() != rank {
            return Err(Error::NotAProjector {
                asymmetry: checked.matrix.hermitian_defect(),
                idempotence: (rank - q.len()) as f64,
            });
        }
        Subspace::from_orthonormal_columns(d, &q)
    }

    /// `||P - Q||_F <= eps`.
    pub fn approx_eq(&self, other: &Projector, eps: f64) -> bool {
        self.matrix
            .sub(&other.matrix)
            .is_ok_and(|m| m.frobenius_norm() <= eps)
    }

    pub fn kron(&self, other: &Projector) -> Projector {
        Projector {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

/// `[P, Q] = PQ - QP`.
pub fn commutator(p: &Projector, q: &Projector) -> Result<ComplexMatrix> {
    matrix_commutator(p.matrix(), q.matrix())
}

pub(crate) fn matrix_commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Commutator of two observables given by their spectral decompositions:
/// `Σ_n Σ_m p_n q_m [P_n, Q_m]`.
pub fn observable_commutator(
    p_spec: &[(f64, Projector)],
    q_spec: &[(f64, Projector)],
    eps: f64,
) -> Result<ComplexMatrix> {
    for (name, spec) in [("p", p_spec), ("q", q_spec)] {
        let projectors = spec.iter().map(|(_, p)| p.clone()).collect();
        Context::new(name, projectors, eps)
            .map_err(|e| Error::InvalidSpectralDecomposition(format!("{name}: {e}")))?;
    }
    let d = p_spec[0].1.ambient_dim();
    check_dim(d, q_spec[0].1.ambient_dim())?;
    let mut acc = ComplexMatrix::zeros(d, d);
    for (pn, pp) in p_spec {
        for (qm, qp) in q_spec {
            let c = commutator(pp, qp)?;
            acc = acc.add(&c.scale(C64::new(pn * qm, 0.0)))?;
        }
    }
    Ok(acc)
}

impl StateVector {
    /// Normalizes `amplitudes`; rejects vectors with norm `<= DEFAULT_EPS`.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = linalg::norm(&amplitudes);
        if n <= DEFAULT_EPS {
            return Err(Error::ZeroVector);
        }
        Ok(StateVector {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn ambient_dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// One-dimensional span of the state.
    pub fn span(&self) -> Subspace {
        Subspace::from_orthonormal_columns(self.ambient_dim(), std::slice::from_ref(&self.amplitudes))
            .expect("state has its own dimension")
    }
}
