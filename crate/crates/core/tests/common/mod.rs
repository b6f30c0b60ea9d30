#![allow(dead_code)]

use nalgebra::DMatrix;
use qprop::linalg::{ComplexMatrix, C64};
use qprop::Subspace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Null space of `m` from its SVD: right singular vectors with singular value
/// at most `tol`.
pub fn null_space(m: &DMatrix<C64>, tol: f64) -> Vec<Vec<C64>> {
    let n = m.ncols();
    // pad with zero rows so the SVD returns a full set of right singular vectors
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::<C64>::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    (0..n)
        .filter(|&k| svd.singular_values[k] <= tol)
        .map(|k| (0..n).map(|j| v_t[(k, j)].conj()).collect())
        .collect()
}

/// Intersection of two subspaces as the null space of `[(I−P_a); (I−P_b)]`.
pub fn meet_oracle(a: &Subspace, b: &Subspace) -> Subspace {
    let d = a.ambient_dim();
    let id = ComplexMatrix::identity(d);
    let qa = to_na(&id.sub(a.projector().matrix()).unwrap());
    let qb = to_na(&id.sub(b.projector().matrix()).unwrap());
    let mut stacked = DMatrix::<C64>::zeros(2 * d, d);
    stacked.view_mut((0, 0), (d, d)).copy_from(&qa);
    stacked.view_mut((d, 0), (d, d)).copy_from(&qb);
    let basis = null_space(&stacked, 1e-7);
    Subspace::from_spanning(d, &basis, 1e-9).unwrap()
}

/// Least-squares residual of `basis · x = v`.
pub fn residual(s: &Subspace, v: &[C64]) -> f64 {
    if s.dim() == 0 {
        return v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let b = to_na(s.basis());
    let rhs = DMatrix::from_column_slice(v.len(), 1, v);
    let svd = b.clone().svd(true, true);
    let x = svd.solve(&rhs, 1e-12).unwrap();
    (b * x - rhs).norm()
}

pub fn mutually_contained(a: &Subspace, b: &Subspace, tol: f64) -> bool {
    a.is_contained_in(b, tol).unwrap() && b.is_contained_in(a, tol).unwrap()
}
