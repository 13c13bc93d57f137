//! Small dense linear algebra over either scalar backend.

mod eigen;
mod form;
mod matrix;
mod subspace;

pub use eigen::{general_real_eigenvalues, symmetric_eigen, GeneralEigen, SymEigen};
pub use form::{orthogonal_complement, SymBilinearForm};
pub use matrix::Matrix;
pub use subspace::Subspace;

pub(crate) use matrix::default_tol;

use crate::scalar::Scalar;

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    assert_eq!(a.len(), b.len());
    let mut s = F::zero();
    for (x, y) in a.iter().zip(b) {
        s.mul_add(x, y);
    }
    s
}

pub fn add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add_r(y)).collect()
}

pub fn sub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub_r(y)).collect()
}

pub fn scale<F: Scalar>(s: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| x.mul_r(s)).collect()
}

/// `a * x + b * y`
pub fn lin2<F: Scalar>(a: &F, x: &[F], b: &F, y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(u, v)| a.mul_r(u).add_r(&b.mul_r(v))).collect()
}

pub fn zeros<F: Scalar>(n: usize) -> Vec<F> {
    vec![F::zero(); n]
}

pub fn unit<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = zeros(n);
    v[i] = F::one();
    v
}

pub fn max_abs<F: Scalar>(a: &[F]) -> f64 {
    a.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

pub fn is_zero_vec<F: Scalar>(a: &[F], tol: f64) -> bool {
    a.iter().all(|x| x.is_zero_tol(tol))
}

pub fn to_f64_vec<F: Scalar>(a: &[F]) -> Vec<f64> {
    a.iter().map(|x| x.to_f64()).collect()
}

pub fn norm2(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}
