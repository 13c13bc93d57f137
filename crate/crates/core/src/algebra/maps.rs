use crate::error::{Error, Result};
use crate::linalg::{self, default_tol, Matrix};
use crate::scalar::{Scalar, Q};

use super::{Algebra, Check, MetrizedAlgebra};

/// Linear map given by its matrix (target dim x source dim).
pub type LinearMap<F> = Matrix<F>;

/// Checks `psi(e_i e_j) = psi(e_i) psi(e_j)` on basis pairs.
pub fn verify_homomorphism<F: Scalar>(psi: &LinearMap<F>, a: &Algebra<F>, b: &Algebra<F>) -> Result<Check> {
    if psi.cols() != a.dim() || psi.rows() != b.dim() {
        return Err(Error::Shape("map does not fit the algebras".into()));
    }
    let imgs = psi.col_vecs();
    let mut worst = F::zero();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let lhs = psi.matvec(&a.basis_product(i, j));
            let rhs = b.mul(&imgs[i], &imgs[j]);
            for d in linalg::sub(&lhs, &rhs) {
                if d.abs() > worst {
                    worst = d.abs();
                }
            }
        }
    }
    Ok(Check::from_residual(&worst, default_tol::<F>() * 10.0))
}

/// Homomorphism check plus `psi^* g = h`.
pub fn verify_isometric<F: Scalar>(
    psi: &LinearMap<F>,
    a: &MetrizedAlgebra<F>,
    b: &MetrizedAlgebra<F>,
) -> Result<Check> {
    let hom = verify_homomorphism(psi, &a.algebra, &b.algebra)?;
    let pulled = psi.transpose().mul(b.h.gram()).mul(psi);
    let mut worst = F::zero();
    for d in pulled.sub(a.h.gram()).entries() {
        if d.abs() > worst {
            worst = d.abs();
        }
    }
    let met = Check::from_residual(&worst, default_tol::<F>() * 10.0);
    Ok(Check { holds: hom.holds && met.holds, residual: hom.residual.max(met.residual) })
}

/// `(A g^2 + B g, B g - 2)`.
pub fn griess_einstein<F: Scalar>(a: &F, b: &F, gee: &F) -> (F, F) {
    let dim = a.mul_r(gee).mul_r(gee).add_r(&b.mul_r(gee));
    let kappa = b.mul_r(gee).sub_r(&F::from_i64(2));
    (dim, kappa)
}

/// `(-5c^2 + 88(n-2) - 2c(n+20)) / (4(5c+22))`.
pub fn voa_kappa(c: &Q, n: &Q) -> Result<Q> {
    let den = (Q::from_i64(5) * c + Q::from_i64(22)) * Q::from_i64(4);
    if Scalar::is_zero(&den) {
        return Err(Error::Degenerate("5c + 22 = 0".into()));
    }
    let num = Q::from_i64(-5) * c * c + Q::from_i64(88) * (n - Q::from_i64(2))
        - Q::from_i64(2) * c * (n + Q::from_i64(20));
    Ok(num / den)
}
