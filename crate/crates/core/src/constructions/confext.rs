//! Conformal extension of an exact algebra by one dimension.

use crate::algebra::{Algebra, MetrizedAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SymBilinearForm};
use crate::scalar::Scalar;

/// Coefficients of the extended product.
///
/// `b` multiplies `x y` and `b c` multiplies the cross terms, with
/// `c^2 (n+2)(n-1) = 1` and `b^-2 = c^2 n(n+1)`. `beta` rescales the whole product.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfExtConfig<F> {
    pub n: usize,
    pub beta: F,
    pub b: F,
    pub c: F,
}

impl<F: Scalar> ConfExtConfig<F> {
    /// Positive roots for `b` and `c`, `beta = 1`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::with_beta(n, F::one())
    }

    pub fn with_beta(n: usize, beta: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("conformal extension needs dim >= 2".into()));
        }
        let ni = n as i64;
        let irrational = || Error::Backend(format!("radicands for n = {n} are not squares in this backend"));
        let c = F::from_i64((ni + 2) * (ni - 1)).sqrt().ok_or_else(irrational)?.recip();
        let b = F::ratio((ni + 2) * (ni - 1), (ni + 1) * ni).sqrt().ok_or_else(irrational)?;
        Ok(ConfExtConfig { n, beta, b, c })
    }

    /// Residuals of the two defining relations.
    pub fn relation_residuals(&self) -> (F, F) {
        let ni = self.n as i64;
        let c2 = self.c.mul_r(&self.c);
        let r1 = c2.mul_r(&F::from_i64((ni + 2) * (ni - 1))).sub_r(&F::one());
        let b2 = self.b.mul_r(&self.b);
        let r2 = b2.mul_r(&c2).mul_r(&F::from_i64(ni * (ni + 1))).sub_r(&F::one());
        (r1, r2)
    }
}

/// `(x, r)(y, s) = beta (b x y - b c (s x + r y), b c (n r s - tau(x, y)))`
/// with `tau` the metric of `ma`. The new coordinate is last.
pub fn conformal_extension<F: Scalar>(ma: &MetrizedAlgebra<F>, cfg: &ConfExtConfig<F>) -> Result<MetrizedAlgebra<F>> {
    let a = &ma.algebra;
    let n = a.dim();
    if a.symmetry() != Symmetry::Commutative {
        return Err(Error::Precondition("conformal extension needs a commutative algebra".into()));
    }
    if cfg.n != n {
        return Err(Error::Shape(format!("config built for dim {}, algebra has dim {n}", cfg.n)));
    }
    if !a.is_exact() {
        return Err(Error::Precondition("conformal extension needs an exact algebra".into()));
    }
    if !ma.h.is_nondegenerate() {
        return Err(Error::Degenerate("metric of the base algebra".into()));
    }
    let bb = cfg.beta.mul_r(&cfg.b);
    let bc = bb.mul_r(&cfg.c);
    let nf = F::from_i64(n as i64);
    let out = Algebra::from_fn(format!("confext({})", a.name()), n + 1, Symmetry::Commutative, |i, j| {
        let mut v = linalg::zeros(n + 1);
        match (i == n, j == n) {
            (false, false) => {
                for (k, p) in a.basis_product(i, j).iter().enumerate() {
                    v[k] = bb.mul_r(p);
                }
                v[n] = -bc.mul_r(&ma.h.gram()[(i, j)]);
            }
            (false, true) | (true, false) => {
                let k = if i == n { j } else { i };
                v[k] = -bc.clone();
            }
            (true, true) => v[n] = bc.mul_r(&nf),
        }
        v
    });
    let b2 = cfg.beta.mul_r(&cfg.beta);
    let g = ma.h.gram().block_diag(&Matrix::identity(1)).scale(&b2);
    Ok(MetrizedAlgebra::new(out, SymBilinearForm::new(g)?)?)
}

/// The canonical idempotent `(0, sqrt((n+1)/n)) / beta`.
pub fn canonical_idempotent<F: Scalar>(cfg: &ConfExtConfig<F>) -> Result<Vec<F>> {
    let ni = cfg.n as i64;
    let t = F::ratio(ni + 1, ni)
        .sqrt()
        .ok_or_else(|| Error::Backend("sqrt((n+1)/n) is irrational".into()))?;
    let mut v = linalg::zeros(cfg.n + 1);
    v[cfg.n] = t.div_r(&cfg.beta);
    Ok(v)
}

/// Lifts of an idempotent `e` of the base algebra with `|e|^2 = norm2`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentLift {
    pub s_minus: f64,
    pub s_plus: f64,
    pub phi_minus: f64,
    pub phi_plus: f64,
}

/// `phi(s) = n(n+1)(n+1-2s) / (4 s^2)`, the squared norm of the lifted idempotent.
pub fn confext_phi(n: usize, s: f64) -> f64 {
    let n = n as f64;
    n * (n + 1.0) * (n + 1.0 - 2.0 * s) / (4.0 * s * s)
}

pub fn confext_idempotent_data(n: usize, norm2: f64) -> Result<IdempotentLift> {
    if !(norm2 > 0.0) {
        return Err(Error::Precondition("idempotent norm must be positive".into()));
    }
    let nf = n as f64;
    let c2 = 1.0 / ((nf + 2.0) * (nf - 1.0));
    let u = 4.0 * c2 * norm2;
    let root = (1.0 + (nf + 2.0) * u).sqrt();
    let s_minus = (-1.0 - u - root) / u;
    let s_plus = (-1.0 - u + root) / u;
    Ok(IdempotentLift {
        s_minus,
        s_plus,
        phi_minus: confext_phi(n, s_minus),
        phi_plus: confext_phi(n, s_plus),
    })
}

/// Spectrum map for a lifted idempotent: `lambda -> (2(s+1) lambda - 1) / (2 s)`.
pub fn lifted_eigenvalue(s: f64, lambda: f64) -> f64 {
    (2.0 * (s + 1.0) * lambda - 1.0) / (2.0 * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplicial::simplicial;

    #[test]
    fn rational_config_rejects_irrational_radicands() {
        assert!(ConfExtConfig::<crate::Q>::standard(2).is_err());
        let cfg = ConfExtConfig::<f64>::standard(4).unwrap();
        let (r1, r2) = cfg.relation_residuals();
        assert!(r1.abs() < 1e-14 && r2.abs() < 1e-14);
    }

    #[test]
    fn canonical_idempotent_scales_base_by_minus_one_over_n() {
        let e3 = simplicial::<f64>(3).unwrap();
        let cfg = ConfExtConfig::standard(3).unwrap();
        let ext = conformal_extension(&e3, &cfg).unwrap();
        let e = canonical_idempotent(&cfg).unwrap();
        let ee = ext.mul(&e, &e);
        assert!(linalg::norm2(&linalg::sub(&ee, &e)) < 1e-12);
        let x = vec![1.0, -2.0, 0.5, 0.0];
        let ex = ext.mul(&e, &x);
        assert!(linalg::norm2(&linalg::sub(&ex, &linalg::scale(&(-1.0 / 3.0), &x))) < 1e-12);
        assert!((ext.inner(&e, &e) - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn minimal_lift_matches_closed_form() {
        for n in 2..6 {
            let nf = n as f64;
            let d = confext_idempotent_data(n, nf / (nf - 1.0)).unwrap();
            assert!((d.s_minus + nf * (nf + 1.0) / 2.0).abs() < 1e-9);
            assert!((d.phi_minus - (nf + 1.0) / nf).abs() < 1e-9);
        }
        assert!(confext_idempotent_data(3, 0.0).is_err());
        assert!((confext_phi(3, -1.0) - 3.0 * 4.0 * 6.0 / 4.0).abs() < 1e-12);
    }
}
