//! The algebras with basis idempotents `e_i e_j = alpha (e_i + e_j)` and the
//! simplicial algebras, plus their reflections and tensor-product witnesses.

use crate::algebra::{Algebra, MetrizedAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// `e_i e_i = e_i`, `e_i e_j = alpha (e_i + e_j)`.
pub fn talg<F: Scalar>(n: usize, alpha: &F) -> Result<Algebra<F>> {
    if n < 2 {
        return Err(Error::Precondition("talg needs n >= 2".into()));
    }
    Ok(Algebra::from_fn(format!("talg({n},{alpha})"), n, Symmetry::Commutative, |i, j| {
        if i == j {
            linalg::unit(n, i)
        } else {
            let mut v = linalg::zeros(n);
            v[i] = alpha.clone();
            v[j] = alpha.clone();
            v
        }
    }))
}

/// The simplicial algebra on `gamma_1..gamma_n`, metrized by its Killing form.
pub fn simplicial<F: Scalar>(n: usize) -> Result<MetrizedAlgebra<F>> {
    if n < 2 {
        return Err(Error::Precondition("simplicial algebra needs n >= 2".into()));
    }
    let a = talg(n, &F::ratio(-1, n as i64 - 1))?.with_name(format!("ealg({n})"));
    Ok(MetrizedAlgebra::with_killing(a))
}

/// `gamma_i` for `i = 0..=n`, with `gamma_0 = -sum gamma_i`.
pub fn gamma<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    if i == 0 {
        vec![-F::one(); n]
    } else {
        linalg::unit(n, i - 1)
    }
}

/// The surjection `T^{n+1} -> T^n` (same alpha) sending `e_0` to `gamma_0` and `e_i` to `gamma_i`.
pub fn two_models_map<F: Scalar>(n: usize) -> Matrix<F> {
    Matrix::from_cols(n, &(0..=n).map(|i| gamma::<F>(n, i)).collect::<Vec<_>>())
}

/// Reflection through the hyperplane orthogonal to `gamma_i - gamma_j`.
pub fn simplicial_reflection<F: Scalar>(n: usize, i: usize, j: usize) -> Result<Matrix<F>> {
    if i >= j || j > n {
        return Err(Error::Precondition(format!("need 0 <= i < j <= {n}")));
    }
    let tau = simplicial::<F>(n)?.h;
    let r = linalg::sub(&gamma::<F>(n, i), &gamma::<F>(n, j));
    let rr = tau.norm2(&r);
    let cols: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let x = linalg::unit::<F>(n, k);
            let c = F::from_i64(2).mul_r(&tau.eval(&r, &x)).div_r(&rr);
            linalg::sub(&x, &linalg::scale(&c, &r))
        })
        .collect();
    Ok(Matrix::from_cols(n, &cols))
}

/// `gamma_i (x) gamma_alpha` in `E^2 (x) E^n`.
pub fn tensor_basis_elem<F: Scalar>(n: usize, i: usize, alpha: usize) -> Vec<F> {
    let a = gamma::<F>(2, i);
    let b = gamma::<F>(n, alpha);
    a.iter().flat_map(|x| b.iter().map(move |y| x.mul_r(y))).collect()
}

/// Witness elements in `E^2 (x) E^n`.
#[derive(Clone, Debug)]
pub struct TensorWitnesses<F> {
    pub n: usize,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Scalar> TensorWitnesses<F> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("tensor witnesses need n >= 2".into()));
        }
        Ok(TensorWitnesses { n, _marker: std::marker::PhantomData })
    }

    fn distinct(&self, idx: [usize; 3]) -> Result<()> {
        let [a, b, c] = idx;
        if a == b || b == c || a == c || a.max(b).max(c) > self.n {
            return Err(Error::Precondition("indices must be distinct and at most n".into()));
        }
        Ok(())
    }

    fn e(&self, i: usize, a: usize) -> Vec<F> {
        tensor_basis_elem(self.n, i, a)
    }

    /// `(n-1)/(n+1) (e_{0a} + e_{1b} + e_{2c})`.
    pub fn a(&self, al: usize, be: usize, ga: usize) -> Result<Vec<F>> {
        self.distinct([al, be, ga])?;
        let n = self.n as i64;
        let s = linalg::add(&linalg::add(&self.e(0, al), &self.e(1, be)), &self.e(2, ga));
        Ok(linalg::scale(&F::ratio(n - 1, n + 1), &s))
    }

    fn row_sum(&self, i: usize, al: usize, be: usize, ga: usize) -> Vec<F> {
        linalg::add(&linalg::add(&self.e(i, al), &self.e(i, be)), &self.e(i, ga))
    }

    /// `(n-1)/(n-5) (e_{ia} + e_{ib} + e_{ic})`; undefined at `n = 5`.
    pub fn b(&self, i: usize, al: usize, be: usize, ga: usize) -> Result<Vec<F>> {
        self.distinct([al, be, ga])?;
        if self.n == 5 {
            return Err(Error::Precondition("b is undefined for n = 5; use z".into()));
        }
        let n = self.n as i64;
        Ok(linalg::scale(&F::ratio(n - 1, n - 5), &self.row_sum(i, al, be, ga)))
    }

    /// `4/3 (e_{ia} + e_{ib} + e_{ic})`, the square-zero replacement for `b` at `n = 5`.
    pub fn z(&self, i: usize, al: usize, be: usize, ga: usize) -> Result<Vec<F>> {
        self.distinct([al, be, ga])?;
        Ok(linalg::scale(&F::ratio(4, 3), &self.row_sum(i, al, be, ga)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn products_by_hand() {
        let t = talg::<Q>(3, &q(1, 2)).unwrap();
        let e = |i| linalg::unit::<Q>(3, i);
        assert_eq!(t.mul(&e(0), &e(1)), vec![q(1, 2), q(1, 2), q(0, 1)]);
        let e2 = simplicial::<Q>(2).unwrap();
        assert_eq!(e2.mul(&gamma(2, 1), &gamma(2, 2)), gamma::<Q>(2, 0));
        assert!(talg::<Q>(1, &q(0, 1)).is_err());
    }

    #[test]
    fn gamma_zero_is_idempotent() {
        for n in 2..6 {
            let e = simplicial::<Q>(n).unwrap();
            let g0 = gamma::<Q>(n, 0);
            assert_eq!(e.mul(&g0, &g0), g0);
            assert_eq!(e.h.norm2(&g0), q(n as i64, n as i64 - 1));
        }
    }

    #[test]
    fn reflection_swaps_gammas() {
        let f = simplicial_reflection::<Q>(2, 0, 1).unwrap();
        assert_eq!(f.matvec(&gamma(2, 0)), gamma::<Q>(2, 1));
        assert_eq!(f.matvec(&gamma(2, 2)), gamma::<Q>(2, 2));
        assert_eq!(f.mul(&f), Matrix::identity(2));
        assert!(simplicial_reflection::<Q>(2, 1, 1).is_err());
        assert!(simplicial_reflection::<Q>(2, 0, 3).is_err());
    }

    #[test]
    fn witnesses_reject_repeats() {
        let w = TensorWitnesses::<Q>::new(3).unwrap();
        assert!(w.a(0, 0, 1).is_err());
        assert!(w.a(0, 1, 4).is_err());
    }
}
