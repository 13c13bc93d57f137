//! Hermitian Jordan algebras, their traceless parts, the circle product on su(n)
//! and the compact classical Lie algebras.

use serde::Serialize;

use super::hurwitz::{HMat, Level};
use crate::algebra::{Algebra, MetrizedAlgebra, Retraction, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SymBilinearForm};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct JordanAlgebraInfo {
    pub rank: usize,
    pub dim: usize,
    pub peirce: usize,
}

impl JordanAlgebraInfo {
    pub fn herm(n: usize, level: Level) -> Self {
        let d = level.size();
        JordanAlgebraInfo { rank: n, dim: n + d * n * (n - 1) / 2, peirce: d }
    }
}

/// Real basis of `herm(n, F)`: the `e_ii`, then `u e_ij + conj(u) e_ji` for `i < j`.
#[derive(Clone, Debug)]
pub struct HermBasis<F> {
    pub n: usize,
    pub level: Level,
    pub elems: Vec<HMat<F>>,
}

impl<F: Scalar> HermBasis<F> {
    pub fn new(n: usize, level: Level) -> Self {
        let mut elems = Vec::new();
        for i in 0..n {
            elems.push(HMat::elementary(n, level, i, i, 0));
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..level.size() {
                    let mut m = HMat::elementary(n, level, i, j, k);
                    let mut c = vec![F::zero(); level.size()];
                    c[k] = if k == 0 { F::one() } else { -F::one() };
                    *m.get_mut(j, i) = c;
                    elems.push(m);
                }
            }
        }
        HermBasis { n, level, elems }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn to_matrix(&self, x: &[F]) -> HMat<F> {
        let mut m = HMat::zero(self.n, self.level);
        for (c, e) in x.iter().zip(&self.elems) {
            if !c.is_zero_tol(0.0) {
                m = m.add(&e.scale(c));
            }
        }
        m
    }

    /// Coordinates of a Hermitian matrix.
    pub fn coords(&self, m: &HMat<F>) -> Vec<F> {
        let mut v = Vec::with_capacity(self.dim());
        for i in 0..self.n {
            v.push(m.get(i, i)[0].clone());
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                v.extend(m.get(i, j).iter().cloned());
            }
        }
        v
    }
}

fn check_herm_args(n: usize, level: Level) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition("Hermitian matrices need n >= 2".into()));
    }
    if level == Level::Octonion && n != 3 {
        return Err(Error::Precondition("octonionic Hermitian matrices need n = 3".into()));
    }
    Ok(())
}

/// `herm(n, F)` with `x * y = (xy + yx)/2` and `h(x, y) = re tr(xy) / n`.
pub fn herm_jordan<F: Scalar>(n: usize, level: Level) -> Result<MetrizedAlgebra<F>> {
    check_herm_args(n, level)?;
    let basis = HermBasis::<F>::new(n, level);
    let k = basis.dim();
    let alg = Algebra::from_fn(format!("herm({n},{})", level.tag()), k, Symmetry::Commutative, |i, j| {
        basis.coords(&basis.elems[i].jordan(&basis.elems[j]))
    });
    let inv_n = F::ratio(1, n as i64);
    let g = Matrix::from_fn(k, k, |i, j| basis.elems[i].mul(&basis.elems[j]).re_trace().mul_r(&inv_n));
    MetrizedAlgebra::new(alg, SymBilinearForm::new(g)?)
}

/// The traceless part as a retraction of `herm(n, F)`, with the inclusion into Hermitian coordinates.
pub fn herm0_model<F: Scalar>(n: usize, level: Level) -> Result<(HermBasis<F>, Retraction<F>)> {
    let full = herm_jordan::<F>(n, level)?;
    let mut r = full.deunitalization()?;
    r.algebra = r.algebra.with_name(format!("herm0({n},{})", level.tag()));
    Ok((HermBasis::new(n, level), r))
}

pub fn herm0<F: Scalar>(n: usize, level: Level) -> Result<MetrizedAlgebra<F>> {
    Ok(herm0_model(n, level)?.1.algebra)
}

/// `gamma(i) = n/(n-2) (e_ii - I/n)` in herm0 coordinates, `i = 0..n`.
pub fn diagonal_generators<F: Scalar>(n: usize, level: Level) -> Result<Vec<Vec<F>>> {
    if n < 3 {
        return Err(Error::Precondition("diagonal generators need n >= 3".into()));
    }
    let (basis, ret) = herm0_model::<F>(n, level)?;
    let c = F::ratio(n as i64, n as i64 - 2);
    let inv_n = F::ratio(1, n as i64);
    (0..n)
        .map(|i| {
            let m = HMat::<F>::elementary(n, level, i, i, 0).sub(&HMat::identity(n, level).scale(&inv_n)).scale(&c);
            ret.coords(&basis.coords(&m)).ok_or_else(|| Error::Precondition("generator outside herm0".into()))
        })
        .collect()
}

/// Builds an algebra on the span of `basis` from a product of matrices.
fn algebra_on_span<F: Scalar>(
    name: String,
    basis: &[HMat<F>],
    symmetry: Symmetry,
    prod: impl Fn(&HMat<F>, &HMat<F>) -> HMat<F>,
) -> Result<Algebra<F>> {
    let amb = basis[0].flatten().len();
    let b = Matrix::from_cols(amb, &basis.iter().map(|m| m.flatten()).collect::<Vec<_>>());
    let k = basis.len();
    let mut cols = Vec::new();
    let mut idx = Vec::new();
    for j in 0..k {
        for i in 0..=j {
            if symmetry == Symmetry::Anticommutative && i == j {
                continue;
            }
            cols.push(prod(&basis[i], &basis[j]).flatten());
            idx.push((i, j));
        }
    }
    let rhs = Matrix::from_cols(amb, &cols);
    let sol = b.solve(&rhs).ok_or_else(|| Error::Precondition("product leaves the span".into()))?;
    if !b.mul(&sol).sub(&rhs).is_zero_tol(linalg::default_tol::<F>() * 1e3) {
        return Err(Error::Precondition("product leaves the span".into()));
    }
    let mut alg = Algebra::zero(name, k, symmetry);
    for (c, &(i, j)) in idx.iter().enumerate() {
        alg.set_product(i, j, sol.col(c));
    }
    Ok(alg)
}

/// Basis of `su(n)`: `i(e_kk - e_k+1,k+1)`, then `e_pq - e_qp` and `i(e_pq + e_qp)` for `p < q`.
pub fn su_basis<F: Scalar>(n: usize) -> Vec<HMat<F>> {
    let lv = Level::Complex;
    let mut out = Vec::new();
    for k in 0..n - 1 {
        out.push(HMat::elementary(n, lv, k, k, 1).sub(&HMat::elementary(n, lv, k + 1, k + 1, 1)));
    }
    for p in 0..n {
        for q in p + 1..n {
            out.push(HMat::elementary(n, lv, p, q, 0).sub(&HMat::elementary(n, lv, q, p, 0)));
            out.push(HMat::elementary(n, lv, p, q, 1).add(&HMat::elementary(n, lv, q, p, 1)));
        }
    }
    out
}

/// Basis of `so(n)`; for `n = 3` the cross-product basis with `[e1, e2] = e3`.
pub fn so_basis<F: Scalar>(n: usize) -> Vec<HMat<F>> {
    let lv = Level::Real;
    let skew = |i: usize, j: usize| HMat::<F>::elementary(n, lv, i, j, 0).sub(&HMat::elementary(n, lv, j, i, 0));
    if n == 3 {
        return vec![skew(2, 1), skew(0, 2), skew(1, 0)];
    }
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            out.push(skew(p, q));
        }
    }
    out
}

/// `re tr(conj(X)^t Y)`.
pub fn frobenius_inner<F: Scalar>(x: &HMat<F>, y: &HMat<F>) -> F {
    x.conj_transpose().mul(y).re_trace()
}

/// A compact Lie algebra with its matrix basis and the Killing form as metric.
#[derive(Clone, Debug)]
pub struct LieModel<F> {
    pub algebra: MetrizedAlgebra<F>,
    pub basis: Vec<HMat<F>>,
    /// `B = scale * f` on this family.
    pub frobenius_scale: F,
}

impl<F: Scalar> LieModel<F> {
    /// Max deviation between the ad-trace Killing form and the scaled Frobenius form.
    pub fn killing_residual(&self) -> f64 {
        let k = self.basis.len();
        let b = self.algebra.h.gram();
        let mut worst = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                let f = frobenius_inner(&self.basis[i], &self.basis[j]).mul_r(&self.frobenius_scale);
                worst = worst.max(b[(i, j)].sub_r(&f).to_f64().abs());
            }
        }
        worst
    }
}

fn lie_model<F: Scalar>(name: String, basis: Vec<HMat<F>>, scale: F) -> Result<LieModel<F>> {
    let alg = algebra_on_span(name, &basis, Symmetry::Anticommutative, |a, b| a.commutator(b))?;
    Ok(LieModel { algebra: MetrizedAlgebra::with_killing(alg), basis, frobenius_scale: scale })
}

/// `so(n)`, Killing form `-(n-2) f`.
pub fn lie_so<F: Scalar>(n: usize) -> Result<LieModel<F>> {
    if n < 3 {
        return Err(Error::Precondition("so(n) needs n >= 3".into()));
    }
    lie_model(format!("so({n})"), so_basis(n), F::from_i64(-(n as i64 - 2)))
}

/// `su(n)`, Killing form `-2n f`.
pub fn lie_su<F: Scalar>(n: usize) -> Result<LieModel<F>> {
    if n < 2 {
        return Err(Error::Precondition("su(n) needs n >= 2".into()));
    }
    lie_model(format!("su({n})"), su_basis(n), F::from_i64(-2 * n as i64))
}

/// `(su(n), x o y = (i/2)(xy + yx - (2/n) tr(xy) I), h = -re tr(xy)/n)`, with its basis.
pub fn su_circle_model<F: Scalar>(n: usize) -> Result<(MetrizedAlgebra<F>, Vec<HMat<F>>)> {
    if n < 2 {
        return Err(Error::Precondition("su(n) needs n >= 2".into()));
    }
    let basis = su_basis::<F>(n);
    let iu = linalg::unit::<F>(2, 1);
    let two_n = F::ratio(2, n as i64);
    let half = F::ratio(1, 2);
    let circle = |a: &HMat<F>, b: &HMat<F>| {
        let s = a.mul(b).add(&b.mul(a));
        let tr = a.mul(b).trace();
        let mut corr = HMat::identity(n, Level::Complex);
        for i in 0..n {
            *corr.get_mut(i, i) = linalg::scale(&two_n, &tr);
        }
        s.sub(&corr).left_scalar(&iu).scale(&half)
    };
    let alg = algebra_on_span(format!("su-circle({n})"), &basis, Symmetry::Commutative, circle)?;
    let inv = F::ratio(-1, n as i64);
    let k = basis.len();
    let g = Matrix::from_fn(k, k, |i, j| basis[i].mul(&basis[j]).re_trace().mul_r(&inv));
    Ok((MetrizedAlgebra::new(alg, SymBilinearForm::new(g)?)?, basis))
}

pub fn su_circle<F: Scalar>(n: usize) -> Result<MetrizedAlgebra<F>> {
    Ok(su_circle_model(n)?.0)
}

/// Matrix of `x -> i x` from the circle algebra on su(n) into herm0(n, C).
pub fn su_to_herm0<F: Scalar>(n: usize) -> Result<Matrix<F>> {
    let (_, basis) = su_circle_model::<F>(n)?;
    let (hb, ret) = herm0_model::<F>(n, Level::Complex)?;
    let iu = linalg::unit::<F>(2, 1);
    let cols = basis
        .iter()
        .map(|x| ret.coords(&hb.coords(&x.left_scalar(&iu))).ok_or_else(|| Error::Precondition("image not traceless Hermitian".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(ret.algebra.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn herm_dimensions() {
        assert_eq!(HermBasis::<Q>::new(3, Level::Octonion).dim(), 27);
        assert_eq!(JordanAlgebraInfo::herm(3, Level::Octonion).dim, 27);
        assert_eq!(HermBasis::<Q>::new(4, Level::Quaternion).dim(), 28);
        assert!(herm_jordan::<Q>(4, Level::Octonion).is_err());
    }

    #[test]
    fn herm_unit_and_trace() {
        let h = herm_jordan::<Q>(3, Level::Real).unwrap();
        let e = h.algebra.find_unit().unwrap();
        assert_eq!(e, vec![q(1, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(h.h.norm2(&e), q(1, 1));
        // tr L(I) = N = (N/r) tr I
        assert_eq!(linalg::dot(&h.algebra.trace_linear(), &e), q(6, 1));
    }

    #[test]
    fn so3_cross_product_basis() {
        let so3 = lie_so::<Q>(3).unwrap();
        let e = |i| linalg::unit::<Q>(3, i);
        assert_eq!(so3.algebra.mul(&e(0), &e(1)), e(2));
        assert_eq!(so3.algebra.h.gram()[(0, 0)], q(-2, 1));
        assert_eq!(so3.killing_residual(), 0.0);
    }

    #[test]
    fn su2_killing_is_minus_four_frobenius() {
        let su2 = lie_su::<Q>(2).unwrap();
        assert_eq!(su2.algebra.dim(), 3);
        assert_eq!(su2.killing_residual(), 0.0);
    }
}
