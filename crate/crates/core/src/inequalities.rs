//! Commutator norm inequalities over Hurwitz matrices and the constant `bw` of a compact Lie algebra.

use serde::Serialize;

use crate::algebra::{MetrizedAlgebra, Symmetry};
use crate::analysis::extremize::{refine, renormalize};
use crate::constructions::hurwitz::{HMat, Level};
use crate::error::{Error, Result};
use crate::linalg::{self, symmetric_eigen, Matrix};
use crate::random;
use crate::scalar::Scalar;

fn same_shape<F: Scalar>(x: &HMat<F>, y: &HMat<F>) -> Result<()> {
    if (x.n, x.level) != (y.n, y.level) {
        return Err(Error::Shape("matrices differ in size or level".into()));
    }
    Ok(())
}

/// `f(X, Y) = re tr(conj(X)^t Y)`.
pub fn frobenius<F: Scalar>(x: &HMat<F>, y: &HMat<F>) -> Result<F> {
    same_shape(x, y)?;
    Ok(x.conj_transpose().mul(y).re_trace())
}

fn fnorm2<F: Scalar>(x: &HMat<F>) -> F {
    // sum of squared coordinates, equal to f(X, X) at every level
    linalg::dot(&x.flatten(), &x.flatten())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BwDomain {
    /// Hermitian at an associative level, or octonionic `n = 3` with diagonal `X`.
    Proved,
    /// Octonionic Hermitian pair outside the case covered by the known proof.
    Unproved,
    NotHermitian,
}

#[derive(Clone, Debug)]
pub struct BwResidual<F> {
    /// `2(|X|^2 |Y|^2 - f(X, Y)^2) - |[X, Y]|^2`.
    pub residual: F,
    pub domain: BwDomain,
}

fn is_hermitian_tol<F: Scalar>(x: &HMat<F>) -> bool {
    x.conj_transpose().sub(x).is_zero()
}

pub fn bw_residual<F: Scalar>(x: &HMat<F>, y: &HMat<F>) -> Result<BwResidual<F>> {
    same_shape(x, y)?;
    let c = x.commutator(y);
    let fxy = frobenius(x, y)?;
    let two = F::from_i64(2);
    let residual = two.mul_r(&fnorm2(x).mul_r(&fnorm2(y)).sub_r(&fxy.mul_r(&fxy))).sub_r(&fnorm2(&c));
    let domain = if !is_hermitian_tol(x) || !is_hermitian_tol(y) {
        BwDomain::NotHermitian
    } else if x.level == Level::Octonion && !(x.n == 3 && (x.is_diagonal() || y.is_diagonal())) {
        BwDomain::Unproved
    } else {
        BwDomain::Proved
    };
    Ok(BwResidual { residual, domain })
}

/// Residuals of the identities behind the reduction to `|[P, Q]|^2 <= bw |P|^2 |Q|^2`.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionResiduals {
    /// `[P, Q] - 2|X||Y|[X, Y]`, max-norm.
    pub commutator: f64,
    /// `|[X, Y]|^2 - |[P, Q]|^2 / (4|X|^2|Y|^2)`.
    pub first: f64,
    /// `|P|^2 |Q|^2 / (2|X|^2|Y|^2) - 2(|X|^2|Y|^2 - f(X, Y)^2)`.
    pub last: f64,
    /// `|[P, Q]|^2 / (|P|^2 |Q|^2)` when both are nonzero.
    pub pq_ratio: Option<f64>,
}

/// Uses exact norms when they are rational, floats otherwise.
pub fn bw_reduction_check<F: Scalar>(x: &HMat<F>, y: &HMat<F>) -> Result<ReductionResiduals> {
    same_shape(x, y)?;
    if x.is_zero() || y.is_zero() {
        return Err(Error::Precondition("reduction needs nonzero matrices".into()));
    }
    match (fnorm2(x).sqrt(), fnorm2(y).sqrt()) {
        (Some(a), Some(b)) => reduction_with(x, y, a, b),
        _ => {
            let xf = to_f64_mat(x);
            let yf = to_f64_mat(y);
            let (a, b) = (f64::sqrt(fnorm2(&xf)), f64::sqrt(fnorm2(&yf)));
            reduction_with(&xf, &yf, a, b)
        }
    }
}

fn to_f64_mat<F: Scalar>(x: &HMat<F>) -> HMat<f64> {
    HMat { n: x.n, level: x.level, entries: x.entries.iter().map(|e| linalg::to_f64_vec(e)).collect() }
}

fn reduction_with<F: Scalar>(x: &HMat<F>, y: &HMat<F>, a: F, b: F) -> Result<ReductionResiduals> {
    let p = x.scale(&b).sub(&y.scale(&a));
    let q = x.scale(&b).add(&y.scale(&a));
    let ab = a.mul_r(&b);
    let two = F::from_i64(2);
    let cxy = x.commutator(y);
    let cpq = p.commutator(&q);
    let commutator = linalg::max_abs(&cpq.sub(&cxy.scale(&two.mul_r(&ab))).flatten());
    let a2b2 = ab.mul_r(&ab);
    let first = fnorm2(&cxy).sub_r(&fnorm2(&cpq).div_r(&F::from_i64(4).mul_r(&a2b2))).to_f64().abs();
    let fxy = frobenius(x, y)?;
    let (np, nq) = (fnorm2(&p), fnorm2(&q));
    let last = np
        .mul_r(&nq)
        .div_r(&two.mul_r(&a2b2))
        .sub_r(&two.mul_r(&a2b2.sub_r(&fxy.mul_r(&fxy))))
        .to_f64()
        .abs();
    let tol = linalg::default_tol::<F>();
    let pq_ratio = (!np.is_zero_tol(tol) && !nq.is_zero_tol(tol)).then(|| fnorm2(&cpq).div_r(&np.mul_r(&nq)).to_f64());
    Ok(ReductionResiduals { commutator, first, last, pq_ratio })
}

/// The equality pair `e_11 - e_nn`, `e_1n + e_n1`.
pub fn bw_equality_witness<F: Scalar>(n: usize, level: Level) -> (HMat<F>, HMat<F>) {
    let x = HMat::elementary(n, level, 0, 0, 0).sub(&HMat::elementary(n, level, n - 1, n - 1, 0));
    let y = HMat::elementary(n, level, 0, n - 1, 0).add(&HMat::elementary(n, level, n - 1, 0, 0));
    (x, y)
}

#[derive(Clone, Debug)]
pub struct BwEstimate {
    pub value: f64,
    pub witness: (Vec<f64>, Vec<f64>),
    pub samples: usize,
    pub seed: u64,
    pub exhausted: bool,
}

/// `-B([x, y], [x, y]) / (B(x, x) B(y, y) - B(x, y)^2)` with `B` the metric of `g`.
pub fn bw_lie_ratio(g: &MetrizedAlgebra<f64>, x: &[f64], y: &[f64]) -> Option<f64> {
    let bxy = g.h.eval(x, y);
    let d = g.h.norm2(x) * g.h.norm2(y) - bxy * bxy;
    (d.abs() > 1e-12).then(|| -g.h.norm2(&g.mul(x, y)) / d)
}

/// Sampled supremum of [`bw_lie_ratio`] plus local ascent from the best samples.
pub fn bw_lie_estimate(g: &MetrizedAlgebra<f64>, samples: usize, steps: usize, seed: u64) -> Result<BwEstimate> {
    if g.symmetry() != Symmetry::Anticommutative {
        return Err(Error::Precondition("bw needs a Lie algebra".into()));
    }
    let n = g.dim();
    let eig = symmetric_eigen(&g.h.gram().scale(&-1.0))?;
    if !eig.values.iter().all(|v| *v > 0.0) {
        return Err(Error::Precondition("Killing form is not negative definite".into()));
    }
    let frame = eig.vectors.mul(&Matrix::diag(&eig.values.iter().map(|v| f64::sqrt(*v).recip()).collect::<Vec<_>>()));
    let obj = |v: &[f64]| bw_lie_ratio(g, &v[..n], &v[n..]);
    let renorm = |v: &[f64]| renormalize(g, v);
    let mut rng = random::rng(seed);
    let mut pool: Vec<(f64, Vec<f64>)> = Vec::new();
    for _ in 0..samples {
        let v = [frame.matvec(&random::gauss_vec(&mut rng, n)), frame.matvec(&random::gauss_vec(&mut rng, n))].concat();
        if let Some(f) = obj(&v) {
            pool.push((f, v));
        }
    }
    pool.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut exhausted = false;
    for (_, start) in pool.into_iter().take(6) {
        let (v, f, ex) = refine(&obj, &renorm, start, 1.0, steps);
        exhausted |= ex;
        if f.is_finite() && best.as_ref().map_or(true, |(b, _)| f > *b) {
            best = Some((f, v));
        }
    }
    let (value, v) = best.ok_or_else(|| Error::Budget("no nondegenerate pair sampled".into()))?;
    Ok(BwEstimate { value, witness: (v[..n].to_vec(), v[n..].to_vec()), samples, seed, exhausted })
}
