//! Sectional nonassociativity and the identities built on it.

use serde::Serialize;

use crate::algebra::{Algebra, Check, MetrizedAlgebra, Symmetry};
use crate::constructions::triple::{diag, gamma_emb, nabla, triple};
use crate::error::{Error, Result};
use crate::linalg::{self, default_tol, Subspace, SymBilinearForm};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SectValue<F> {
    pub value: F,
    pub x: Vec<F>,
    pub y: Vec<F>,
    /// `|x|^2 |y|^2 - h(x, y)^2`.
    pub denom: F,
}

/// `h(x x, y y) - h(x y, x y)`, the numerator of sect and the Norton form.
pub fn norton_value<F: Scalar>(a: &Algebra<F>, h: &SymBilinearForm<F>, x: &[F], y: &[F]) -> F {
    let xy = a.mul(x, y);
    h.eval(&a.mul(x, x), &a.mul(y, y)).sub_r(&h.norm2(&xy))
}

pub fn plane_denominator<F: Scalar>(h: &SymBilinearForm<F>, x: &[F], y: &[F]) -> F {
    let hxy = h.eval(x, y);
    h.norm2(x).mul_r(&h.norm2(y)).sub_r(&hxy.mul_r(&hxy))
}

/// sect with respect to an explicit metric.
pub fn sect_with<F: Scalar>(a: &Algebra<F>, h: &SymBilinearForm<F>, x: &[F], y: &[F]) -> Result<SectValue<F>> {
    if a.symmetry() != Symmetry::Commutative {
        return Err(Error::Precondition("sect is defined for commutative algebras".into()));
    }
    let denom = plane_denominator(h, x, y);
    if denom.is_zero_tol(default_tol::<F>()) {
        return Err(Error::Degenerate("plane is degenerate for the metric".into()));
    }
    let value = norton_value(a, h, x, y).div_r(&denom);
    Ok(SectValue { value, x: x.to_vec(), y: y.to_vec(), denom })
}

pub fn sect<F: Scalar>(ma: &MetrizedAlgebra<F>, x: &[F], y: &[F]) -> Result<SectValue<F>> {
    sect_with(&ma.algebra, &ma.h, x, y)
}

/// sect with respect to the trace form `tau`.
pub fn isect<F: Scalar>(a: &Algebra<F>, x: &[F], y: &[F]) -> Result<SectValue<F>> {
    sect_with(a, &a.killing(), x, y)
}

/// `omega(x, y, z, w)` on basis vectors, stored as `data[((i n + j) n + k) n + l]`.
#[derive(Clone, Debug)]
pub struct ConformalTensor<F> {
    pub n: usize,
    pub data: Vec<F>,
}

impl<F: Scalar> ConformalTensor<F> {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &F {
        &self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.data)
    }

    /// Max violation of the curvature symmetries, cyclic identity and trace-freeness.
    pub fn symmetry_residual(&self, h: &SymBilinearForm<F>) -> Result<f64> {
        let n = self.n;
        let hinv = h.gram().inverse()?;
        let mut worst = 0.0f64;
        let mut upd = |v: F| worst = worst.max(v.to_f64().abs());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let w = self.get(i, j, k, l);
                        upd(w.add_r(self.get(j, i, k, l)));
                        upd(w.add_r(self.get(i, j, l, k)));
                        upd(w.sub_r(self.get(k, l, i, j)));
                        upd(w.add_r(self.get(j, k, i, l)).add_r(self.get(k, i, j, l)));
                    }
                }
            }
        }
        for j in 0..n {
            for k in 0..n {
                let mut t = F::zero();
                for i in 0..n {
                    for l in 0..n {
                        t.mul_add(&hinv[(i, l)], self.get(i, j, k, l));
                    }
                }
                upd(t);
            }
        }
        Ok(worst)
    }
}

/// Trace-free part of `mu(x, y, z, w) = h(y z, x w) - h(z x, w y)`.
pub fn conformal_tensor<F: Scalar>(ma: &MetrizedAlgebra<F>) -> Result<ConformalTensor<F>> {
    let n = ma.dim();
    if n < 3 {
        return Err(Error::Precondition("conformal tensor needs dim >= 3".into()));
    }
    if !ma.h.is_nondegenerate() {
        return Err(Error::Degenerate("metric".into()));
    }
    let a = &ma.algebra;
    let g = ma.h.gram();
    let ric = a.ricci();
    let ric = ric.gram();
    let hinv = g.inverse()?;
    let mut scal = F::zero();
    for i in 0..n {
        for j in 0..n {
            scal.mul_add(&hinv[(i, j)], &ric[(i, j)]);
        }
    }
    // products and their metric duals
    let prods: Vec<Vec<Vec<F>>> = (0..n).map(|i| (0..n).map(|j| a.basis_product(i, j)).collect()).collect();
    let duals: Vec<Vec<Vec<F>>> = prods.iter().map(|r| r.iter().map(|p| g.matvec(p)).collect()).collect();
    let c1 = F::from_i64(n as i64 - 2).recip();
    let c2 = scal.div_r(&F::from_i64((n as i64 - 1) * (n as i64 - 2)));
    let mut data = Vec::with_capacity(n * n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let mut v = linalg::dot(&duals[y][z], &prods[x][w]).sub_r(&linalg::dot(&duals[z][x], &prods[w][y]));
                    let r = ric[(x, z)].mul_r(&g[(y, w)]).sub_r(&ric[(y, z)].mul_r(&g[(x, w)]))
                        .sub_r(&ric[(x, w)].mul_r(&g[(y, z)]))
                        .add_r(&ric[(y, w)].mul_r(&g[(x, z)]));
                    v.mul_add(&c1, &r);
                    let s = g[(x, w)].mul_r(&g[(y, z)]).sub_r(&g[(y, w)].mul_r(&g[(x, z)]));
                    v.mul_add(&c2, &s);
                    data.push(v);
                }
            }
        }
    }
    Ok(ConformalTensor { n, data })
}

/// True by convention in dimension at most 3.
pub fn is_conformally_associative<F: Scalar>(ma: &MetrizedAlgebra<F>) -> Result<Check> {
    if ma.dim() <= 3 {
        return Ok(Check { holds: true, residual: 0.0 });
    }
    let t = conformal_tensor(ma)?;
    let tol = default_tol::<F>() * (1.0 + ma.algebra.max_structure()).powi(2);
    Ok(Check { holds: t.data.iter().all(|v| v.is_zero_tol(tol)), residual: t.max_abs() })
}

#[derive(Clone, Debug)]
pub struct ProjectiveAssociativity<F> {
    pub check: Check,
    /// `-ric / (n - 1)`.
    pub c: SymBilinearForm<F>,
}

/// `[x, y, z] = (ric(x, y) z - ric(y, z) x) / (n - 1)` on all basis triples.
pub fn is_projectively_associative<F: Scalar>(a: &Algebra<F>) -> Result<ProjectiveAssociativity<F>> {
    let n = a.dim();
    if n < 2 {
        return Err(Error::Precondition("projective associativity needs dim >= 2".into()));
    }
    let ric = a.ricci();
    let inv = F::from_i64(n as i64 - 1).recip();
    let residual = triple_identity_residual(a, |i, j, k| {
        let mut v = linalg::zeros(n);
        v[k] = ric.gram()[(i, j)].mul_r(&inv);
        v[i] -= ric.gram()[(j, k)].mul_r(&inv);
        v
    });
    let c = ric.scale(&(-inv));
    let tol = default_tol::<F>() * (1.0 + a.max_structure()).powi(2);
    Ok(ProjectiveAssociativity { check: Check { holds: residual <= tol, residual }, c })
}

/// Max-norm of `[e_i, e_j, e_k] - rhs(i, j, k)` over all basis triples.
fn triple_identity_residual<F: Scalar>(a: &Algebra<F>, rhs: impl Fn(usize, usize, usize) -> Vec<F>) -> f64 {
    let n = a.dim();
    let prods: Vec<Vec<Vec<F>>> = (0..n).map(|i| (0..n).map(|j| a.basis_product(i, j)).collect()).collect();
    let left_mults = a.left_mults();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            // (e_i e_j) e_k - e_i (e_j e_k)
            let lp = a.left_mult(&prods[i][j]);
            for k in 0..n {
                let first = lp.col(k);
                let second = left_mults[i].matvec(&prods[j][k]);
                let assoc = linalg::sub(&first, &second);
                worst = worst.max(linalg::max_abs(&linalg::sub(&assoc, &rhs(i, j, k))));
            }
        }
    }
    worst
}

/// `Some(kappa)` iff `[x, y, z] = kappa (h(x, y) z - h(y, z) x)` on all basis triples.
pub fn constant_sect_check<F: Scalar>(ma: &MetrizedAlgebra<F>) -> Result<Option<F>> {
    let n = ma.dim();
    if n < 2 {
        return Err(Error::Precondition("constant sect needs dim >= 2".into()));
    }
    let g = ma.h.gram();
    let ric = ma.algebra.ricci();
    // ric = kappa (n - 1) h pins kappa down
    let tol = default_tol::<F>();
    let pivot = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !g[(i, j)].is_zero_tol(tol));
    let Some((pi, pj)) = pivot else {
        return Err(Error::Degenerate("zero metric".into()));
    };
    let kappa = ric.gram()[(pi, pj)].div_r(&g[(pi, pj)].mul_r(&F::from_i64(n as i64 - 1)));
    let scaled = ma.h.scale(&kappa.mul_r(&F::from_i64(n as i64 - 1)));
    if !ric.sub(&scaled).gram().is_zero_tol(tol * (1.0 + ma.algebra.max_structure()).powi(2)) {
        return Ok(None);
    }
    let residual = triple_identity_residual(&ma.algebra, |i, j, k| {
        let mut v = linalg::zeros(n);
        v[k] = kappa.mul_r(&g[(i, j)]);
        v[i] -= kappa.mul_r(&g[(j, k)]);
        v
    });
    Ok((residual <= tol * (1.0 + ma.algebra.max_structure()).powi(2)).then_some(kappa))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    /// `a + i b` squares to zero: `a a = b b`, `a b = 0`.
    SquareZero,
    /// `a + i b` is idempotent: `a a - b b = a`, `2 a b = b`.
    Idempotent,
}

#[derive(Clone, Debug)]
pub struct SpecialSect<F> {
    pub sect: SectValue<F>,
    pub closed_form: F,
}

/// sect of the real and imaginary parts of a complex square-zero or idempotent element.
pub fn complexified_special_elements_sect<F: Scalar>(
    ma: &MetrizedAlgebra<F>,
    a: &[F],
    b: &[F],
    kind: SpecialKind,
) -> Result<SpecialSect<F>> {
    let alg = &ma.algebra;
    let (aa, bb, ab) = (alg.mul(a, a), alg.mul(b, b), alg.mul(a, b));
    let (e1, e2) = match kind {
        SpecialKind::SquareZero => (linalg::sub(&aa, &bb), ab.clone()),
        SpecialKind::Idempotent => (
            linalg::sub(&linalg::sub(&aa, &bb), a),
            linalg::sub(&linalg::scale(&F::from_i64(2), &ab), b),
        ),
    };
    let tol = default_tol::<F>() * 10.0;
    if !linalg::is_zero_vec(&e1, tol) || !linalg::is_zero_vec(&e2, tol) {
        return Err(Error::Precondition(format!("pair does not satisfy the {kind:?} equations")));
    }
    let s = sect(ma, a, b)?;
    let num = match kind {
        SpecialKind::SquareZero => ma.h.norm2(&aa),
        SpecialKind::Idempotent => ma.h.norm2(&bb).add_r(&ma.h.norm2(&ab)),
    };
    Ok(SpecialSect { closed_form: num.div_r(&s.denom), sect: s })
}

/// `|g(e, e) sect_B(x, y) - sect_A(x, y) - 1|` for `A` the deunitalization of `B`.
pub fn deunit_sect_shift_check<F: Scalar>(b: &MetrizedAlgebra<F>, x: &[F], y: &[F]) -> Result<F> {
    let e = b.algebra.find_unit().ok_or(Error::NoUnit)?;
    let tol = default_tol::<F>();
    if !b.h.eval(&e, x).is_zero_tol(tol) || !b.h.eval(&e, y).is_zero_tol(tol) {
        return Err(Error::Precondition("x and y must be orthogonal to the unit".into()));
    }
    let gee = b.h.norm2(&e);
    let ret = b.deunitalization()?;
    let cx = ret.coords(x).ok_or_else(|| Error::Precondition("x not in the complement".into()))?;
    let cy = ret.coords(y).ok_or_else(|| Error::Precondition("y not in the complement".into()))?;
    let sb = sect(b, x, y)?.value;
    let sa = sect(&ret.algebra, &cx, &cy)?.value;
    let r = gee.mul_r(&sb).sub_r(&sa).sub_r(&F::one());
    Ok(r.abs())
}

/// One identity relating isect on the triple to data on the base.
#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub relation: &'static str,
    /// `None` when every instance hit a degenerate plane.
    pub residual: Option<f64>,
}

/// Residuals of the five isect relations between `trip(A)` and `A`.
pub fn triple_sect_relations_check<F: Scalar>(a: &Algebra<F>, x: &[F], y: &[F]) -> Result<Vec<RelationResidual>> {
    if a.symmetry() != Symmetry::Commutative {
        return Err(Error::Precondition("triple sect relations need a commutative algebra".into()));
    }
    let t = triple(a);
    let tau_t = t.killing();
    let tau = a.killing();
    let tol = default_tol::<F>();
    let is = |u: &[F], v: &[F]| sect_with(&t, &tau_t, u, v).ok().map(|s| s.value);
    let base = sect_with(a, &tau, x, y).ok().map(|s| s.value);
    let xx_yy = tau.eval(&a.mul(x, x), &a.mul(y, y));
    let xy2 = tau.norm2(&a.mul(x, y));
    let (nx, ny, hxy) = (tau.norm2(x), tau.norm2(y), tau.eval(x, y));
    let hxy2 = hxy.mul_r(&hxy);
    let ratio = |num: F, den: F| (!den.is_zero_tol(tol)).then(|| num.div_r(&den));

    let mut out = Vec::new();
    let mut push = |relation, vals: Vec<Option<(F, F)>>| {
        let r = vals.into_iter().flatten().map(|(l, r)| l.sub_r(&r).to_f64().abs()).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
        out.push(RelationResidual { relation, residual: r });
    };

    let rhs = base.clone().map(|b| b.mul_r(&F::ratio(2, 3)));
    push("gamma_i_gamma_i", (0..4).map(|i| Some((is(&gamma_emb(i, x), &gamma_emb(i, y))?, rhs.clone()?))).collect());

    let rhs = base.clone().map(|b| b.mul_r(&F::ratio(1, 2)));
    push("nabla_i_nabla_i", (1..4).map(|i| Some((is(&nabla(i, x), &nabla(i, y))?, rhs.clone()?))).collect());

    let rhs = ratio(
        F::from_i64(-2).mul_r(&xx_yy.add_r(&xy2)),
        F::from_i64(9).mul_r(&nx).mul_r(&ny).sub_r(&hxy2),
    );
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    push("gamma_i_gamma_j", pairs.iter().map(|&(i, j)| Some((is(&gamma_emb(i, x), &gamma_emb(j, y))?, rhs.clone()?))).collect());

    let rhs = ratio(
        F::ratio(-3, 2).mul_r(&xy2),
        F::from_i64(4).mul_r(&nx).mul_r(&ny).sub_r(&hxy2),
    );
    let pairs: Vec<(usize, usize)> = (1..4).flat_map(|i| (1..4).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    push("nabla_i_nabla_j", pairs.iter().map(|&(i, j)| Some((is(&nabla(i, x), &nabla(j, y))?, rhs.clone()?))).collect());

    let rhs = ratio(
        F::ratio(-1, 6).mul_r(&F::from_i64(2).mul_r(&xx_yy).add_r(&xy2)),
        nx.mul_r(&ny),
    );
    push("diag_nabla_i", (1..4).map(|i| Some((is(&diag(x), &nabla(i, y))?, rhs.clone()?))).collect());
    Ok(out)
}

/// Spanning set check used by callers that need `x, y` independent.
pub fn is_plane<F: Scalar>(x: &[F], y: &[F]) -> bool {
    Subspace::span(x.len(), &[x.to_vec(), y.to_vec()]).dim() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{herm_jordan, simplicial, Level};
    use crate::scalar::{q, Q};

    #[test]
    fn simplicial_sect_is_constant() {
        let e4 = simplicial::<Q>(4).unwrap();
        let x = vec![q(1, 1), q(0, 1), q(2, 1), q(-1, 1)];
        let y = vec![q(0, 1), q(3, 1), q(1, 2), q(1, 1)];
        assert_eq!(sect(&e4, &x, &y).unwrap().value, q(-1, 3));
        assert_eq!(constant_sect_check(&e4).unwrap(), Some(q(-1, 3)));
        assert!(sect(&e4, &x, &x).is_err());
    }

    #[test]
    fn hermitian_upper_witness() {
        let h3 = herm_jordan::<Q>(3, Level::Real).unwrap();
        // e11 - e33 and e13 + e31 in the diagonal-first basis
        let mut x = linalg::zeros::<Q>(6);
        x[0] = q(1, 1);
        x[2] = q(-1, 1);
        let mut y = linalg::zeros::<Q>(6);
        y[4] = q(1, 1);
        assert_eq!(sect(&h3, &x, &y).unwrap().value, q(3, 2));
        assert_eq!(constant_sect_check(&h3).unwrap(), None);
    }

    #[test]
    fn projective_associativity_of_talg() {
        let t = crate::constructions::talg::<Q>(4, &q(2, 7)).unwrap();
        assert!(is_projectively_associative(&t).unwrap().check.holds);
    }
}
