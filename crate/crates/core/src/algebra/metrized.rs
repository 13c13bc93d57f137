use serde::Serialize;

use super::{Algebra, Check, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{self, default_tol, orthogonal_complement, Matrix, Subspace, SymBilinearForm};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unchecked,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub h_invariant: Verdict,
    pub h_nondegenerate: Verdict,
    pub exact: Verdict,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { h_invariant: Verdict::Unchecked, h_nondegenerate: Verdict::Unchecked, exact: Verdict::Unchecked }
    }
}

/// An algebra together with a symmetric bilinear form.
#[derive(Clone, PartialEq)]
pub struct MetrizedAlgebra<F> {
    pub algebra: Algebra<F>,
    pub h: SymBilinearForm<F>,
    pub flags: Flags,
}

impl<F: std::fmt::Debug> std::fmt::Debug for MetrizedAlgebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MetrizedAlgebra({:?}, {:?})", self.algebra, self.flags)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EinsteinFit<F> {
    pub kappa: F,
    /// Max-norm of `tau - kappa h`.
    pub residual: F,
}

/// A retracted algebra and the inclusion of its basis into the ambient one.
#[derive(Clone, Debug)]
pub struct Retraction<F> {
    pub algebra: MetrizedAlgebra<F>,
    /// Columns are the retracted basis in ambient coordinates.
    pub inclusion: Matrix<F>,
}

impl<F: Scalar> Retraction<F> {
    /// Coordinates of an ambient vector lying in the image.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.inclusion.solve_vec(v)?;
        let back = self.inclusion.matvec(&c);
        linalg::is_zero_vec(&linalg::sub(&back, v), default_tol::<F>() * 1e3).then_some(c)
    }
}

impl<F: Scalar> MetrizedAlgebra<F> {
    pub fn new(algebra: Algebra<F>, h: SymBilinearForm<F>) -> Result<Self> {
        if algebra.dim() != h.dim() {
            return Err(Error::Shape("metric and algebra dimensions differ".into()));
        }
        Ok(MetrizedAlgebra { algebra, h, flags: Flags::default() })
    }

    /// Uses the Killing form as the metric.
    pub fn with_killing(algebra: Algebra<F>) -> Self {
        let h = algebra.killing();
        MetrizedAlgebra { algebra, h, flags: Flags::default() }
    }

    /// Fills in every cached flag.
    pub fn checked(mut self) -> Self {
        self.flags = Flags {
            h_invariant: self.algebra.is_invariant(&self.h).holds.into(),
            h_nondegenerate: self.h.is_nondegenerate().into(),
            exact: self.algebra.is_exact().into(),
        };
        self
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.algebra.mul(x, y)
    }

    pub fn inner(&self, x: &[F], y: &[F]) -> F {
        self.h.eval(x, y)
    }

    /// `P(x) = h(x x, x) / 6`.
    pub fn cubic_value(&self, x: &[F]) -> F {
        self.h.eval(&self.mul(x, x), x).div_r(&F::from_i64(6))
    }

    /// Pins kappa on the first basis vector with `h(b, b) != 0`.
    pub fn einstein_fit(&self) -> Result<EinsteinFit<F>> {
        let tol = default_tol::<F>();
        let g = self.h.gram();
        let b = (0..self.dim())
            .find(|&i| !g[(i, i)].is_zero_tol(tol))
            .ok_or_else(|| Error::Degenerate("metric has no anisotropic basis vector".into()))?;
        let tau = self.algebra.killing();
        let kappa = tau.gram()[(b, b)].div_r(&g[(b, b)]);
        let diff = tau.gram().sub(&g.scale(&kappa));
        let mut residual = F::zero();
        for x in diff.entries() {
            if x.abs() > residual {
                residual = x.abs();
            }
        }
        Ok(EinsteinFit { kappa, residual })
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        let a = self.algebra.direct_sum(&o.algebra)?;
        let h = SymBilinearForm::from_computed(self.h.gram().block_diag(o.h.gram()));
        Self::new(a, h)
    }

    pub fn tensor_product(&self, o: &Self) -> Result<Self> {
        let a = self.algebra.tensor_product(&o.algebra)?;
        let h = SymBilinearForm::from_computed(self.h.gram().kron(o.h.gram()));
        Self::new(a, h)
    }

    /// Unitalization with form `c` (defaults to `h`); the new metric is `c + a b`.
    pub fn unitalization(&self, c: Option<&SymBilinearForm<F>>) -> Result<Self> {
        let c = c.unwrap_or(&self.h);
        let a = self.algebra.unitalization(c)?;
        let h = SymBilinearForm::from_computed(c.gram().block_diag(&Matrix::identity(1)));
        Self::new(a, h)
    }

    /// Product `pi(x y)` on `s`, with `pi` the `h`-orthogonal projection.
    pub fn retraction(&self, s: &Subspace<F>) -> Result<Retraction<F>> {
        let b = s.basis().clone();
        let k = s.dim();
        let hs = self.h.restrict(&b);
        if !hs.is_nondegenerate() {
            return Err(Error::Degenerate("subspace is degenerate for the metric".into()));
        }
        let comp = orthogonal_complement(s, &self.h)?;
        let mut cols = b.col_vecs();
        cols.extend(comp.vectors());
        let frame = Matrix::from_cols(self.dim(), &cols);
        let inv = frame.inverse()?;
        let proj = Matrix::from_fn(k, self.dim(), |i, j| inv[(i, j)].clone());
        let bv = b.col_vecs();
        let alg = Algebra::from_fn(format!("ret({})", self.name()), k, self.algebra.symmetry(), |i, j| {
            proj.matvec(&self.mul(&bv[i], &bv[j]))
        });
        Ok(Retraction { algebra: Self::new(alg, hs)?, inclusion: b })
    }

    /// Retraction onto the orthogonal complement of the unit, metric divided by `g(e, e)`.
    pub fn deunitalization(&self) -> Result<Retraction<F>> {
        let e = self.algebra.find_unit().ok_or(Error::NoUnit)?;
        let gee = self.h.norm2(&e);
        if gee.is_zero_tol(default_tol::<F>()) {
            return Err(Error::Degenerate("unit is isotropic".into()));
        }
        let perp = orthogonal_complement(&Subspace::span(self.dim(), &[e]), &self.h)?;
        let mut r = self.retraction(&perp)?;
        r.algebra.h = r.algebra.h.scale(&gee.recip());
        r.algebra.algebra = r.algebra.algebra.with_name(format!("deunit({})", self.name()));
        Ok(r)
    }

    pub fn is_invariant(&self) -> Check {
        self.algebra.is_invariant(&self.h)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.algebra = self.algebra.with_name(name);
        self
    }

    pub fn symmetry(&self) -> Symmetry {
        self.algebra.symmetry()
    }

    pub fn to_float(&self) -> MetrizedAlgebra<f64> {
        let h = SymBilinearForm::from_computed(self.h.gram().to_f64());
        MetrizedAlgebra { algebra: self.algebra.to_float(), h, flags: self.flags }
    }
}
