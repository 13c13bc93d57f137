//! Algebras as structure-constant tensors and their intrinsic trace forms.

mod ideals;
mod maps;
mod metrized;

pub use ideals::{decompose_ideals, Decomposition, DecompositionVerdict};
pub use maps::{griess_einstein, verify_homomorphism, verify_isometric, voa_kappa, LinearMap};
pub use metrized::{EinsteinFit, Flags, MetrizedAlgebra, Retraction, Verdict};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, default_tol, Matrix, SymBilinearForm};
use crate::scalar::{Scalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Commutative,
    Anticommutative,
}

/// Outcome of checking an identity over basis elements or samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub holds: bool,
    /// Max-norm of the violation.
    pub residual: f64,
}

impl Check {
    pub fn from_residual<F: Scalar>(residual: &F, tol: f64) -> Self {
        Check { holds: residual.is_zero_tol(tol), residual: residual.to_f64().abs() }
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

/// Multiplication table `e_i e_j` for `i <= j`; the other half follows from the symmetry.
#[derive(Clone, PartialEq)]
pub struct Algebra<F> {
    name: String,
    dim: usize,
    symmetry: Symmetry,
    table: Vec<Vec<F>>,
}

impl<F: std::fmt::Debug> std::fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({}, dim {}, {:?})", self.name, self.dim, self.symmetry)
    }
}

impl<F: Scalar> Algebra<F> {
    pub fn zero(name: impl Into<String>, dim: usize, symmetry: Symmetry) -> Self {
        let table = vec![vec![F::zero(); dim]; dim * (dim + 1) / 2];
        Algebra { name: name.into(), dim, symmetry, table }
    }

    /// Builds the table from basis products; `f(i, j)` is only called for `i <= j`
    /// (`i < j` when anticommutative).
    pub fn from_fn(
        name: impl Into<String>,
        dim: usize,
        symmetry: Symmetry,
        mut f: impl FnMut(usize, usize) -> Vec<F>,
    ) -> Self {
        let mut a = Self::zero(name, dim, symmetry);
        for j in 0..dim {
            for i in 0..=j {
                if i == j && symmetry == Symmetry::Anticommutative {
                    continue;
                }
                let v = f(i, j);
                assert_eq!(v.len(), dim, "product has wrong length");
                a.table[pair_index(i, j)] = v;
            }
        }
        a
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Raw stored entry for `i <= j`.
    pub fn stored(&self, i: usize, j: usize) -> &[F] {
        &self.table[pair_index(i, j)]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<F>) {
        assert_eq!(v.len(), self.dim);
        if i <= j {
            self.table[pair_index(i, j)] = v;
        } else {
            let v = match self.symmetry {
                Symmetry::Commutative => v,
                Symmetry::Anticommutative => v.into_iter().map(|x| -x).collect(),
            };
            self.table[pair_index(j, i)] = v;
        }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F> {
        if i <= j {
            self.table[pair_index(i, j)].clone()
        } else {
            let v = &self.table[pair_index(j, i)];
            match self.symmetry {
                Symmetry::Commutative => v.clone(),
                Symmetry::Anticommutative => v.iter().map(|x| -x.clone()).collect(),
            }
        }
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert!(x.len() == self.dim && y.len() == self.dim, "dimension mismatch in product");
        let mut out = vec![F::zero(); self.dim];
        let sign = match self.symmetry {
            Symmetry::Commutative => F::one(),
            Symmetry::Anticommutative => -F::one(),
        };
        for j in 0..self.dim {
            for i in 0..=j {
                // e_i e_j with i <= j appears as x_i y_j + s x_j y_i
                let mut c = x[i].mul_r(&y[j]);
                if i != j {
                    c += sign.mul_r(&x[j].mul_r(&y[i]));
                }
                if c.is_zero_tol(0.0) {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&self.table[pair_index(i, j)]) {
                    o.mul_add(&c, t);
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Shape(format!("vectors must have length {}", self.dim)));
        }
        Ok(self.mul(x, y))
    }

    /// Matrix of `y -> x y`; column `k` is `x e_k`.
    pub fn left_mult(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            let mut col = vec![F::zero(); n];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero_tol(0.0) {
                    continue;
                }
                let p = self.basis_product(i, k);
                for (c, t) in col.iter_mut().zip(&p) {
                    c.mul_add(xi, t);
                }
            }
            m.set_col(k, &col);
        }
        m
    }

    pub fn left_mults(&self) -> Vec<Matrix<F>> {
        (0..self.dim).map(|i| self.left_mult(&linalg::unit(self.dim, i))).collect()
    }

    /// Covector `x -> tr L(x)` in the dual basis.
    pub fn trace_linear(&self) -> Vec<F> {
        (0..self.dim)
            .map(|i| {
                let mut t = F::zero();
                for k in 0..self.dim {
                    t += self.basis_product(i, k)[k].clone();
                }
                t
            })
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        linalg::is_zero_vec(&self.trace_linear(), default_tol::<F>())
    }

    /// `tr L(x) L(y)`.
    pub fn killing(&self) -> SymBilinearForm<F> {
        let ls = self.left_mults();
        let n = self.dim;
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = ls[i].trace_of_product(&ls[j]);
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        SymBilinearForm::from_computed(g)
    }

    /// `tr L(x y) - tr L(x) L(y)`.
    pub fn ricci(&self) -> SymBilinearForm<F> {
        let tr = self.trace_linear();
        let tau = self.killing();
        let n = self.dim;
        let g = Matrix::from_fn(n, n, |i, j| {
            linalg::dot(&self.basis_product(i, j), &tr).sub_r(&tau.gram()[(i, j)])
        });
        SymBilinearForm::from_computed(g)
    }

    /// `(x y) z - x (y z)`.
    pub fn associator(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        linalg::sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    /// Checks `f(e_i e_j, e_k) = f(e_i, e_j e_k)` on all basis triples.
    pub fn is_invariant(&self, f: &SymBilinearForm<F>) -> Check {
        let n = self.dim;
        let g = f.gram();
        let mut worst = F::zero();
        let prods: Vec<Vec<Vec<F>>> =
            (0..n).map(|i| (0..n).map(|j| g.matvec(&self.basis_product(i, j))).collect()).collect();
        // h(e_i e_j, e_k) is row k of G (e_i e_j)
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = prods[i][j][k].sub_r(&prods[j][k][i]).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        let scale = g.max_abs().max(1.0) * self.max_structure().max(1.0);
        Check::from_residual(&worst, default_tol::<F>() * scale)
    }

    pub fn max_structure(&self) -> f64 {
        self.table.iter().map(|v| linalg::max_abs(v)).fold(0.0, f64::max)
    }

    /// Multiplication `x -> s x` on the product.
    pub fn scaled(&self, s: &F) -> Self {
        let table = self.table.iter().map(|v| linalg::scale(s, v)).collect();
        Algebra { name: self.name.clone(), dim: self.dim, symmetry: self.symmetry, table }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.symmetry != o.symmetry {
            return Err(Error::Precondition("direct sum of mixed symmetry".into()));
        }
        let (n1, n) = (self.dim, self.dim + o.dim);
        Ok(Self::from_fn(format!("{}+{}", self.name, o.name), n, self.symmetry, |i, j| {
            let mut v = vec![F::zero(); n];
            if j < n1 {
                v[..n1].clone_from_slice(&self.basis_product(i, j));
            } else if i >= n1 {
                v[n1..].clone_from_slice(&o.basis_product(i - n1, j - n1));
            }
            v
        }))
    }

    /// Basis `e_i (x) f_j` at index `i * dim(o) + j`.
    pub fn tensor_product(&self, o: &Self) -> Result<Self> {
        if self.symmetry != o.symmetry {
            return Err(Error::Precondition(
                "tensor product needs both factors commutative or both anticommutative".into(),
            ));
        }
        let m = o.dim;
        let n = self.dim * m;
        Ok(Self::from_fn(format!("{}*{}", self.name, o.name), n, Symmetry::Commutative, |p, q| {
            let a = self.basis_product(p / m, q / m);
            let b = o.basis_product(p % m, q % m);
            let mut v = Vec::with_capacity(n);
            for x in &a {
                for y in &b {
                    v.push(x.mul_r(y));
                }
            }
            v
        }))
    }

    /// Solves `L(e) = Id`; the unit is unique when it exists.
    pub fn find_unit(&self) -> Option<Vec<F>> {
        let n = self.dim;
        if n == 0 {
            return None;
        }
        let mut m = Matrix::zeros(n * n, n);
        let mut rhs = vec![F::zero(); n * n];
        for k in 0..n {
            for i in 0..n {
                let p = self.basis_product(i, k);
                for l in 0..n {
                    m[(k * n + l, i)] = p[l].clone();
                }
            }
            rhs[k * n + k] = F::one();
        }
        let e = m.solve_vec(&rhs)?;
        let tol = default_tol::<F>() * 1e2;
        for k in 0..n {
            let ek = linalg::unit(n, k);
            if !linalg::is_zero_vec(&linalg::sub(&self.mul(&e, &ek), &ek), tol)
                || !linalg::is_zero_vec(&linalg::sub(&self.mul(&ek, &e), &ek), tol)
            {
                return None;
            }
        }
        Some(e)
    }

    /// The algebra on `dim + 1` coordinates with product `(x y + a y + b x, a b + c(x, y))`.
    pub fn unitalization(&self, c: &SymBilinearForm<F>) -> Result<Self> {
        let n = self.dim;
        if c.dim() != n {
            return Err(Error::Shape("form dimension differs from algebra".into()));
        }
        if self.symmetry != Symmetry::Commutative {
            return Err(Error::Precondition("unitalization needs a commutative algebra".into()));
        }
        Ok(Self::from_fn(format!("unit({})", self.name), n + 1, Symmetry::Commutative, |i, j| {
            let mut v = vec![F::zero(); n + 1];
            if j == n {
                v[i] = F::one();
            } else {
                v[..n].clone_from_slice(&self.basis_product(i, j));
                v[n] = c.gram()[(i, j)].clone();
            }
            v
        }))
    }

    /// Unitalization with `c = -ric/(n-1)`.
    pub fn intrinsic_unitalization(&self) -> Result<Self> {
        if self.dim < 2 {
            return Err(Error::Precondition("intrinsic unitalization needs dim >= 2".into()));
        }
        let c = self.ricci().scale(&F::ratio(-1, self.dim as i64 - 1));
        Ok(self.unitalization(&c)?.with_name(format!("iunit({})", self.name)))
    }

    pub fn to_float(&self) -> Algebra<f64> {
        Algebra {
            name: self.name.clone(),
            dim: self.dim,
            symmetry: self.symmetry,
            table: self.table.iter().map(|v| linalg::to_f64_vec(v)).collect(),
        }
    }

    /// Nonzero stored entries `(i, j, k, value)` with `i <= j`.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, F)> {
        let mut out = Vec::new();
        for j in 0..self.dim {
            for i in 0..=j {
                for (k, v) in self.table[pair_index(i, j)].iter().enumerate() {
                    if !v.is_zero_tol(0.0) {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }
}

impl Algebra<Q> {
    pub fn to_backend<G: Scalar>(&self) -> Algebra<G> {
        Algebra {
            name: self.name.clone(),
            dim: self.dim,
            symmetry: self.symmetry,
            table: self.table.iter().map(|v| v.iter().map(G::from_q).collect()).collect(),
        }
    }
}
