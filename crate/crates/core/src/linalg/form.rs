use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar, EPS_RANK};

use super::{default_tol, symmetric_eigen, Matrix, Subspace};

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, PartialEq)]
pub struct SymBilinearForm<F> {
    gram: Matrix<F>,
}

impl<F: std::fmt::Debug> std::fmt::Debug for SymBilinearForm<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SymBilinearForm {:?}", self.gram)
    }
}

impl<F: Scalar> SymBilinearForm<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape("Gram matrix is not square".into()));
        }
        if !gram.is_symmetric_tol(default_tol::<F>()) {
            return Err(Error::Asymmetric);
        }
        Ok(SymBilinearForm { gram })
    }

    /// Symmetrizes in the float backend to absorb rounding.
    pub(crate) fn from_computed(gram: Matrix<F>) -> Self {
        let g = match F::BACKEND {
            Backend::Rational => gram,
            Backend::Float => {
                let half = F::ratio(1, 2);
                gram.add(&gram.transpose()).scale(&half)
            }
        };
        SymBilinearForm { gram: g }
    }

    pub fn identity(n: usize) -> Self {
        SymBilinearForm { gram: Matrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        SymBilinearForm { gram: Matrix::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        let gy = self.gram.matvec(y);
        super::dot(x, &gy)
    }

    pub fn norm2(&self, x: &[F]) -> F {
        self.eval(x, x)
    }

    pub fn scale(&self, s: &F) -> Self {
        SymBilinearForm { gram: self.gram.scale(s) }
    }

    pub fn add(&self, o: &Self) -> Self {
        SymBilinearForm { gram: self.gram.add(&o.gram) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SymBilinearForm { gram: self.gram.sub(&o.gram) }
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero_tol(default_tol::<F>())
    }

    /// Pullback along the columns of `basis`.
    pub fn restrict(&self, basis: &Matrix<F>) -> Self {
        SymBilinearForm::from_computed(basis.transpose().mul(&self.gram).mul(basis))
    }

    /// Diagonal of a congruent diagonal matrix, via symmetric Gaussian elimination.
    pub fn congruence_diagonal(&self) -> Vec<F> {
        let mut a = self.gram.clone();
        let n = a.rows();
        let tol = default_tol::<F>();
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            if a[(k, k)].is_zero_tol(tol) {
                if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero_tol(tol)) {
                    sym_swap(&mut a, k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero_tol(tol)) {
                    // x_k <- x_k + x_j turns the pivot into 2 a_kj
                    for i in 0..n {
                        let v = a[(k, i)].add_r(&a[(j, i)]);
                        a[(k, i)] = v;
                    }
                    for i in 0..n {
                        let v = a[(i, k)].add_r(&a[(i, j)]);
                        a[(i, k)] = v;
                    }
                }
            }
            let p = a[(k, k)].clone();
            if p.is_zero_tol(tol) {
                diag.push(F::zero());
                continue;
            }
            for i in k + 1..n {
                if a[(i, k)].is_zero_tol(0.0) {
                    continue;
                }
                let f = a[(i, k)].div_r(&p);
                for j in k..n {
                    let v = a[(i, j)].sub_r(&f.mul_r(&a[(k, j)]));
                    a[(i, j)] = v;
                }
                for j in k..n {
                    let v = a[(j, i)].sub_r(&f.mul_r(&a[(j, k)]));
                    a[(j, i)] = v;
                }
            }
            diag.push(p);
        }
        diag
    }

    /// Sylvester inertia (positive, negative, zero).
    pub fn inertia(&self) -> (usize, usize, usize) {
        self.inertia_tol(EPS_RANK)
    }

    pub fn inertia_tol(&self, rank_tol: f64) -> (usize, usize, usize) {
        let vals: Vec<i8> = match F::BACKEND {
            Backend::Rational => self.congruence_diagonal().iter().map(|d| d.sign_tol(0.0)).collect(),
            Backend::Float => {
                let e = symmetric_eigen(&self.gram.to_f64()).expect("symmetric by construction");
                e.values.iter().map(|l| l.sign_tol(rank_tol)).collect()
            }
        };
        let p = vals.iter().filter(|&&s| s > 0).count();
        let m = vals.iter().filter(|&&s| s < 0).count();
        (p, m, vals.len() - p - m)
    }

    pub fn rank(&self) -> usize {
        let (p, m, _) = self.inertia();
        p + m
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.inertia().2 == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.inertia().0 == self.dim()
    }
}

fn sym_swap<F: Scalar>(a: &mut Matrix<F>, i: usize, j: usize) {
    a.swap_rows(i, j);
    for r in 0..a.rows() {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// The `f`-orthogonal complement of `s`.
pub fn orthogonal_complement<F: Scalar>(s: &Subspace<F>, f: &SymBilinearForm<F>) -> Result<Subspace<F>> {
    let n = f.dim();
    if s.ambient() != n {
        return Err(Error::Shape("subspace and form live in different spaces".into()));
    }
    if s.dim() == 0 {
        return Ok(Subspace::full(n));
    }
    let m = s.basis().transpose().mul(f.gram());
    if m.rank() < s.dim() {
        return Err(Error::Degenerate("form is degenerate against the subspace".into()));
    }
    Ok(Subspace::span(n, &m.nullspace()))
}

impl SymBilinearForm<crate::scalar::Q> {
    pub fn to_float(&self) -> SymBilinearForm<f64> {
        SymBilinearForm { gram: self.gram.to_f64() }
    }
}
