use crate::scalar::Scalar;

use super::{default_tol, Matrix};

/// Subspace held as the columns of a reduced echelon basis.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: std::fmt::Debug> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace in dim {} {:?}", self.ambient, self.basis)
    }
}

impl<F: Scalar> Subspace<F> {
    pub fn span(ambient: usize, vecs: &[Vec<F>]) -> Self {
        Self::span_tol(ambient, vecs, default_tol::<F>())
    }

    pub fn span_tol(ambient: usize, vecs: &[Vec<F>], tol: f64) -> Self {
        if vecs.is_empty() {
            return Self::zero(ambient);
        }
        let (r, piv) = Matrix::from_rows(vecs).rref_tol(tol);
        let rows: Vec<Vec<F>> = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis: Matrix::from_cols(ambient, &rows) }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Columns are the basis vectors.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.basis.col_vecs()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        if self.dim() == 0 {
            return super::is_zero_vec(v, default_tol::<F>()).then(Vec::new);
        }
        let c = self.basis.solve_vec(v)?;
        let back = self.basis.matvec(&c);
        super::is_zero_vec(&super::sub(&back, v), default_tol::<F>() * 1e3).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut v = self.vectors();
        v.extend(o.vectors());
        Self::span(self.ambient, &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[vec![q(1, 1), q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1), q(1, 1)]]);
        let b = Subspace::span(3, &[vec![q(1, 1), q(2, 1), q(1, 1)], vec![q(1, 1), q(0, 1), q(-1, 1)]]);
        assert_eq!(a, b);
        assert!(a.contains(&[q(2, 1), q(3, 1), q(1, 1)]));
        assert!(!a.contains(&[q(1, 1), q(0, 1), q(0, 1)]));
    }

    #[test]
    fn zero_and_full() {
        let z = Subspace::<Q>::zero(4);
        assert_eq!(z.dim(), 0);
        assert!(z.contains(&vec![q(0, 1); 4]));
        assert_eq!(Subspace::<Q>::full(4).sum(&z).dim(), 4);
    }
}
