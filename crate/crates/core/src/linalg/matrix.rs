use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar, Q};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    /// Matrix whose columns are the given vectors; `rows` fixes the shape when empty.
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn diag(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[F]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_tol(0.0) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    out.data[i * o.cols + j].mul_add(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_r(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_r(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.mul_r(s))
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)].clone();
        }
        t
    }

    /// tr(self * o) without forming the product.
    pub fn trace_of_product(&self, o: &Self) -> F {
        assert_eq!((self.cols, self.rows), (o.rows, o.cols));
        let mut t = F::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                t.mul_add(&self[(i, k)], &o[(k, i)]);
            }
        }
        t
    }

    pub fn matvec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matvec");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.mul_add(a, b);
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, row-major in the pair index.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self[(i / o.rows, j / o.cols)].mul_r(&o[(i % o.rows, j % o.cols)])
        })
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m[(self.rows + i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_zero_tol(tol))
    }

    pub fn is_symmetric_tol(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self[(i, j)].sub_r(&self[(j, i)]).is_zero_tol(tol)))
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Rationals pivot on the first nonzero row; floats take the largest
    /// magnitude in the column and treat entries below `tol` as zero.
    pub fn rref_tol(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let p = match F::BACKEND {
                Backend::Rational => (r..m.rows).find(|&i| !m[(i, c)].is_zero_tol(tol)),
                Backend::Float => {
                    let mut best = None;
                    let mut bv = tol;
                    for i in r..m.rows {
                        let v = m[(i, c)].to_f64().abs();
                        if v >= bv {
                            bv = v;
                            best = Some(i);
                        }
                    }
                    best
                }
            };
            let Some(p) = p else { continue };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in 0..m.cols {
                let v = m[(r, j)].mul_r(&inv);
                m[(r, j)] = v;
            }
            m[(r, c)] = F::one();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero_tol(0.0) {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    let v = m[(i, j)].sub_r(&f.mul_r(&m[(r, j)]));
                    m[(i, j)] = v;
                }
                m[(i, c)] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        if F::BACKEND == Backend::Float {
            for x in m.data.iter_mut() {
                if x.is_zero_tol(tol) {
                    *x = F::zero();
                }
            }
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        self.rref_tol(default_tol::<F>())
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn rank_tol(&self, tol: f64) -> usize {
        self.rref_tol(tol).1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace_tol(&self, tol: f64) -> Vec<Vec<F>> {
        let (r, piv) = self.rref_tol(tol);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &pc) in piv.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            out.push(v);
        }
        out
    }

    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.nullspace_tol(default_tol::<F>())
    }

    /// Solve `self * X = rhs`; `None` when inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let tol = default_tol::<F>();
        let aug = Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        });
        let (r, piv) = aug.rref_tol(tol);
        if piv.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (row, &pc) in piv.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, b: &[F]) -> Option<Vec<F>> {
        let rhs = Self::from_cols(b.len(), &[b.to_vec()]);
        self.solve(&rhs).map(|x| x.col(0))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        if self.rank() < self.rows {
            return Err(Error::Singular);
        }
        self.solve(&Self::identity(self.rows)).ok_or(Error::Singular)
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let p = match F::BACKEND {
                Backend::Rational => (c..n).find(|&i| !m[(i, c)].is_zero_tol(0.0)),
                Backend::Float => (c..n)
                    .max_by(|&a, &b| m[(a, c)].to_f64().abs().total_cmp(&m[(b, c)].to_f64().abs())),
            };
            let Some(p) = p else { return F::zero() };
            if m[(p, c)].is_zero_tol(0.0) {
                return F::zero();
            }
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= piv.clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero_tol(0.0) {
                    continue;
                }
                let f = m[(i, c)].div_r(&piv);
                for j in c..n {
                    let v = m[(i, j)].sub_r(&f.mul_r(&m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }
}

impl Matrix<Q> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect();
        Self::from_rows(&v)
    }
}

pub(crate) fn default_tol<F: Scalar>() -> f64 {
    match F::BACKEND {
        Backend::Rational => 0.0,
        Backend::Float => crate::scalar::EPS_ZERO,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn rref_is_deterministic() {
        let m = Matrix::from_i64_rows(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.row(0), &[q(1, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(r.row(1), &[q(0, 1), q(1, 1), q(2, 1)]);
    }

    #[test]
    fn nullspace_annihilates() {
        let m = Matrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.matvec(&v).iter().all(|x| Scalar::is_zero(x)));
        }
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), q(1, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_err());
        assert_eq!(s.det(), q(0, 1));
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 1)], q(1, 1));
        assert_eq!(k[(3, 2)], q(4, 1));
    }

    #[test]
    fn float_rref_uses_partial_pivoting() {
        let m = Matrix::from_rows(&[vec![1e-3, 1.0], vec![1.0, 1.0]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert!((r[(0, 0)] - 1.0).abs() < 1e-15);
    }
}
