//! Derivations as the solution space of a linear system.

use crate::algebra::Algebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Basis of `{D : D(x y) = D(x) y + x D(y)}`, each as an `n x n` matrix.
pub fn derivations<F: Scalar>(a: &Algebra<F>) -> Vec<Matrix<F>> {
    let n = a.dim();
    let prods: Vec<Vec<Vec<F>>> = (0..n).map(|i| (0..n).map(|j| a.basis_product(i, j)).collect()).collect();
    // unknown d[(p, q)] sits at column p n + q
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for r in 0..n {
                let mut row = vec![F::zero(); n * n];
                for q in 0..n {
                    row[r * n + q] += prods[i][j][q].clone();
                }
                for p in 0..n {
                    row[p * n + i] -= prods[p][j][r].clone();
                    row[p * n + j] -= prods[i][p][r].clone();
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(&rows)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |p, q| v[p * n + q].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn simplicial_has_no_derivations() {
        for n in 2..5 {
            let e = crate::constructions::simplicial::<Q>(n).unwrap();
            assert!(derivations(&e.algebra).is_empty());
        }
    }

    #[test]
    fn cross_product_derivations_are_so3() {
        let so3 = crate::constructions::lie_so::<Q>(3).unwrap();
        assert_eq!(derivations(&so3.algebra.algebra).len(), 3);
    }
}
