//! The triple product on `A + A + A`, which is the Nahm algebra for Lie input.

use crate::algebra::{Algebra, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// `x y = 1/2 (x2 y3 + y2 x3, x3 y1 + y3 x1, x1 y2 + y1 x2)`; commutative for either input symmetry.
pub fn triple<F: Scalar>(a: &Algebra<F>) -> Algebra<F> {
    let n = a.dim();
    let prefix = match a.symmetry() {
        Symmetry::Commutative => "trip",
        Symmetry::Anticommutative => "nahm",
    };
    let half = F::ratio(1, 2);
    let t = Algebra::from_fn(format!("{prefix}({})", a.name()), 3 * n, Symmetry::Commutative, |p, q| {
        let (bp, ip) = (p / n, p % n);
        let (bq, iq) = (q / n, q % n);
        let mut out = linalg::zeros(3 * n);
        // nu_b(e_i) nu_c(e_j) lands in the third block with the ordered product
        // taken in the cyclic order of (b, c)
        if bp != bq {
            let target = 3 - bp - bq;
            let prod = if (bp + 1) % 3 == bq { a.basis_product(ip, iq) } else { a.basis_product(iq, ip) };
            for (k, v) in prod.iter().enumerate() {
                out[target * n + k] = v.mul_r(&half);
            }
        }
        out
    });
    t
}

/// `nahm(g)`: the triple of an anticommutative algebra.
pub fn nahm<F: Scalar>(g: &Algebra<F>) -> Result<Algebra<F>> {
    if g.symmetry() != Symmetry::Anticommutative {
        return Err(Error::Precondition("nahm needs an anticommutative algebra".into()));
    }
    Ok(triple(g))
}

/// `nu_i(x)` places `x` in block `i` (`i = 1, 2, 3`).
pub fn nu<F: Scalar>(i: usize, x: &[F]) -> Vec<F> {
    assert!((1..=3).contains(&i));
    let n = x.len();
    let mut v = linalg::zeros(3 * n);
    v[(i - 1) * n..i * n].clone_from_slice(x);
    v
}

pub fn block<F: Scalar>(x: &[F], i: usize) -> Vec<F> {
    let n = x.len() / 3;
    x[(i - 1) * n..i * n].to_vec()
}

fn blocks<F: Scalar>(parts: [Vec<F>; 3]) -> Vec<F> {
    parts.into_iter().flatten().collect()
}

pub fn diag<F: Scalar>(x: &[F]) -> Vec<F> {
    blocks([x.to_vec(), x.to_vec(), x.to_vec()])
}

/// `Gamma_0 = diag`, `Gamma_1(x) = (x, -x, -x)` and so on.
pub fn gamma_emb<F: Scalar>(i: usize, x: &[F]) -> Vec<F> {
    assert!(i <= 3);
    let neg: Vec<F> = x.iter().map(|v| -v.clone()).collect();
    let pick = |k: usize| if i == 0 || i == k { x.to_vec() } else { neg.clone() };
    blocks([pick(1), pick(2), pick(3)])
}

/// `(Gamma_i - Gamma_j) / 2`.
pub fn nabla_pair<F: Scalar>(i: usize, j: usize, x: &[F]) -> Vec<F> {
    linalg::scale(&F::ratio(1, 2), &linalg::sub(&gamma_emb(i, x), &gamma_emb(j, x)))
}

/// `diag - 3 nu_i`.
pub fn nabla<F: Scalar>(i: usize, x: &[F]) -> Vec<F> {
    linalg::sub(&diag(x), &linalg::scale(&F::from_i64(3), &nu(i, x)))
}

/// Embedding of `trip(A)` onto the sum-zero part of `A^4`.
pub fn s4_phi<F: Scalar>(x: &[F]) -> Vec<F> {
    let (x1, x2, x3) = (block(x, 1), block(x, 2), block(x, 3));
    let half = F::ratio(1, 2);
    let comb = |s: [i64; 3]| -> Vec<F> {
        let mut v = linalg::zeros(x1.len());
        for (c, b) in s.iter().zip([&x1, &x2, &x3]) {
            v = linalg::add(&v, &linalg::scale(&F::from_i64(*c), b));
        }
        linalg::scale(&half, &v)
    };
    [comb([1, 1, 1]), comb([1, -1, -1]), comb([-1, 1, -1]), comb([-1, -1, 1])].concat()
}

/// Projection of `A^4` onto the sum-zero part along the diagonal.
pub fn s4_project<F: Scalar>(z: &[F]) -> Vec<F> {
    let n = z.len() / 4;
    let quarter = F::ratio(1, 4);
    let mut mean = linalg::zeros(n);
    for k in 0..4 {
        mean = linalg::add(&mean, &z[k * n..(k + 1) * n]);
    }
    let mean = linalg::scale(&quarter, &mean);
    (0..4).flat_map(|k| linalg::sub(&z[k * n..(k + 1) * n], &mean)).collect()
}

/// Componentwise product on `A^4`.
pub fn a4_mul<F: Scalar>(a: &Algebra<F>, z: &[F], w: &[F]) -> Vec<F> {
    let n = a.dim();
    (0..4).flat_map(|k| a.mul(&z[k * n..(k + 1) * n], &w[k * n..(k + 1) * n])).collect()
}

/// Action of the transposition `(i j)` of `{0, 1, 2, 3}` on `trip(A)`.
pub fn s4_transposition<F: Scalar>(n: usize, i: usize, j: usize) -> Result<Matrix<F>> {
    let (i, j) = (i.min(j), i.max(j));
    // (source block, sign) for each target block
    let table: [(usize, i64); 3] = match (i, j) {
        (0, 1) => [(1, 1), (3, -1), (2, -1)],
        (0, 2) => [(3, -1), (2, 1), (1, -1)],
        (0, 3) => [(2, -1), (1, -1), (3, 1)],
        (1, 2) => [(2, 1), (1, 1), (3, 1)],
        (1, 3) => [(3, 1), (2, 1), (1, 1)],
        (2, 3) => [(1, 1), (3, 1), (2, 1)],
        _ => return Err(Error::Precondition("transposition needs distinct indices in 0..=3".into())),
    };
    let mut m = Matrix::zeros(3 * n, 3 * n);
    for (t, &(s, sign)) in table.iter().enumerate() {
        for k in 0..n {
            m[(t * n + k, (s - 1) * n + k)] = F::from_i64(sign);
        }
    }
    Ok(m)
}
