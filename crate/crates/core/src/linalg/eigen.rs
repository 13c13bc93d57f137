use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};

use super::Matrix;

#[derive(Clone, Debug)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` belongs to `values[k]`.
    pub vectors: Matrix<f64>,
}

/// Cyclic Jacobi rotations. Rationals are refused so the caller converts explicitly.
pub fn symmetric_eigen<F: Scalar>(m: &Matrix<F>) -> Result<SymEigen> {
    if F::BACKEND == Backend::Rational {
        return Err(Error::Backend("symmetric_eigen".into()));
    }
    if !m.is_square() {
        return Err(Error::Shape("eigenproblem of a non-square matrix".into()));
    }
    let mut a = m.to_f64();
    let n = a.rows();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    if !a.is_symmetric_tol(1e-9 * scale.max(1.0)) {
        return Err(Error::Asymmetric);
    }
    let mut v = Matrix::<f64>::identity(n);
    let off = |a: &Matrix<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    for _sweep in 0..100 {
        if off(&a) <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralEigen {
    /// (real, imaginary) pairs sorted lexicographically; conjugate pairs both listed.
    pub values: Vec<(f64, f64)>,
    pub converged: bool,
}

impl GeneralEigen {
    pub fn has_complex(&self, tol: f64) -> bool {
        self.values.iter().any(|v| v.1.abs() > tol)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.0).collect()
    }
}

/// Hessenberg reduction followed by shifted QR.
pub fn general_real_eigenvalues<F: Scalar>(m: &Matrix<F>) -> Result<GeneralEigen> {
    if !m.is_square() {
        return Err(Error::Shape("eigenproblem of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(GeneralEigen { values: vec![], converged: true });
    }
    // one-based working copy keeps the index arithmetic readable
    let mut a = vec![vec![0.0f64; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = m[(i, j)].to_f64();
        }
    }
    hessenberg(&mut a, n);
    let (wr, wi, converged) = hqr(&mut a, n);
    let mut values: Vec<(f64, f64)> = (1..=n).filter(|&i| wr[i].is_finite()).map(|i| (wr[i], wi[i])).collect();
    values.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    Ok(GeneralEigen { values, converged })
}

fn hessenberg(a: &mut [Vec<f64>], n: usize) {
    for m in 2..n {
        let mut x = 0.0;
        let mut i = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                i = j;
            }
        }
        if i != m {
            for j in m - 1..=n {
                let t = a[i][j];
                a[i][j] = a[m][j];
                a[m][j] = t;
            }
            for row in a.iter_mut().take(n + 1).skip(1) {
                row.swap(i, m);
            }
        }
        if x != 0.0 {
            for i in m + 1..=n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        a[i][j] -= y * a[m][j];
                    }
                    for j in 1..=n {
                        a[j][m] += y * a[j][i];
                    }
                }
            }
        }
    }
    for i in 3..=n {
        for j in 1..i - 1 {
            a[i][j] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

#[allow(clippy::many_single_char_names, unused_assignments)]
fn hqr(a: &mut [Vec<f64>], n: usize) -> (Vec<f64>, Vec<f64>, bool) {
    let mut wr = vec![f64::NAN; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n as isize;
    let mut t = 0.0;
    let (mut p, mut q, mut r) = (0.0f64, 0.0f64, 0.0f64);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[nu][nu];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
            } else {
                y = a[nu - 1][nu - 1];
                w = a[nu][nu - 1] * a[nu - 1][nu];
                if l == nu - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        wr[nu - 1] = x + z;
                        wr[nu] = x + z;
                        if z != 0.0 {
                            wr[nu] = x - w / z;
                        }
                        wi[nu - 1] = 0.0;
                        wi[nu] = 0.0;
                    } else {
                        wr[nu - 1] = x + p;
                        wr[nu] = x + p;
                        wi[nu - 1] = -z;
                        wi[nu] = z;
                    }
                    nn -= 2;
                } else {
                    if its == 60 {
                        return (wr, wi, false);
                    }
                    if its == 10 || its == 20 || its == 40 {
                        t += x;
                        for i in 1..=nu {
                            a[i][i] -= x;
                        }
                        let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut m = nu - 2;
                    loop {
                        z = a[m][m];
                        r = x - z;
                        let s0 = y - z;
                        p = (r * s0 - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s0;
                        r = a[m + 2][m + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in m + 2..=nu {
                        a[i][i - 2] = 0.0;
                        if i != m + 2 {
                            a[i][i - 3] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k + 1 <= nu {
                        if k != m {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if k != nu - 1 {
                                r = a[k + 2][k - 1];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign((p * p + q * q + r * r).sqrt(), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nu {
                                p = a[k][j] + q * a[k + 1][j];
                                if k != nu - 1 {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            let mmin = if nu < k + 3 { nu } else { k + 3 };
                            for i in l..=mmin {
                                p = x * a[i][k] + y * a[i][k + 1];
                                if k != nu - 1 {
                                    p += z * a[i][k + 2];
                                    a[i][k + 2] -= p * r;
                                }
                                a[i][k + 1] -= p * q;
                                a[i][k] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 1 || l + 1 >= nn as usize {
                break;
            }
        }
    }
    (wr, wi, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn jacobi_small_cases() {
        let e = symmetric_eigen(&Matrix::diag(&[2.0, -1.0])).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0]);
        let e = symmetric_eigen(&Matrix::from_rows(&[vec![5.0]])).unwrap();
        assert_eq!(e.values, vec![5.0]);
        let e3 = Matrix::from_rows(&[vec![1.5, -0.5, -0.5], vec![-0.5, 1.5, -0.5], vec![-0.5, -0.5, 1.5]]);
        let e = symmetric_eigen(&e3).unwrap();
        for (got, want) in e.values.iter().zip([0.5, 2.0, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn jacobi_refuses_rationals() {
        let m = Matrix::from_rows(&[vec![q(1, 1)]]);
        assert!(matches!(symmetric_eigen(&m), Err(Error::Backend(_))));
    }

    #[test]
    fn qr_small_cases() {
        let e = general_real_eigenvalues(&Matrix::<f64>::identity(2)).unwrap();
        assert_eq!(e.values, vec![(1.0, 0.0), (1.0, 0.0)]);
        // companion matrix of t^2 - t
        let c = Matrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0]]);
        let e = general_real_eigenvalues(&c).unwrap();
        assert!((e.values[0].0).abs() < 1e-14 && (e.values[1].0 - 1.0).abs() < 1e-14);
        let rot = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let e = general_real_eigenvalues(&rot).unwrap();
        assert!(e.has_complex(1e-12));
    }

    #[test]
    fn qr_nonsymmetric_five() {
        // upper triangular plus a nilpotent perturbation keeps the spectrum visible
        let m = Matrix::from_rows(&[
            vec![3.0, 1.0, 4.0, 1.0, 5.0],
            vec![0.0, -2.0, 6.0, 5.0, 3.0],
            vec![0.0, 0.0, 0.5, 8.0, 9.0],
            vec![0.0, 0.0, 0.0, 7.0, 2.0],
            vec![0.0, 0.0, 0.0, 0.0, -1.0],
        ]);
        let p = Matrix::from_rows(&[
            vec![1.0, 0.0, 0.0, 0.0, 0.0],
            vec![2.0, 1.0, 0.0, 0.0, 0.0],
            vec![-1.0, 3.0, 1.0, 0.0, 0.0],
            vec![0.5, 0.0, 2.0, 1.0, 0.0],
            vec![1.0, 1.0, 1.0, 1.0, 1.0],
        ]);
        let sim = p.mul(&m).mul(&p.inverse().unwrap());
        let e = general_real_eigenvalues(&sim).unwrap();
        assert!(e.converged);
        for (got, want) in e.real_parts().iter().zip([-2.0, -1.0, 0.5, 3.0, 7.0]) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
    }
}
