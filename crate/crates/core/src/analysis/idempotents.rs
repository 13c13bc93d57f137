//! Idempotents and square-zero rays: closed forms on the simplicial family and a Newton search.

use serde::Serialize;

use crate::algebra::MetrizedAlgebra;
use crate::constructions::simplicial::gamma;
use crate::error::{Error, Result};
use crate::linalg::{self, default_tol, general_real_eigenvalues, orthogonal_complement, symmetric_eigen, Matrix, Subspace};
use crate::random;
use crate::scalar::{Scalar, EPS_DEDUP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Idempotent,
    SquareZeroRay,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentRecord<F> {
    pub point: Vec<F>,
    pub kind: RecordKind,
    pub h_norm2: F,
    /// Ascending; empty for square-zero rays.
    pub orth_spectrum: Vec<f64>,
}

/// Scales to unit `h`-norm when the square root exists, then makes the first nonzero entry positive.
fn normalize_ray<F: Scalar>(ma: &MetrizedAlgebra<F>, z: Vec<F>) -> Vec<F> {
    let tol = default_tol::<F>();
    let nz = ma.h.norm2(&z);
    let z = match nz.sqrt() {
        Some(r) if !r.is_zero_tol(tol) => linalg::scale(&r.recip(), &z),
        _ => z,
    };
    match z.iter().find(|v| !v.is_zero_tol(tol)) {
        Some(v) if v.sign_tol(tol) < 0 => linalg::scale(&-F::one(), &z),
        _ => z,
    }
}

fn record<F: Scalar>(ma: &MetrizedAlgebra<F>, point: Vec<F>, kind: RecordKind) -> Result<IdempotentRecord<F>> {
    let (point, orth_spectrum) = match kind {
        RecordKind::Idempotent => {
            let s = orth_spectrum(ma, &point)?;
            (point, s)
        }
        RecordKind::SquareZeroRay => (normalize_ray(ma, point), Vec::new()),
    };
    Ok(IdempotentRecord { h_norm2: ma.h.norm2(&point), point, kind, orth_spectrum })
}

/// Every idempotent and square-zero ray of the simplicial algebra, one per complementary pair of index sets.
pub fn simplicial_idempotents<F: Scalar>(n: usize) -> Result<Vec<IdempotentRecord<F>>> {
    let ma = crate::constructions::simplicial::<F>(n)?;
    let mut out = Vec::new();
    // index sets containing 0 represent each pair {I, complement}
    for mask in 0..(1usize << n) {
        let members: Vec<usize> = std::iter::once(0).chain((1..=n).filter(|i| mask >> (i - 1) & 1 == 1)).collect();
        if members.len() == n + 1 {
            continue;
        }
        let mut g = linalg::zeros::<F>(n);
        for &i in &members {
            g = linalg::add(&g, &gamma(n, i));
        }
        let k = members.len() as i64;
        let d = n as i64 + 1 - 2 * k;
        if d == 0 {
            out.push(record(&ma, g, RecordKind::SquareZeroRay)?);
        } else {
            out.push(record(&ma, linalg::scale(&F::ratio(n as i64 - 1, d), &g), RecordKind::Idempotent)?);
        }
    }
    Ok(out)
}

/// `e_I / (1 - 2 alpha + 2 alpha |I|)` over nonempty `I`, square-zero where the denominator vanishes.
pub fn talg_idempotents<F: Scalar>(n: usize, alpha: &F) -> Result<Vec<IdempotentRecord<F>>> {
    let tol = default_tol::<F>();
    if alpha.is_zero_tol(tol) || alpha.sub_r(&F::ratio(1, 2)).is_zero_tol(tol) {
        return Err(Error::Precondition("alpha must avoid 0 and 1/2".into()));
    }
    let ma = MetrizedAlgebra::with_killing(crate::constructions::talg(n, alpha)?);
    let two_a = alpha.mul_r(&F::from_i64(2));
    let mut out = Vec::new();
    for mask in 1..(1usize << n) {
        let e: Vec<F> = (0..n).map(|i| if mask >> i & 1 == 1 { F::one() } else { F::zero() }).collect();
        let size = F::from_i64(mask.count_ones() as i64);
        let d = F::one().sub_r(&two_a).add_r(&two_a.mul_r(&size));
        if d.is_zero_tol(tol) {
            out.push(record(&ma, e, RecordKind::SquareZeroRay)?);
        } else {
            out.push(record(&ma, linalg::scale(&d.recip(), &e), RecordKind::Idempotent)?);
        }
    }
    Ok(out)
}

/// Eigenvalues of `L(e)` on the `h`-orthogonal complement of `e`, ascending.
pub fn orth_spectrum<F: Scalar>(ma: &MetrizedAlgebra<F>, e: &[F]) -> Result<Vec<f64>> {
    let n = ma.dim();
    if ma.h.norm2(e).is_zero_tol(default_tol::<F>()) {
        return Err(Error::Degenerate("isotropic element".into()));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let perp = orthogonal_complement(&Subspace::span(n, &[e.to_vec()]), &ma.h)?;
    let b = perp.basis().to_f64();
    let g = ma.h.gram().to_f64();
    let l = ma.algebra.left_mult(e).to_f64();
    let k = b.transpose().mul(&g).mul(&b);
    let kin = symmetric_eigen(&k)?;
    let mut vals = if kin.values.iter().all(|v| *v > 0.0) {
        // h-orthonormal frame of the complement
        let scale = Matrix::diag(&kin.values.iter().map(|v| f64::sqrt(*v).recip()).collect::<Vec<_>>());
        let w = b.mul(&kin.vectors).mul(&scale);
        let s = w.transpose().mul(&g).mul(&l).mul(&w);
        let s = s.add(&s.transpose()).scale(&0.5);
        symmetric_eigen(&s)?.values
    } else {
        let bt = b.transpose();
        let m = bt.mul(&b).inverse()?.mul(&bt).mul(&l).mul(&b);
        general_real_eigenvalues(&m)?.real_parts()
    };
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

#[derive(Clone, Debug)]
pub struct NewtonSearch {
    pub records: Vec<IdempotentRecord<f64>>,
    pub trials: usize,
    /// New points were still turning up in the last quarter of the trials.
    pub partial: bool,
}

const NEWTON_TOL: f64 = 1e-12;
const SQUARE_ZERO_TOL: f64 = 1e-10;

/// Frame `w` with `w^T G w = I` when `G` is positive definite, otherwise the identity.
fn sampling_frame(g: &Matrix<f64>) -> Matrix<f64> {
    match symmetric_eigen(g) {
        Ok(e) if e.values.iter().all(|v| *v > 0.0) => {
            let s = Matrix::diag(&e.values.iter().map(|v| f64::sqrt(*v).recip()).collect::<Vec<_>>());
            e.vectors.mul(&s)
        }
        _ => Matrix::identity(g.rows()),
    }
}

fn newton_root(ma: &MetrizedAlgebra<f64>, mut x: Vec<f64>) -> Option<Vec<f64>> {
    let n = ma.dim();
    for _ in 0..100 {
        let f = linalg::sub(&ma.mul(&x, &x), &x);
        if linalg::norm2(&f) < NEWTON_TOL {
            return Some(x);
        }
        let j = ma.algebra.left_mult(&x).scale(&2.0).sub(&Matrix::identity(n));
        let step = j.solve_vec(&f)?;
        if j.rank() < n {
            return None;
        }
        x = linalg::sub(&x, &step);
        if !x.iter().all(|v| v.is_finite()) || linalg::max_abs(&x) > 1e8 {
            return None;
        }
    }
    let f = linalg::sub(&ma.mul(&x, &x), &x);
    (linalg::norm2(&f) < NEWTON_TOL).then_some(x)
}

/// Damped Gauss-Newton on `(x x, |x|^2 - 1)`.
fn square_zero_root(ma: &MetrizedAlgebra<f64>, x: Vec<f64>) -> Option<Vec<f64>> {
    let n = ma.dim();
    let mut x = linalg::scale(&(1.0 / linalg::norm2(&x)), &x);
    for _ in 0..200 {
        let xx = ma.mul(&x, &x);
        if linalg::norm2(&xx) < SQUARE_ZERO_TOL * 1e-2 {
            break;
        }
        let l2 = ma.algebra.left_mult(&x).scale(&2.0);
        let mut rows: Vec<Vec<f64>> = (0..n).map(|i| l2.row(i).to_vec()).collect();
        rows.push(linalg::scale(&2.0, &x));
        let jac = Matrix::from_rows(&rows);
        let mut res = xx;
        res.push(linalg::dot(&x, &x) - 1.0);
        let jt = jac.transpose();
        let normal = jt.mul(&jac).add(&Matrix::identity(n).scale(&1e-14));
        let step = normal.solve_vec(&jt.matvec(&res))?;
        x = linalg::sub(&x, &step);
        let nx = linalg::norm2(&x);
        if !nx.is_finite() || nx == 0.0 {
            return None;
        }
        x = linalg::scale(&(1.0 / nx), &x);
    }
    (linalg::norm2(&ma.mul(&x, &x)) < SQUARE_ZERO_TOL).then_some(x)
}

fn push_new(found: &mut Vec<Vec<f64>>, p: Vec<f64>) -> bool {
    if found.iter().any(|q| linalg::norm2(&linalg::sub(q, &p)) < EPS_DEDUP) {
        return false;
    }
    found.push(p);
    true
}

/// Newton from `trials` starts uniform in the `h`-ball of radius 3, plus a Gauss-Newton pass
/// for square-zero rays on the unit sphere.
pub fn newton_idempotents(ma: &MetrizedAlgebra<f64>, trials: usize, seed: u64) -> Result<NewtonSearch> {
    let n = ma.dim();
    let frame = sampling_frame(ma.h.gram());
    let mut rng = random::rng(seed);
    let mut idem: Vec<Vec<f64>> = Vec::new();
    let mut rays: Vec<Vec<f64>> = Vec::new();
    let mut last_new = 0;
    for t in 0..trials {
        let g = random::gauss_vec(&mut rng, n);
        let u: f64 = rand::Rng::gen(&mut rng);
        let r = 3.0 * u.powf(1.0 / n as f64) / linalg::norm2(&g);
        let start = frame.matvec(&linalg::scale(&r, &g));
        if let Some(x) = newton_root(ma, start.clone()) {
            if linalg::norm2(&x) > 1e-8 && push_new(&mut idem, x) {
                last_new = t;
            }
        }
        if let Some(z) = square_zero_root(ma, start) {
            let z = normalize_ray(ma, z);
            if push_new(&mut rays, z) {
                last_new = t;
            }
        }
    }
    let mut records = Vec::new();
    for p in idem {
        records.push(record(ma, p, RecordKind::Idempotent)?);
    }
    for z in rays {
        records.push(record(ma, z, RecordKind::SquareZeroRay)?);
    }
    sort_records(&mut records);
    Ok(NewtonSearch { records, trials, partial: trials > 0 && last_new * 4 >= trials * 3 })
}

/// Deterministic order: kind, norm, then coordinates.
pub fn sort_records<F: Scalar>(records: &mut [IdempotentRecord<F>]) {
    records.sort_by(|a, b| {
        a.kind
            .cmp(&b.kind)
            .then(a.h_norm2.to_f64().total_cmp(&b.h_norm2.to_f64()))
            .then_with(|| {
                a.point
                    .iter()
                    .zip(&b.point)
                    .map(|(x, y)| x.to_f64().total_cmp(&y.to_f64()))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
}

/// Pointwise match of two record sets at `tol`, ignoring order. Rays match as lines.
pub fn records_match<F: Scalar, G: Scalar>(a: &[IdempotentRecord<F>], b: &[IdempotentRecord<G>], tol: f64) -> bool {
    let direction = |v: Vec<f64>| {
        let len = linalg::norm2(&v);
        v.into_iter().map(|x| x / len).collect::<Vec<f64>>()
    };
    a.len() == b.len()
        && a.iter().all(|r| {
            let ray = r.kind == RecordKind::SquareZeroRay;
            let p = linalg::to_f64_vec(&r.point);
            let p = if ray { direction(p) } else { p };
            b.iter().any(|s| {
                if s.kind != r.kind {
                    return false;
                }
                let o = linalg::to_f64_vec(&s.point);
                if !ray {
                    return linalg::norm2(&linalg::sub(&p, &o)) < tol;
                }
                let o = direction(o);
                let flipped: Vec<f64> = o.iter().map(|v| -v).collect();
                linalg::norm2(&linalg::sub(&p, &o)) < tol || linalg::norm2(&linalg::sub(&p, &flipped)) < tol
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn simplicial_counts() {
        let e3 = simplicial_idempotents::<Q>(3).unwrap();
        assert_eq!(e3.len(), 7);
        assert_eq!(e3.iter().filter(|r| r.kind == RecordKind::SquareZeroRay).count(), 3);
        let e4 = simplicial_idempotents::<Q>(4).unwrap();
        assert_eq!(e4.len(), 15);
        assert!(e4.iter().all(|r| r.kind == RecordKind::Idempotent));
    }

    #[test]
    fn minimal_idempotent_spectrum() {
        let e4 = crate::constructions::simplicial::<Q>(4).unwrap();
        let s = orth_spectrum(&e4, &gamma(4, 1)).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|v| (v + 1.0 / 3.0).abs() < 1e-10));
    }

    #[test]
    fn talg_counts_and_exclusions() {
        assert_eq!(talg_idempotents::<Q>(3, &q(1, 1)).unwrap().len(), 7);
        assert!(talg_idempotents::<Q>(3, &q(1, 2)).is_err());
    }

    #[test]
    fn newton_on_two_dimensional_simplicial() {
        let e2 = crate::constructions::simplicial::<f64>(2).unwrap();
        let found = newton_idempotents(&e2, 500, 7).unwrap();
        let exact = simplicial_idempotents::<Q>(2).unwrap();
        assert!(records_match(&found.records, &exact, EPS_DEDUP));
    }
}
