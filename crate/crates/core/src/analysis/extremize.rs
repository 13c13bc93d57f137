//! Sampled bounds on sect: random planes refined by finite-difference gradient steps.

use crate::algebra::MetrizedAlgebra;
use crate::analysis::sect::{norton_value, plane_denominator};
use crate::error::{Error, Result};
use crate::linalg::{self, symmetric_eigen, Matrix};
use crate::random;

#[derive(Clone, Debug)]
pub struct BoundEstimate {
    pub min: f64,
    pub max: f64,
    pub min_witness: (Vec<f64>, Vec<f64>),
    pub max_witness: (Vec<f64>, Vec<f64>),
    pub samples: usize,
    pub seed: u64,
    /// Some refinement ran out of steps while still improving.
    pub exhausted: bool,
}

impl BoundEstimate {
    /// Nonnegative sect on everything seen.
    pub fn norton(&self) -> bool {
        self.min >= -1e-9
    }
}

const FD_STEP: f64 = 1e-5;
const REFINE_KEEP: usize = 6;

fn objective(ma: &MetrizedAlgebra<f64>, v: &[f64]) -> Option<f64> {
    let n = ma.dim();
    let (x, y) = v.split_at(n);
    let d = plane_denominator(&ma.h, x, y);
    (d.abs() > 1e-12).then(|| norton_value(&ma.algebra, &ma.h, x, y) / d)
}

/// Gram-Schmidt in `h` so the pair stays well conditioned; sect only sees the plane.
pub(crate) fn renormalize(ma: &MetrizedAlgebra<f64>, v: &[f64]) -> Vec<f64> {
    let n = ma.dim();
    let (x, y) = v.split_at(n);
    let nx = ma.h.norm2(x).abs().sqrt().max(1e-300);
    let x = linalg::scale(&(1.0 / nx), x);
    let hxx = ma.h.norm2(&x);
    let y = if hxx.abs() > 1e-12 { linalg::lin2(&1.0, y, &(-ma.h.eval(&x, y) / hxx), &x) } else { y.to_vec() };
    let ny = ma.h.norm2(&y).abs().sqrt().max(1e-300);
    let y = linalg::scale(&(1.0 / ny), &y);
    [x, y].concat()
}

fn gradient(obj: &impl Fn(&[f64]) -> Option<f64>, v: &[f64]) -> Option<Vec<f64>> {
    let scale = linalg::max_abs(v).max(1.0);
    let h = FD_STEP * scale;
    let mut g = vec![0.0; v.len()];
    let mut w = v.to_vec();
    for k in 0..v.len() {
        w[k] = v[k] + h;
        let fp = obj(&w)?;
        w[k] = v[k] - h;
        let fm = obj(&w)?;
        w[k] = v[k];
        g[k] = (fp - fm) / (2.0 * h);
    }
    Some(g)
}

/// Ascent (`sign = 1`) or descent (`sign = -1`) with step halving. Returns the point,
/// its value and whether the step budget ran out first.
pub(crate) fn refine(
    obj: &impl Fn(&[f64]) -> Option<f64>,
    renorm: &impl Fn(&[f64]) -> Vec<f64>,
    start: Vec<f64>,
    sign: f64,
    steps: usize,
) -> (Vec<f64>, f64, bool) {
    let mut v = renorm(&start);
    let mut f = obj(&v).unwrap_or(f64::NAN);
    let mut t = 0.25;
    for _ in 0..steps {
        let Some(g) = gradient(obj, &v) else { break };
        let gn = linalg::norm2(&g);
        if gn < 1e-13 {
            return (v, f, false);
        }
        let mut moved = false;
        while t > 1e-14 {
            let cand = renorm(&linalg::lin2(&1.0, &v, &(sign * t / gn), &g));
            match obj(&cand) {
                Some(fc) if sign * (fc - f) > 0.0 => {
                    v = cand;
                    f = fc;
                    t *= 1.5;
                    moved = true;
                    break;
                }
                _ => t *= 0.5,
            }
        }
        if !moved {
            return (v, f, false);
        }
    }
    (v, f, true)
}

/// Samples `samples` random planes, then refines the best few in each direction.
pub fn sect_extremize(ma: &MetrizedAlgebra<f64>, samples: usize, refine_steps: usize, seed: u64) -> Result<BoundEstimate> {
    let n = ma.dim();
    if n < 2 {
        return Err(Error::Precondition("sect needs dim >= 2".into()));
    }
    let eig = symmetric_eigen(ma.h.gram())?;
    if !eig.values.iter().all(|v| *v > 0.0) {
        return Err(Error::Precondition("extremization needs a positive definite metric".into()));
    }
    let frame = eig.vectors.mul(&Matrix::diag(&eig.values.iter().map(|v| v.sqrt().recip()).collect::<Vec<_>>()));
    let obj = |v: &[f64]| objective(ma, v);
    let renorm = |v: &[f64]| renormalize(ma, v);
    let mut rng = random::rng(seed);
    let mut pool: Vec<(f64, Vec<f64>)> = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = frame.matvec(&random::gauss_vec(&mut rng, n));
        let y = frame.matvec(&random::gauss_vec(&mut rng, n));
        let v = [x, y].concat();
        if let Some(f) = objective(ma, &v) {
            pool.push((f, v));
        }
    }
    if pool.is_empty() {
        return Err(Error::Budget("no nondegenerate plane sampled".into()));
    }
    pool.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut exhausted = false;
    let mut best = |sign: f64, cands: Vec<Vec<f64>>| {
        let mut out: Option<(f64, Vec<f64>)> = None;
        for c in cands {
            let (v, f, ex) = refine(&obj, &renorm, c, sign, refine_steps);
            exhausted |= ex;
            if f.is_finite() && out.as_ref().map_or(true, |(bf, _)| sign * (f - bf) > 0.0) {
                out = Some((f, v));
            }
        }
        out
    };
    let lows: Vec<Vec<f64>> = pool.iter().take(REFINE_KEEP).map(|p| p.1.clone()).collect();
    let highs: Vec<Vec<f64>> = pool.iter().rev().take(REFINE_KEEP).map(|p| p.1.clone()).collect();
    let (min, vmin) = best(-1.0, lows).ok_or_else(|| Error::Budget("descent failed".into()))?;
    let (max, vmax) = best(1.0, highs).ok_or_else(|| Error::Budget("ascent failed".into()))?;
    let split = |v: Vec<f64>| (v[..n].to_vec(), v[n..].to_vec());
    Ok(BoundEstimate {
        min,
        max,
        min_witness: split(vmin),
        max_witness: split(vmax),
        samples,
        seed,
        exhausted,
    })
}
