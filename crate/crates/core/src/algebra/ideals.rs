use serde::Serialize;

use super::{Algebra, MetrizedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, default_tol, general_real_eigenvalues, Matrix, Subspace};
use crate::random;
use crate::scalar::{rationalize, Backend, Scalar};

impl<F: Scalar> Algebra<F> {
    /// `e_i s` stays in `s` for every basis vector and every `s` in the subspace.
    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        let basis = s.vectors();
        (0..self.dim()).all(|i| {
            let ei = linalg::unit(self.dim(), i);
            basis.iter().all(|v| s.contains(&self.mul(&ei, v)))
        })
    }

    /// Smallest subspace containing `gens` and stable under every `L(e_i)`.
    pub fn ideal_closure(&self, gens: &[Vec<F>]) -> Subspace<F> {
        self.ideal_closure_tol(gens, default_tol::<F>())
    }

    pub fn ideal_closure_tol(&self, gens: &[Vec<F>], tol: f64) -> Subspace<F> {
        let n = self.dim();
        let mut s = Subspace::span_tol(n, gens, tol);
        loop {
            let mut vecs = s.vectors();
            for v in s.vectors() {
                for i in 0..n {
                    vecs.push(self.mul(&linalg::unit(n, i), &v));
                }
            }
            let next = Subspace::span_tol(n, &vecs, tol);
            if next.dim() == s.dim() {
                return next;
            }
            s = next;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionVerdict {
    Decomposed,
    NoProperIdealFound,
}

#[derive(Clone, Debug)]
pub struct Decomposition<F> {
    /// Pairwise orthogonal ideals summing to the whole space, each certified by `is_ideal`.
    pub ideals: Vec<Subspace<F>>,
    pub verdict: DecompositionVerdict,
}

/// Monte Carlo splitting into ideals: eigenvectors of random `L(x)` seed ideal
/// closures, found ideals are certified exactly and the search recurses on the
/// ideal and its orthogonal complement inside the current piece.
pub fn decompose_ideals<F: Scalar>(ma: &MetrizedAlgebra<F>, trials: usize, seed: u64) -> Result<Decomposition<F>> {
    if !ma.h.is_nondegenerate() {
        return Err(Error::Degenerate("decomposition needs a nondegenerate metric".into()));
    }
    let mut rng = random::rng(seed);
    let mut done = Vec::new();
    let mut todo = vec![Subspace::full(ma.dim())];
    while let Some(piece) = todo.pop() {
        match find_proper_ideal(ma, &piece, trials, &mut rng) {
            Some(ideal) => {
                let rest = complement_within(ma, &piece, &ideal)?;
                todo.push(rest);
                todo.push(ideal);
            }
            None => done.push(piece),
        }
    }
    done.sort_by_key(|s| s.vectors().first().map(|v| v.iter().position(|x| !x.is_zero_tol(0.0))));
    let verdict = if done.len() > 1 { DecompositionVerdict::Decomposed } else { DecompositionVerdict::NoProperIdealFound };
    Ok(Decomposition { ideals: done, verdict })
}

fn complement_within<F: Scalar>(ma: &MetrizedAlgebra<F>, piece: &Subspace<F>, ideal: &Subspace<F>) -> Result<Subspace<F>> {
    // coordinates c in piece with h(ideal, B c) = 0
    let m = ideal.basis().transpose().mul(ma.h.gram()).mul(piece.basis());
    let ns = m.nullspace();
    let vecs: Vec<Vec<F>> = ns.iter().map(|c| piece.basis().matvec(c)).collect();
    let rest = Subspace::span(ma.dim(), &vecs);
    if rest.dim() + ideal.dim() != piece.dim() {
        return Err(Error::Degenerate("ideal is degenerate for the metric".into()));
    }
    Ok(rest)
}

fn find_proper_ideal<F: Scalar>(
    ma: &MetrizedAlgebra<F>,
    piece: &Subspace<F>,
    trials: usize,
    rng: &mut random::SeededRng,
) -> Option<Subspace<F>> {
    let k = piece.dim();
    if k <= 1 {
        return None;
    }
    let alg_f = ma.algebra.to_float_generic();
    let basis_f = piece.basis().to_f64();
    for _ in 0..trials {
        let c = random::gauss_vec(rng, k);
        let x = basis_f.matvec(&c);
        // L(x) restricted to the piece, in piece coordinates
        let lx = alg_f.left_mult(&x);
        let restricted = basis_f.solve(&lx.mul(&basis_f))?;
        let eig = general_real_eigenvalues(&restricted).ok()?;
        let mut seen: Vec<f64> = Vec::new();
        for &(re, im) in &eig.values {
            if im.abs() > 1e-9 || seen.iter().any(|s| (s - re).abs() < 1e-7) {
                continue;
            }
            seen.push(re);
            let shifted = restricted.sub(&Matrix::identity(k).scale(&re));
            for v in shifted.nullspace_tol(1e-7) {
                let amb = basis_f.matvec(&v);
                let amb = linalg::scale(&(1.0 / linalg::max_abs(&amb)), &amb);
                let cl = alg_f.ideal_closure_tol(&[amb], 1e-7);
                if cl.dim() == 0 || cl.dim() >= k {
                    continue;
                }
                if let Some(ideal) = certify(ma, piece, &cl) {
                    return Some(ideal);
                }
            }
        }
    }
    None
}

/// Lifts a float subspace back to the working backend and re-checks it exactly there.
fn certify<F: Scalar>(ma: &MetrizedAlgebra<F>, piece: &Subspace<F>, cl: &Subspace<f64>) -> Option<Subspace<F>> {
    let rows: Vec<Vec<F>> = match F::BACKEND {
        Backend::Float => cl.vectors().iter().map(|v| v.iter().map(|&x| F::from_f64(x)).collect()).collect(),
        Backend::Rational => cl
            .vectors()
            .iter()
            .map(|v| v.iter().map(|&x| rationalize(x, 10_000, 1e-7).map(|q| F::from_q(&q))).collect::<Option<Vec<F>>>())
            .collect::<Option<Vec<_>>>()?,
    };
    let s = Subspace::span(ma.dim(), &rows);
    (s.dim() == cl.dim() && piece.contains_subspace(&s) && ma.algebra.is_ideal(&s)).then_some(s)
}

impl<F: Scalar> Algebra<F> {
    pub(crate) fn to_float_generic(&self) -> Algebra<f64> {
        self.to_float()
    }
}
