//! Real Hurwitz algebras by Cayley-Dickson doubling, and matrices over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Number of real coordinates: 1, 2, 4 or 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    #[serde(rename = "r")]
    Real,
    #[serde(rename = "c")]
    Complex,
    #[serde(rename = "h")]
    Quaternion,
    #[serde(rename = "o")]
    Octonion,
}

impl Level {
    pub fn size(self) -> usize {
        match self {
            Level::Real => 1,
            Level::Complex => 2,
            Level::Quaternion => 4,
            Level::Octonion => 8,
        }
    }

    pub fn from_size(d: usize) -> Option<Self> {
        match d {
            1 => Some(Level::Real),
            2 => Some(Level::Complex),
            4 => Some(Level::Quaternion),
            8 => Some(Level::Octonion),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "1" | "real" => Some(Level::Real),
            "c" | "2" | "complex" => Some(Level::Complex),
            "h" | "4" | "quaternion" => Some(Level::Quaternion),
            "o" | "8" | "octonion" => Some(Level::Octonion),
            _ => None,
        }
    }

    pub fn is_associative(self) -> bool {
        self != Level::Octonion
    }

    pub fn tag(self) -> &'static str {
        match self {
            Level::Real => "r",
            Level::Complex => "c",
            Level::Quaternion => "h",
            Level::Octonion => "o",
        }
    }
}

/// Element of a Hurwitz algebra as its coordinate vector; coordinate 0 is the real part.
#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzScalar<F> {
    pub coords: Vec<F>,
}

impl<F: Scalar> HurwitzScalar<F> {
    pub fn new(coords: Vec<F>) -> Result<Self> {
        if Level::from_size(coords.len()).is_none() {
            return Err(Error::Shape("Hurwitz coordinates must have length 1, 2, 4 or 8".into()));
        }
        Ok(HurwitzScalar { coords })
    }

    pub fn real(level: Level, x: F) -> Self {
        let mut c = vec![F::zero(); level.size()];
        c[0] = x;
        HurwitzScalar { coords: c }
    }

    pub fn unit(level: Level, k: usize) -> Self {
        HurwitzScalar { coords: linalg::unit(level.size(), k) }
    }

    pub fn level(&self) -> Level {
        Level::from_size(self.coords.len()).expect("valid length")
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.coords.len() != o.coords.len() {
            return Err(Error::Shape("Hurwitz level mismatch".into()));
        }
        Ok(HurwitzScalar { coords: cd_mul(&self.coords, &o.coords) })
    }

    pub fn conj(&self) -> Self {
        HurwitzScalar { coords: cd_conj(&self.coords) }
    }

    pub fn re(&self) -> F {
        self.coords[0].clone()
    }

    pub fn norm(&self) -> F {
        linalg::dot(&self.coords, &self.coords)
    }
}

/// `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`.
pub fn cd_mul<F: Scalar>(x: &[F], y: &[F]) -> Vec<F> {
    let n = x.len();
    if n == 1 {
        return vec![x[0].mul_r(&y[0])];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut out = linalg::sub(&cd_mul(a, c), &cd_mul(&cd_conj(d), b));
    out.extend(linalg::add(&cd_mul(d, a), &cd_mul(b, &cd_conj(c))));
    out
}

pub fn cd_conj<F: Scalar>(x: &[F]) -> Vec<F> {
    let mut out: Vec<F> = x.iter().map(|v| -v.clone()).collect();
    out[0] = x[0].clone();
    out
}

/// Square matrix with Hurwitz entries, stored row-major as coordinate vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct HMat<F> {
    pub n: usize,
    pub level: Level,
    pub entries: Vec<Vec<F>>,
}

impl<F: Scalar> HMat<F> {
    pub fn zero(n: usize, level: Level) -> Self {
        HMat { n, level, entries: vec![vec![F::zero(); level.size()]; n * n] }
    }

    pub fn identity(n: usize, level: Level) -> Self {
        let mut m = Self::zero(n, level);
        for i in 0..n {
            m.entries[i * n + i][0] = F::one();
        }
        m
    }

    /// `u e_ij` with `u` the `k`-th unit of the Hurwitz algebra.
    pub fn elementary(n: usize, level: Level, i: usize, j: usize, k: usize) -> Self {
        let mut m = Self::zero(n, level);
        m.entries[i * n + j][k] = F::one();
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &[F] {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Vec<F> {
        &mut self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!((self.n, self.level), (o.n, o.level));
        let n = self.n;
        let mut out = Self::zero(n, self.level);
        for i in 0..n {
            for j in 0..n {
                let mut acc = vec![F::zero(); self.level.size()];
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if linalg::is_zero_vec(a, 0.0) || linalg::is_zero_vec(b, 0.0) {
                        continue;
                    }
                    acc = linalg::add(&acc, &cd_mul(a, b));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        HMat { n: self.n, level: self.level, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| linalg::add(a, b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HMat { n: self.n, level: self.level, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| linalg::sub(a, b)).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        HMat { n: self.n, level: self.level, entries: self.entries.iter().map(|a| linalg::scale(s, a)).collect() }
    }

    /// Left multiplication of every entry by a Hurwitz scalar.
    pub fn left_scalar(&self, u: &[F]) -> Self {
        HMat { n: self.n, level: self.level, entries: self.entries.iter().map(|a| cd_mul(u, a)).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n, self.level);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = cd_conj(self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> Vec<F> {
        let mut t = vec![F::zero(); self.level.size()];
        for i in 0..self.n {
            t = linalg::add(&t, self.get(i, i));
        }
        t
    }

    pub fn re_trace(&self) -> F {
        self.trace()[0].clone()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// `(xy + yx) / 2`.
    pub fn jordan(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self)).scale(&F::ratio(1, 2))
    }

    pub fn is_hermitian(&self) -> bool {
        self.conj_transpose() == *self
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || linalg::is_zero_vec(self.get(i, j), 0.0)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| linalg::is_zero_vec(e, linalg::default_tol::<F>()))
    }

    /// All real coordinates, row-major.
    pub fn flatten(&self) -> Vec<F> {
        self.entries.iter().flatten().cloned().collect()
    }
}
