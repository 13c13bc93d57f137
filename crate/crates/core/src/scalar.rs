//! Scalar backends: exact rationals and binary64 floats.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar.
pub type Q = BigRational;

/// Default absolute zero tolerance for the float backend.
pub const EPS_ZERO: f64 = 1e-9;
/// Default tolerance used when counting numerically zero eigenvalues.
pub const EPS_RANK: f64 = 1e-8;
/// Default tolerance for identifying two numerically found points.
pub const EPS_DEDUP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => write!(f, "rational"),
            Backend::Float => write!(f, "float"),
        }
    }
}

/// Per-call tolerance overrides. Exact backends ignore them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol {
    pub zero: f64,
    pub rank: f64,
    pub dedup: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { zero: EPS_ZERO, rank: EPS_RANK, dedup: EPS_DEDUP }
    }
}

/// Field operations shared by both backends.
///
/// `is_zero` is exact for rationals and uses [`EPS_ZERO`] for floats.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_q(q: &Q) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact conversion from a finite float (rationals represent it exactly).
    fn from_f64(v: f64) -> Self;

    fn is_zero_tol(&self, tol: f64) -> bool;
    fn is_zero(&self) -> bool {
        self.is_zero_tol(EPS_ZERO)
    }
    /// Sign with the float backend treating |x| < tol as zero.
    fn sign_tol(&self, tol: f64) -> i8;
    fn abs(&self) -> Self;
    /// Square root; rationals only when the value is a perfect square.
    fn sqrt(&self) -> Option<Self>;

    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn div_r(&self, o: &Self) -> Self;
    /// `self += a * b` without cloning the operands.
    fn mul_add(&mut self, a: &Self, b: &Self);

    fn ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }
    fn recip(&self) -> Self {
        Self::one().div_r(self)
    }
    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }
}

impl Scalar for Q {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        q_to_f64(self)
    }
    fn from_f64(v: f64) -> Self {
        Q::from_float(v).expect("finite float")
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn sign_tol(&self, _tol: f64) -> i8 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(Q::new(n, d))
        } else {
            None
        }
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn div_r(&self, o: &Self) -> Self {
        self / o
    }
    fn mul_add(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *self += a * b;
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_q(q: &Q) -> Self {
        q_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn sign_tol(&self, tol: f64) -> i8 {
        if f64::abs(*self) < tol {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn div_r(&self, o: &Self) -> Self {
        self / o
    }
    fn mul_add(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Rational to float that survives huge numerators and denominators.
pub fn q_to_f64(q: &Q) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
    let (n, d) = if shift > 0 {
        (q.numer() >> shift as usize, q.denom() >> shift as usize)
    } else {
        (q.numer().clone(), q.denom().clone())
    };
    n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
}

/// Shorthand constructor for `p/q`.
pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// Parse `"p/q"` or an integer string.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if Zero::is_zero(&d) {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions). Returns `None` when the error exceeds `tol`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if (h1 as f64 / k1 as f64 - x).abs() <= tol * 1e-3 || frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    let approx = h1 as f64 / k1 as f64;
    if (approx - x).abs() <= tol {
        Some(Q::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}
