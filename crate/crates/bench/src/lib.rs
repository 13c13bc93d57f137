//! Shared fixtures for the criterion benches.

use comalg::constructions::{herm0, simplicial, Level};
use comalg::{MetrizedAlgebra, Q};

pub fn simplicial_q(n: usize) -> MetrizedAlgebra<Q> {
    simplicial(n).expect("n >= 2")
}

pub fn albert_traceless() -> MetrizedAlgebra<Q> {
    herm0(3, Level::Octonion).expect("valid level")
}
