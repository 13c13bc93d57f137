//! Hurwitz algebras, Jordan matrix algebras and the triple construction.

use comalg::algebra::verify_homomorphism;
use comalg::constructions::hurwitz::{cd_conj, cd_mul};
use comalg::constructions::triple::{a4_mul, s4_phi, s4_project, s4_transposition};
use comalg::constructions::{gamma, herm_jordan, nahm, simplicial, triple, HermBasis, Level};
use comalg::linalg;
use comalg::scalar::{q, Q};
use comalg::{Algebra, Scalar, Symmetry};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, d)| q(p, d))
}

fn vec_of(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), n)
}

fn level() -> impl Strategy<Value = Level> {
    prop_oneof![Just(Level::Real), Just(Level::Complex), Just(Level::Quaternion), Just(Level::Octonion)]
}

fn norm(x: &[Q]) -> Q {
    linalg::dot(x, x)
}

/// Random commutative algebra from an arbitrary symmetric structure tensor.
fn commutative(n: usize) -> impl Strategy<Value = Algebra<Q>> {
    prop::collection::vec(-2i64..=2, n * n * n).prop_map(move |raw| {
        Algebra::from_fn("sample", n, Symmetry::Commutative, |i, j| {
            let (a, b) = (i.min(j), i.max(j));
            (0..n).map(|k| q(raw[(a * n + b) * n + k], 1)).collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hurwitz_norm_is_multiplicative((x, y) in level().prop_flat_map(|lv| (vec_of(lv.size()), vec_of(lv.size())))) {
        prop_assert_eq!(norm(&cd_mul(&x, &y)), norm(&x) * norm(&y));
        // conjugation reverses products
        prop_assert_eq!(cd_conj(&cd_mul(&x, &y)), cd_mul(&cd_conj(&y), &cd_conj(&x)));
    }

    #[test]
    fn octonions_are_alternative(x in vec_of(8), y in vec_of(8)) {
        prop_assert_eq!(cd_mul(&cd_mul(&x, &x), &y), cd_mul(&x, &cd_mul(&x, &y)));
        prop_assert_eq!(cd_mul(&cd_mul(&y, &x), &x), cd_mul(&y, &cd_mul(&x, &x)));
    }

    #[test]
    fn hermitian_matrices_satisfy_jordan_identity(
        (lv, n, x, y) in (level(), 2usize..=3).prop_flat_map(|(lv, n)| {
            let n = if lv == Level::Octonion { 3 } else { n };
            let d = HermBasis::<Q>::new(n, lv).dim();
            (Just(lv), Just(n), vec_of(d), vec_of(d))
        })
    ) {
        let j = herm_jordan::<Q>(n, lv).unwrap();
        let xx = j.mul(&x, &x);
        prop_assert_eq!(j.mul(&j.mul(&x, &y), &xx), j.mul(&x, &j.mul(&y, &xx)));
        prop_assert!(j.algebra.is_invariant(&j.h).holds);
    }

    #[test]
    fn triple_carries_s4_symmetry((n, a, x, y) in (1usize..=3).prop_flat_map(|n| (Just(n), commutative(n), vec_of(3 * n), vec_of(3 * n)))) {
        let t = triple(&a);
        for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            let g = s4_transposition::<Q>(n, i, j).unwrap();
            prop_assert!(verify_homomorphism(&g, &t, &t).unwrap().holds);
        }
        // the quotient of A^4 by the diagonal recovers the triple product
        let (zx, zy) = (s4_phi(&x), s4_phi(&y));
        prop_assert_eq!(s4_project(&a4_mul(&a, &zx, &zy)), s4_phi(&t.mul(&x, &y)));
        prop_assert_eq!(t.mul(&x, &y), t.mul(&y, &x));
    }

    #[test]
    fn nahm_of_anticommutative_is_commutative(raw in prop::collection::vec(-2i64..=2, 9)) {
        // random 3-dim anticommutative algebra
        let g = Algebra::from_fn("anti", 3, Symmetry::Anticommutative, |i, j| {
            let k = 3 - i - j;
            let mut v = vec![Q::zero(); 3];
            let s = if (i + 1) % 3 == j { 1 } else { -1 };
            for (m, slot) in v.iter_mut().enumerate() {
                *slot = q(s * raw[k * 3 + m], 1);
            }
            v
        });
        let nm = nahm(&g).unwrap();
        prop_assert_eq!(nm.symmetry(), Symmetry::Commutative);
        let (x, y) = (linalg::unit::<Q>(9, raw[0].unsigned_abs() as usize), linalg::unit::<Q>(9, 4 + raw[1].unsigned_abs() as usize));
        prop_assert_eq!(nm.mul(&x, &y), nm.mul(&y, &x));
        prop_assert!(nahm(&triple(&g)).is_err());
    }

    #[test]
    fn simplicial_generators_are_idempotents(n in 2usize..=7) {
        let e = simplicial::<Q>(n).unwrap();
        let mut sum = linalg::zeros::<Q>(n);
        for i in 0..=n {
            let g = gamma::<Q>(n, i);
            prop_assert_eq!(e.mul(&g, &g), g.clone());
            sum = linalg::add(&sum, &g);
        }
        prop_assert!(sum.iter().all(|v| v.is_zero()));
        prop_assert!(e.h.is_positive_definite());
    }
}
