//! Plane invariance of sect, scaling of isect and the Norton form.

use comalg::analysis::sect::{norton_value, plane_denominator};
use comalg::analysis::{isect, sect};
use comalg::constructions::{herm_jordan, simplicial, Level};
use comalg::linalg::{self, Matrix, SymBilinearForm};
use comalg::scalar::{q, Q};
use comalg::{Algebra, MetrizedAlgebra, Scalar, Symmetry};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, d)| q(p, d))
}

fn nonzero() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |v| !v.is_zero())
}

fn catalogue(k: usize) -> MetrizedAlgebra<Q> {
    match k {
        0 => simplicial(3).unwrap(),
        1 => simplicial(4).unwrap(),
        2 => herm_jordan(2, Level::Complex).unwrap(),
        _ => herm_jordan(3, Level::Real).unwrap(),
    }
}

fn case() -> impl Strategy<Value = (usize, Vec<Q>, Vec<Q>)> {
    (0usize..4).prop_flat_map(|k| {
        let n = catalogue(k).dim();
        (Just(k), prop::collection::vec(rational(), n), prop::collection::vec(rational(), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sect_depends_only_on_the_plane((k, x, y) in case(), m in prop::collection::vec(rational(), 4)) {
        let ma = catalogue(k);
        prop_assume!(!plane_denominator(&ma.h, &x, &y).is_zero());
        let det = m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone();
        prop_assume!(!det.is_zero());
        let u = linalg::lin2(&m[0], &x, &m[1], &y);
        let v = linalg::lin2(&m[2], &x, &m[3], &y);
        prop_assert_eq!(sect(&ma, &x, &y).unwrap().value, sect(&ma, &u, &v).unwrap().value.clone());
        prop_assert_eq!(sect(&ma, &y, &x).unwrap().value, sect(&ma, &x, &y).unwrap().value);
    }

    #[test]
    fn isect_ignores_scaling((k, x, y) in case(), s in nonzero(), t in nonzero()) {
        let a = &catalogue(k).algebra;
        prop_assume!(!plane_denominator(&a.killing(), &x, &y).is_zero());
        let base = isect(a, &x, &y).unwrap().value;
        let scaled = isect(a, &linalg::scale(&s, &x), &linalg::scale(&t, &y)).unwrap().value;
        prop_assert_eq!(base, scaled);
    }

    #[test]
    fn norton_is_symmetric_and_quartic((k, x, y) in case(), s in nonzero()) {
        let ma = catalogue(k);
        let n = norton_value(&ma.algebra, &ma.h, &x, &y);
        prop_assert_eq!(n.clone(), norton_value(&ma.algebra, &ma.h, &y, &x));
        let sx = linalg::scale(&s, &x);
        prop_assert_eq!(norton_value(&ma.algebra, &ma.h, &sx, &y), n * s.clone() * s);
    }

    #[test]
    fn norton_vanishes_on_associative_algebras(d in prop::collection::vec(nonzero(), 1..=5), seed in any::<u64>()) {
        // componentwise product with a diagonal metric
        let n = d.len();
        let alg = Algebra::from_fn("diag", n, Symmetry::Commutative, |i, j| {
            if i == j { linalg::unit(n, i) } else { linalg::zeros(n) }
        });
        let ma = MetrizedAlgebra::new(alg, SymBilinearForm::new(Matrix::diag(&d)).unwrap()).unwrap();
        let mut rng = comalg::random::rng(seed);
        let x = comalg::random::small_vec::<Q>(&mut rng, n);
        let y = comalg::random::small_vec::<Q>(&mut rng, n);
        prop_assert!(norton_value(&ma.algebra, &ma.h, &x, &y).is_zero());
    }
}
