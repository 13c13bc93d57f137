//! Concrete algebras and the name-based catalogue used by the CLI.

pub mod confext;
pub mod hurwitz;
pub mod matrices;
pub mod simplicial;
pub mod triple;

pub use confext::{conformal_extension, confext_idempotent_data, ConfExtConfig, IdempotentLift};
pub use hurwitz::{HMat, HurwitzScalar, Level};
pub use matrices::{diagonal_generators, herm0, herm_jordan, lie_so, lie_su, su_circle, HermBasis, LieModel};
pub use simplicial::{gamma, simplicial, simplicial_reflection, talg, two_models_map, TensorWitnesses};
pub use triple::{nahm, triple};

use crate::algebra::MetrizedAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Q};

/// Parameters understood by [`build_by_name`]; unused ones are ignored.
#[derive(Clone, Debug, Default)]
pub struct CatalogueParams {
    pub n: Option<usize>,
    pub alpha: Option<Q>,
    pub level: Option<Level>,
}

impl CatalogueParams {
    fn n(&self, name: &str) -> Result<usize> {
        self.n.ok_or_else(|| Error::Precondition(format!("{name} needs --n")))
    }
}

/// Leaf constructions by name.
pub fn build_by_name<F: Scalar>(name: &str, p: &CatalogueParams) -> Result<MetrizedAlgebra<F>> {
    let level = p.level.unwrap_or(Level::Real);
    match name {
        "talg" => {
            let alpha = p.alpha.as_ref().ok_or_else(|| Error::Precondition("talg needs --alpha".into()))?;
            Ok(MetrizedAlgebra::with_killing(talg(p.n("talg")?, &F::from_q(alpha))?))
        }
        "ealg" => simplicial(p.n("ealg")?),
        "herm" => herm_jordan(p.n("herm")?, level),
        "herm0" => herm0(p.n("herm0")?, level),
        "su-circle" => su_circle(p.n("su-circle")?),
        "lie-so" => Ok(lie_so(p.n("lie-so")?)?.algebra),
        "lie-su" => Ok(lie_su(p.n("lie-su")?)?.algebra),
        "nahm-so" => nahm_metrized(&lie_so(p.n("nahm-so")?)?.algebra),
        "nahm-su" => nahm_metrized(&lie_su(p.n("nahm-su")?)?.algebra),
        other => Err(Error::Unknown(format!("construction {other}"))),
    }
}

/// Constructions that consume other algebras.
pub fn apply_by_name<F: Scalar>(name: &str, inputs: &[MetrizedAlgebra<F>]) -> Result<MetrizedAlgebra<F>> {
    let one = || match inputs {
        [a] => Ok(a),
        _ => Err(Error::Precondition(format!("{name} takes one input"))),
    };
    let two = || match inputs {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Precondition(format!("{name} takes two inputs"))),
    };
    match name {
        "triple" => triple_metrized(one()?),
        "nahm" => nahm_metrized(one()?),
        "tensor" => {
            let (a, b) = two()?;
            a.tensor_product(b)
        }
        "dsum" => {
            let (a, b) = two()?;
            a.direct_sum(b)
        }
        "unitalize" => one()?.unitalization(None),
        "deunitalize" => Ok(one()?.deunitalization()?.algebra),
        "confext" => {
            let a = one()?;
            conformal_extension(a, &ConfExtConfig::standard(a.dim())?)
        }
        other => Err(Error::Unknown(format!("construction {other}"))),
    }
}

pub fn triple_metrized<F: Scalar>(a: &MetrizedAlgebra<F>) -> Result<MetrizedAlgebra<F>> {
    Ok(MetrizedAlgebra::with_killing(triple(&a.algebra)))
}

pub fn nahm_metrized<F: Scalar>(g: &MetrizedAlgebra<F>) -> Result<MetrizedAlgebra<F>> {
    Ok(MetrizedAlgebra::with_killing(nahm(&g.algebra)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_dimensions() {
        let p = |n, level| CatalogueParams { n: Some(n), alpha: None, level };
        assert_eq!(build_by_name::<Q>("ealg", &p(4, None)).unwrap().dim(), 4);
        assert_eq!(build_by_name::<Q>("nahm-so", &p(3, None)).unwrap().dim(), 9);
        assert_eq!(build_by_name::<Q>("herm0", &p(3, Some(Level::Octonion))).unwrap().dim(), 26);
        assert!(build_by_name::<Q>("talg", &p(3, None)).is_err());
        assert!(matches!(build_by_name::<Q>("nope", &p(3, None)), Err(Error::Unknown(_))));
    }

    #[test]
    fn composite_constructions() {
        let e2 = simplicial::<Q>(2).unwrap();
        let t = apply_by_name("tensor", &[e2.clone(), e2.clone()]).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(apply_by_name("tensor", &[e2.clone()]).is_err());
        let u = apply_by_name("unitalize", &[e2.clone()]).unwrap();
        let back = apply_by_name("deunitalize", &[u]).unwrap();
        assert_eq!(back.dim(), 2);
    }
}
