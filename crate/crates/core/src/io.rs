//! JSON persistence for algebras. Rationals are written as `"p/q"` strings, floats as numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, MetrizedAlgebra, Symmetry};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymBilinearForm};
use crate::scalar::{parse_q, Backend, Scalar, Q};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricFile {
    pub gram: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub symmetry: Symmetry,
    pub scalar: Backend,
    pub structure: Vec<(usize, usize, usize, Value)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricFile>,
}

/// A loaded algebra in whichever backend the file declares.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Rational(MetrizedAlgebra<Q>),
    Float(MetrizedAlgebra<f64>),
}

impl AnyAlgebra {
    pub fn backend(&self) -> Backend {
        match self {
            AnyAlgebra::Rational(_) => Backend::Rational,
            AnyAlgebra::Float(_) => Backend::Float,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Rational(a) => a.dim(),
            AnyAlgebra::Float(a) => a.dim(),
        }
    }

    pub fn to_float(&self) -> MetrizedAlgebra<f64> {
        match self {
            AnyAlgebra::Rational(a) => a.to_float(),
            AnyAlgebra::Float(a) => a.clone(),
        }
    }

    pub fn to_file(&self) -> AlgebraFile {
        match self {
            AnyAlgebra::Rational(a) => to_file(a),
            AnyAlgebra::Float(a) => to_file(a),
        }
    }
}

pub fn scalar_to_json<F: Scalar>(v: &F) -> Value {
    match F::BACKEND {
        Backend::Rational => Value::String(v.to_string()),
        Backend::Float => serde_json::Number::from_f64(v.to_f64()).map_or(Value::Null, Value::Number),
    }
}

fn scalar_from_json<F: Scalar>(v: &Value) -> Result<F> {
    let bad = || Error::Format(format!("bad scalar {v}"));
    match (F::BACKEND, v) {
        (_, Value::String(s)) => {
            let q = parse_q(s).ok_or_else(bad)?;
            Ok(F::from_q(&q))
        }
        (Backend::Rational, Value::Number(n)) => {
            let i = n.as_i64().ok_or_else(|| Error::Format(format!("rational files need integers or \"p/q\", got {n}")))?;
            Ok(F::from_i64(i))
        }
        (Backend::Float, Value::Number(n)) => Ok(F::from_f64(n.as_f64().ok_or_else(bad)?)),
        _ => Err(bad()),
    }
}

pub fn to_file<F: Scalar>(ma: &MetrizedAlgebra<F>) -> AlgebraFile {
    let structure = ma
        .algebra
        .structure_entries()
        .into_iter()
        .map(|(i, j, k, v)| (i, j, k, scalar_to_json(&v)))
        .collect();
    let g = ma.h.gram();
    let gram = (0..g.rows()).map(|i| g.row(i).iter().map(scalar_to_json).collect()).collect();
    AlgebraFile {
        name: ma.name().to_string(),
        dim: ma.dim(),
        symmetry: ma.symmetry(),
        scalar: F::BACKEND,
        structure,
        metric: Some(MetricFile { gram }),
    }
}

/// Builds the algebra in backend `F`; a missing metric defaults to the trace form.
pub fn from_file<F: Scalar>(f: &AlgebraFile) -> Result<MetrizedAlgebra<F>> {
    let n = f.dim;
    let mut products: BTreeMap<(usize, usize), Vec<F>> = BTreeMap::new();
    for (i, j, k, v) in &f.structure {
        if *i > *j || *j >= n || *k >= n {
            return Err(Error::Format(format!("structure index ({i}, {j}, {k}) out of range or i > j")));
        }
        if *i == *j && f.symmetry == Symmetry::Anticommutative {
            return Err(Error::Format("anticommutative algebras store only i < j".into()));
        }
        let row = products.entry((*i, *j)).or_insert_with(|| vec![F::zero(); n]);
        if !row[*k].is_zero_tol(0.0) {
            return Err(Error::Format(format!("duplicate structure entry ({i}, {j}, {k})")));
        }
        row[*k] = scalar_from_json(v)?;
    }
    let mut a = Algebra::<F>::zero(f.name.clone(), n, f.symmetry);
    for ((i, j), v) in products {
        a.set_product(i, j, v);
    }
    match &f.metric {
        None => Ok(MetrizedAlgebra::with_killing(a)),
        Some(m) => {
            if m.gram.len() != n || m.gram.iter().any(|r| r.len() != n) {
                return Err(Error::Format("metric gram has the wrong shape".into()));
            }
            let rows = m
                .gram
                .iter()
                .map(|r| r.iter().map(scalar_from_json).collect::<Result<Vec<F>>>())
                .collect::<Result<Vec<_>>>()?;
            MetrizedAlgebra::new(a, SymBilinearForm::new(Matrix::from_rows(&rows))?)
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<AnyAlgebra> {
    let f: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    Ok(match f.scalar {
        Backend::Rational => AnyAlgebra::Rational(from_file(&f)?),
        Backend::Float => AnyAlgebra::Float(from_file(&f)?),
    })
}

pub fn algebra_to_string<F: Scalar>(ma: &MetrizedAlgebra<F>) -> String {
    serde_json::to_string_pretty(&to_file(ma)).expect("algebra files always serialize")
}
