//! Schema-versioned JSON reports for verification suites and searches.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{decompose_ideals, Check, DecompositionVerdict, MetrizedAlgebra};
use crate::analysis::{
    constant_sect_check, is_conformally_associative, is_projectively_associative, newton_idempotents, sect_extremize,
};
use crate::error::{Error, Result};
use crate::io::scalar_to_json;
use crate::linalg::{self, default_tol, SymBilinearForm};
use crate::scalar::{Backend, Scalar};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub predicate: String,
    pub verdict: Value,
    pub residual: f64,
    pub witnesses: Vec<Value>,
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(predicate: impl Into<String>, verdict: Value, residual: f64) -> Self {
        Report { schema: SCHEMA, predicate: predicate.into(), verdict, residual, witnesses: Vec::new(), seed: None, extra: Map::new() }
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.extra.insert(key.into(), v);
        self
    }

    /// Only an explicit `false` verdict counts as a failed verification.
    pub fn passed(&self) -> bool {
        self.verdict != Value::Bool(false)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: Option<usize>,
    /// Replaces the float comparison tolerance; exact backends ignore it.
    pub tol: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, trials: None, tol: None }
    }
}

pub const SUITES: &[&str] = &[
    "exact",
    "killing-invariant",
    "ricci-invariant",
    "nondegenerate",
    "einstein",
    "proj-assoc",
    "conf-assoc",
    "norton",
    "const-sect",
    "ideals",
    "simple",
];

fn retol<F: Scalar>(c: Check, opts: &RunOptions) -> Check {
    match (F::BACKEND, opts.tol) {
        (Backend::Float, Some(t)) => Check { holds: c.residual <= t, residual: c.residual },
        _ => c,
    }
}

fn check_report(name: &str, c: Check) -> Report {
    Report::new(name, Value::Bool(c.holds), c.residual)
}

fn inertia_json<F: Scalar>(f: &SymBilinearForm<F>) -> Value {
    let (p, n, z) = f.inertia();
    json!([p, n, z])
}

pub fn run_suite<F: Scalar>(ma: &MetrizedAlgebra<F>, suite: &str, opts: &RunOptions) -> Result<Report> {
    let a = &ma.algebra;
    let tol = match F::BACKEND {
        Backend::Rational => 0.0,
        Backend::Float => opts.tol.unwrap_or(default_tol::<F>()),
    };
    Ok(match suite {
        "exact" => {
            let r = linalg::max_abs(&a.trace_linear());
            check_report(suite, Check { holds: r <= tol, residual: r })
        }
        "killing-invariant" => check_report(suite, retol::<F>(a.is_invariant(&a.killing()), opts)),
        "ricci-invariant" => check_report(suite, retol::<F>(a.is_invariant(&a.ricci()), opts)),
        "nondegenerate" => {
            Report::new(suite, Value::Bool(ma.h.is_nondegenerate()), 0.0).with("inertia", inertia_json(&ma.h))
        }
        "einstein" => {
            let fit = ma.einstein_fit()?;
            let r = fit.residual.to_f64();
            let holds = fit.residual.is_zero_tol(tol) && !fit.kappa.is_zero_tol(tol);
            Report::new(suite, Value::Bool(holds), r).with("einstein_kappa", scalar_to_json(&fit.kappa))
        }
        "proj-assoc" => {
            let p = is_projectively_associative(a)?;
            check_report(suite, retol::<F>(p.check, opts))
        }
        "conf-assoc" => check_report(suite, retol::<F>(is_conformally_associative(ma)?, opts)),
        "norton" => {
            let b = sect_extremize(&ma.to_float(), 2000, 200, opts.seed)?;
            let mut r = Report::new(suite, Value::Bool(b.norton()), b.min.min(0.0).abs());
            r.seed = Some(opts.seed);
            r.witnesses = vec![json!({"x": b.min_witness.0, "y": b.min_witness.1, "sect": b.min})];
            r.with("sect_min", json!(b.min)).with("sect_max", json!(b.max))
        }
        "const-sect" => match constant_sect_check(ma)? {
            Some(k) => Report::new(suite, Value::Bool(true), 0.0).with("kappa", scalar_to_json(&k)),
            None => Report::new(suite, Value::Bool(false), 0.0),
        },
        "ideals" | "simple" => {
            let d = decompose_ideals(ma, opts.trials.unwrap_or(16), opts.seed)?;
            let simple = d.verdict == DecompositionVerdict::NoProperIdealFound;
            let verdict = if suite == "simple" { Value::Bool(simple) } else { serde_json::to_value(d.verdict).expect("enum") };
            let mut r = Report::new(suite, verdict, 0.0);
            r.seed = Some(opts.seed);
            r.witnesses = d.ideals.iter().map(|s| subspace_json(&s.vectors())).collect();
            r.with("dims", json!(d.ideals.iter().map(|s| s.dim()).collect::<Vec<_>>()))
        }
        other => return Err(Error::Unknown(format!("suite {other}"))),
    })
}

fn subspace_json<F: Scalar>(vs: &[Vec<F>]) -> Value {
    Value::Array(vs.iter().map(|v| Value::Array(v.iter().map(scalar_to_json).collect())).collect())
}

/// Structural summary of one algebra.
pub fn summary<F: Scalar>(ma: &MetrizedAlgebra<F>) -> Result<Report> {
    let a = &ma.algebra;
    let inv = a.is_invariant(&ma.h);
    let mut r = Report::new("summary", Value::Bool(true), inv.residual)
        .with("name", json!(ma.name()))
        .with("dim", json!(ma.dim()))
        .with("symmetry", serde_json::to_value(ma.symmetry()).expect("enum"))
        .with("scalar", json!(F::BACKEND.to_string()))
        .with("exact", json!(a.is_exact()))
        .with("h_invariant", json!(inv.holds))
        .with("h_nondegenerate", json!(ma.h.is_nondegenerate()))
        .with("killing_inertia", inertia_json(&a.killing()))
        .with("ricci_inertia", inertia_json(&a.ricci()))
        .with("unital", json!(a.find_unit().is_some()));
    match ma.einstein_fit() {
        Ok(fit) if fit.residual.is_zero_tol(default_tol::<F>()) => {
            r = r.with("einstein_kappa", scalar_to_json(&fit.kappa));
        }
        _ => r = r.with("einstein_kappa", Value::Null),
    }
    Ok(r)
}

/// Newton search summary; exact algebras are searched in floats.
pub fn idempotent_report<F: Scalar>(ma: &MetrizedAlgebra<F>, opts: &RunOptions) -> Result<Report> {
    let trials = opts.trials.unwrap_or(2000);
    let s = newton_idempotents(&ma.to_float(), trials, opts.seed)?;
    let mut r = Report::new("idempotents", json!(s.records.len()), 0.0);
    r.seed = Some(opts.seed);
    r.witnesses = s
        .records
        .iter()
        .map(|rec| json!({"point": rec.point, "kind": rec.kind, "h_norm2": rec.h_norm2, "orth_spectrum": rec.orth_spectrum}))
        .collect();
    Ok(r.with("partial", json!(s.partial)).with("trials", json!(trials)))
}

pub fn sect_report<F: Scalar>(ma: &MetrizedAlgebra<F>, opts: &RunOptions) -> Result<Report> {
    let samples = opts.trials.unwrap_or(2000);
    let b = sect_extremize(&ma.to_float(), samples, 200, opts.seed)?;
    let mut r = Report::new("sect_bounds", json!({"min": b.min, "max": b.max}), 0.0);
    r.seed = Some(opts.seed);
    r.witnesses = vec![
        json!({"x": b.min_witness.0, "y": b.min_witness.1, "sect": b.min}),
        json!({"x": b.max_witness.0, "y": b.max_witness.1, "sect": b.max}),
    ];
    Ok(r.with("norton", json!(b.norton())).with("exhausted", json!(b.exhausted)).with("samples", json!(samples)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{herm0, simplicial, Level};
    use crate::scalar::Q;

    #[test]
    fn simplicial_passes_basic_suites() {
        let e4 = simplicial::<Q>(4).unwrap();
        let opts = RunOptions { seed: 1, ..Default::default() };
        for s in ["exact", "killing-invariant", "simple", "const-sect", "proj-assoc"] {
            assert!(run_suite(&e4, s, &opts).unwrap().passed(), "{s}");
        }
        assert!(run_suite(&e4, "bogus", &opts).is_err());
    }

    #[test]
    fn summary_reports_kappa_as_string() {
        let h = herm0::<Q>(3, Level::Real).unwrap();
        let r = serde_json::to_value(summary(&h).unwrap()).unwrap();
        assert_eq!(r["einstein_kappa"], json!("7/4"));
        assert_eq!(r["schema"], json!(1));
    }
}
