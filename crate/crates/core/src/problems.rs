//! Name-based lookup over every built-in problem.

use crate::benchmarks::{BenchmarkFunction, BenchmarkId};
use crate::engineering::{engineering_problem, ConstrainedProblem, ENGINEERING_PROBLEMS};
use crate::error::{GemError, Result};
use crate::ode::OdeFit;
use crate::problem::{Bounds, Problem};

/// A built-in problem together with its reference optimum.
#[derive(Debug)]
pub enum NamedProblem {
    Benchmark(BenchmarkFunction),
    Constrained(ConstrainedProblem),
    Ode(OdeFit),
}

impl NamedProblem {
    /// Best value known for this problem, if any.
    pub fn reference_value(&self) -> Option<f64> {
        match self {
            NamedProblem::Benchmark(b) => Some(b.known_optimum().0),
            NamedProblem::Constrained(c) => Some(c.best_known_value()),
            NamedProblem::Ode(_) => Some(0.0),
        }
    }

    pub fn as_problem(&self) -> &dyn Problem {
        match self {
            NamedProblem::Benchmark(b) => b,
            NamedProblem::Constrained(c) => c,
            NamedProblem::Ode(o) => o,
        }
    }
}

impl Problem for NamedProblem {
    fn name(&self) -> &str {
        self.as_problem().name()
    }
    fn bounds(&self) -> &Bounds {
        self.as_problem().bounds()
    }
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.as_problem().evaluate(x)
    }
    fn repair(&self, x: &mut [f64]) {
        self.as_problem().repair(x)
    }
}

/// Resolve a problem name with optional dimension and penalty overrides.
pub fn build_problem(
    name: &str,
    dimension: Option<usize>,
    penalty_lambda: Option<f64>,
) -> Result<NamedProblem> {
    if let Ok(id) = BenchmarkId::from_name(name) {
        if penalty_lambda.is_some() {
            return Err(GemError::config(format!(
                "{name} is unconstrained; --lambda does not apply"
            )));
        }
        let dim = dimension.unwrap_or(id.default_dimension());
        return Ok(NamedProblem::Benchmark(BenchmarkFunction::new(id, dim)?));
    }
    let fixed_dim = |p: &dyn Problem| match dimension {
        Some(d) if d != p.dimension() => Err(GemError::config(format!(
            "{name} has fixed dimension {}, got {d}",
            p.dimension()
        ))),
        _ => Ok(()),
    };
    if name.eq_ignore_ascii_case("ode_vibration") || name.eq_ignore_ascii_case("ode") {
        let fit = OdeFit::default();
        fixed_dim(&fit)?;
        if penalty_lambda.is_some() {
            return Err(GemError::config("ode_vibration has no constraints; --lambda does not apply"));
        }
        return Ok(NamedProblem::Ode(fit));
    }
    let mut problem = engineering_problem(name)?;
    fixed_dim(&problem)?;
    if let Some(lambda) = penalty_lambda {
        problem = problem.with_penalty_lambda(lambda)?;
    }
    Ok(NamedProblem::Constrained(problem))
}

/// One line per problem: canonical name, dimension, kind.
pub fn list_problems() -> Vec<(String, usize, &'static str)> {
    let mut out: Vec<(String, usize, &'static str)> = BenchmarkId::ALL
        .iter()
        .map(|id| {
            (
                format!("{} ({})", id.label(), id.alias()),
                id.default_dimension(),
                "benchmark",
            )
        })
        .collect();
    for name in ENGINEERING_PROBLEMS {
        let p = engineering_problem(name).expect("registered");
        out.push((name.to_string(), p.dimension(), "constrained"));
    }
    out.push(("ode_vibration".to_string(), 2, "ode fit"));
    out
}
