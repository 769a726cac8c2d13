//! Constrained design problems handled with a static penalty.
//!
//! Each constraint is written `g_i(x) <= 0`. The optimizer minimizes
//! `f(x) + lambda * sum_i max(0, g_i(x))`.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};
use crate::problem::{check_dimension, Bounds, Problem};

type ScalarFn = fn(&[f64]) -> f64;

/// Coordinates restricted to `k * step` with `k` in `[min_mult, max_mult]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeConstraint {
    pub indices: Vec<usize>,
    pub step: f64,
    pub min_mult: i64,
    pub max_mult: i64,
}

impl LatticeConstraint {
    /// Snap to the nearest multiple of `step`, then clamp the multiple.
    pub fn snap(&self, value: f64) -> f64 {
        let k = (value / self.step).round() as i64;
        k.clamp(self.min_mult, self.max_mult) as f64 * self.step
    }

    pub fn apply(&self, x: &mut [f64]) {
        for &k in &self.indices {
            x[k] = self.snap(x[k]);
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.indices.iter().all(|&k| {
            let m = x[k] / self.step;
            m.fract() == 0.0 && m >= self.min_mult as f64 && m <= self.max_mult as f64
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConstrainedProblem {
    name: &'static str,
    bounds: Bounds,
    objective: ScalarFn,
    constraints: Vec<ScalarFn>,
    penalty_lambda: f64,
    lattice: Option<LatticeConstraint>,
    best_known_value: f64,
    best_known_point: Vec<f64>,
    feasibility_slack: f64,
}

impl ConstrainedProblem {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn penalty_lambda(&self) -> f64 {
        self.penalty_lambda
    }

    pub fn with_penalty_lambda(mut self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(GemError::config(format!(
                "penalty lambda must be finite and >= 0, got {lambda}"
            )));
        }
        self.penalty_lambda = lambda;
        Ok(self)
    }

    pub fn lattice(&self) -> Option<&LatticeConstraint> {
        self.lattice.as_ref()
    }

    pub fn best_known_value(&self) -> f64 {
        self.best_known_value
    }

    pub fn best_known_point(&self) -> &[f64] {
        &self.best_known_point
    }

    /// Largest constraint value accepted as feasible at the printed best point,
    /// reflecting how many digits the point was printed with.
    pub fn feasibility_slack(&self) -> f64 {
        self.feasibility_slack
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    pub fn objective(&self, x: &[f64]) -> Result<f64> {
        check_dimension(self.name, self.bounds.dimension(), x)?;
        Ok((self.objective)(x))
    }

    /// `[g_1(x), ..., g_k(x)]`; a non-finite value is reported with its index.
    pub fn evaluate_constraints(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dimension(self.name, self.bounds.dimension(), x)?;
        self.constraints
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let v = g(x);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(GemError::Evaluation(format!(
                        "{}: constraint g{} is {v} at {x:?}",
                        self.name,
                        i + 1
                    )))
                }
            })
            .collect()
    }

    /// `sum_i max(0, g_i(x))`.
    pub fn violation(&self, x: &[f64]) -> Result<f64> {
        Ok(self
            .evaluate_constraints(x)?
            .iter()
            .map(|g| g.max(0.0))
            .sum())
    }

    pub fn is_feasible(&self, x: &[f64], slack: f64) -> Result<bool> {
        Ok(self.evaluate_constraints(x)?.iter().all(|g| *g <= slack))
    }

    /// `f(x) + lambda * sum_i max(0, g_i(x))`.
    pub fn penalized_objective(&self, x: &[f64]) -> Result<f64> {
        let f = self.objective(x)?;
        Ok(f + self.penalty_lambda * self.violation(x)?)
    }

    /// Snap lattice coordinates; other coordinates are left alone.
    pub fn repair(&self, x: &[f64]) -> Vec<f64> {
        let mut out = x.to_vec();
        if let Some(lattice) = &self.lattice {
            lattice.apply(&mut out);
        }
        out
    }
}

impl Problem for ConstrainedProblem {
    fn name(&self) -> &str {
        self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// Penalized objective. A constraint singularity inside the box (for
    /// example `x1 = 0` in the truss) scores `+inf`, so the point is never
    /// accepted over a finite one.
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        match self.penalized_objective(x) {
            Err(GemError::Evaluation(_)) => {
                let any_nan_objective = (self.objective)(x).is_nan();
                if any_nan_objective {
                    Err(GemError::Evaluation(format!(
                        "{}: objective is NaN at {x:?}",
                        self.name
                    )))
                } else {
                    Ok(f64::INFINITY)
                }
            }
            other => other,
        }
    }

    fn repair(&self, x: &mut [f64]) {
        if let Some(lattice) = &self.lattice {
            lattice.apply(x);
        }
    }
}

/// Names accepted by [`engineering_problem`].
pub const ENGINEERING_PROBLEMS: [&str; 4] = ["spring", "truss3bar", "beam", "pressure_vessel"];

pub fn engineering_problem(name: &str) -> Result<ConstrainedProblem> {
    match name.to_ascii_lowercase().as_str() {
        "spring" => Ok(spring()),
        "truss3bar" | "truss" => Ok(truss3bar()),
        "beam" => Ok(beam()),
        "pressure_vessel" | "pressurevessel" => Ok(pressure_vessel()),
        _ => Err(GemError::config(format!(
            "unknown problem '{name}'"
        ))),
    }
}

/// Tension/compression spring: wire diameter, coil diameter, active coils.
pub fn spring() -> ConstrainedProblem {
    ConstrainedProblem {
        name: "spring",
        bounds: Bounds::new(vec![0.05, 0.25, 2.0], vec![1.0, 1.3, 15.0]).unwrap(),
        objective: |x| (2.0 + x[2]) * x[0] * x[0] * x[1],
        constraints: vec![
            |x| 1.0 - x[1].powi(3) * x[2] / (71785.0 * x[0].powi(4)),
            |x| {
                (4.0 * x[1] * x[1] - x[0] * x[1])
                    / (12566.0 * (x[1] * x[0].powi(3) - x[0].powi(4)))
                    + 1.0 / (5108.0 * x[0] * x[0])
                    - 1.0
            },
            |x| 1.0 - 140.45 * x[0] / (x[1] * x[1] * x[2]),
            |x| (x[0] + x[1]) / 1.5 - 1.0,
        ],
        penalty_lambda: 1000.0,
        lattice: None,
        best_known_value: 0.01266522,
        best_known_point: vec![0.05169, 0.35673, 11.2885],
        feasibility_slack: 1e-3,
    }
}

const TRUSS_LOAD: f64 = 2.0;
const TRUSS_STRESS: f64 = 2.0;

/// Three-bar truss with cross sections `A1`, `A2`; load 2 kN, stress limit 2 kN/cm^2.
pub fn truss3bar() -> ConstrainedProblem {
    ConstrainedProblem {
        name: "truss3bar",
        bounds: Bounds::uniform(2, 0.0, 1.0).unwrap(),
        objective: |x| 100.0 * (2.0 * SQRT_2 * x[0] + x[1]),
        constraints: vec![
            |x| {
                (SQRT_2 * x[0] + x[1]) * TRUSS_LOAD / (SQRT_2 * x[0] * x[0] + 2.0 * x[0] * x[1])
                    - TRUSS_STRESS
            },
            |x| x[1] * TRUSS_LOAD / (SQRT_2 * x[0] * x[0] + 2.0 * x[0] * x[1]) - TRUSS_STRESS,
            |x| TRUSS_LOAD / (x[0] + SQRT_2 * x[1]) - TRUSS_STRESS,
        ],
        penalty_lambda: 1000.0,
        lattice: None,
        best_known_value: 263.8958,
        best_known_point: vec![0.78853, 0.40866],
        feasibility_slack: 1e-4,
    }
}

/// Five-segment cantilever beam with a single stiffness constraint.
pub fn beam() -> ConstrainedProblem {
    ConstrainedProblem {
        name: "beam",
        bounds: Bounds::uniform(5, 0.01, 100.0).unwrap(),
        objective: |x| 0.0624 * x.iter().sum::<f64>(),
        constraints: vec![|x| {
            61.0 / x[0].powi(3) + 37.0 / x[1].powi(3) + 19.0 / x[2].powi(3) + 7.0 / x[3].powi(3)
                + 1.0 / x[4].powi(3)
                - 1.0
        }],
        penalty_lambda: 1000.0,
        lattice: None,
        best_known_value: 1.33997,
        best_known_point: vec![6.0202, 5.3082, 4.5042, 3.4856, 2.1557],
        feasibility_slack: 1e-4,
    }
}

/// Basic plate thickness for the pressure vessel shell and head.
pub const PLATE_STEP: f64 = 0.0625;

/// Cylindrical pressure vessel; shell and head thickness on the 0.0625 lattice.
pub fn pressure_vessel() -> ConstrainedProblem {
    ConstrainedProblem {
        name: "pressure_vessel",
        bounds: Bounds::new(
            vec![PLATE_STEP, PLATE_STEP, 10.0, 10.0],
            vec![99.0 * PLATE_STEP, 99.0 * PLATE_STEP, 200.0, 200.0],
        )
        .unwrap(),
        objective: |x| {
            0.6224 * x[0] * x[2] * x[3]
                + 1.7781 * x[1] * x[2] * x[2]
                + 3.1661 * x[0] * x[0] * x[3]
                + 19.84 * x[0] * x[0] * x[2]
        },
        constraints: vec![
            |x| -x[0] + 0.0193 * x[2],
            |x| -x[1] + 0.00954 * x[2],
            |x| -PI * x[2] * x[2] * x[3] - 4.0 * PI / 3.0 * x[2].powi(3) + 1_296_000.0,
            |x| x[3] - 240.0,
        ],
        penalty_lambda: 1e5,
        lattice: Some(LatticeConstraint {
            indices: vec![0, 1],
            step: PLATE_STEP,
            min_mult: 1,
            max_mult: 99,
        }),
        best_known_value: 6059.714335,
        best_known_point: vec![0.8125, 0.4375, 42.098446, 176.636596],
        feasibility_slack: 1e-3,
    }
}
