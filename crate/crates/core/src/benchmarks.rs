//! Ten analytic test functions with their boxes and known minima.

use std::f64::consts::{E, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};
use crate::problem::{check_dimension, Bounds, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchmarkId {
    Sphere,
    Rosenbrock,
    Ackley,
    DixonPrice,
    Schwefel2d,
    Booth,
    HolderTable,
    Beale,
    Trid,
    Rastrigin,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 10] = [
        BenchmarkId::Sphere,
        BenchmarkId::Rosenbrock,
        BenchmarkId::Ackley,
        BenchmarkId::DixonPrice,
        BenchmarkId::Schwefel2d,
        BenchmarkId::Booth,
        BenchmarkId::HolderTable,
        BenchmarkId::Beale,
        BenchmarkId::Trid,
        BenchmarkId::Rastrigin,
    ];

    /// Short label, `f1` through `f10`.
    pub fn label(self) -> &'static str {
        match self {
            BenchmarkId::Sphere => "f1",
            BenchmarkId::Rosenbrock => "f2",
            BenchmarkId::Ackley => "f3",
            BenchmarkId::DixonPrice => "f4",
            BenchmarkId::Schwefel2d => "f5",
            BenchmarkId::Booth => "f6",
            BenchmarkId::HolderTable => "f7",
            BenchmarkId::Beale => "f8",
            BenchmarkId::Trid => "f9",
            BenchmarkId::Rastrigin => "f10",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            BenchmarkId::Sphere => "sphere",
            BenchmarkId::Rosenbrock => "rosenbrock",
            BenchmarkId::Ackley => "ackley",
            BenchmarkId::DixonPrice => "dixonprice",
            BenchmarkId::Schwefel2d => "schwefel2d",
            BenchmarkId::Booth => "booth",
            BenchmarkId::HolderTable => "holdertable",
            BenchmarkId::Beale => "beale",
            BenchmarkId::Trid => "trid",
            BenchmarkId::Rastrigin => "rastrigin",
        }
    }

    /// Accepts `f1`..`f10` and the aliases, ignoring ASCII case.
    pub fn from_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        BenchmarkId::ALL
            .into_iter()
            .find(|id| id.label() == lower || id.alias() == lower)
            .ok_or_else(|| GemError::config(format!("unknown benchmark function '{name}'")))
    }

    /// `Some(d)` for functions only defined in dimension `d`.
    pub fn fixed_dimension(self) -> Option<usize> {
        match self {
            BenchmarkId::Schwefel2d
            | BenchmarkId::Booth
            | BenchmarkId::HolderTable
            | BenchmarkId::Beale => Some(2),
            _ => None,
        }
    }

    pub fn default_dimension(self) -> usize {
        match self {
            BenchmarkId::Trid => 4,
            id => id.fixed_dimension().unwrap_or(5),
        }
    }

    pub fn bounds(self, dim: usize) -> Result<Bounds> {
        let (lo, hi) = match self {
            BenchmarkId::Sphere
            | BenchmarkId::Rosenbrock
            | BenchmarkId::DixonPrice
            | BenchmarkId::Booth
            | BenchmarkId::HolderTable => (-10.0, 10.0),
            BenchmarkId::Ackley => (-32.768, 32.768),
            BenchmarkId::Schwefel2d => (0.0, 500.0),
            BenchmarkId::Beale => (-4.5, 4.5),
            BenchmarkId::Trid => {
                let d2 = (dim * dim) as f64;
                (-d2, d2)
            }
            BenchmarkId::Rastrigin => (-5.12, 5.12),
        };
        Bounds::uniform(dim, lo, hi)
    }

    fn check_dim(self, dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(GemError::config("benchmark dimension must be >= 1"));
        }
        match self.fixed_dimension() {
            Some(d) if d != dim => Err(GemError::config(format!(
                "{} is only defined for D = {d}, got {dim}",
                self.alias()
            ))),
            _ => Ok(()),
        }
    }

    /// Known minimum value and every known minimizer in dimension `dim`.
    pub fn known_optimum(self, dim: usize) -> Result<(f64, Vec<Vec<f64>>)> {
        self.check_dim(dim)?;
        Ok(match self {
            BenchmarkId::Sphere | BenchmarkId::Ackley | BenchmarkId::Rastrigin => {
                (0.0, vec![vec![0.0; dim]])
            }
            BenchmarkId::Rosenbrock => (0.0, vec![vec![1.0; dim]]),
            BenchmarkId::DixonPrice => {
                let x = (1..=dim)
                    .map(|i| {
                        let p = 2f64.powi(i as i32);
                        2f64.powf(-(p - 2.0) / p)
                    })
                    .collect();
                (0.0, vec![x])
            }
            BenchmarkId::Schwefel2d => (-3456.0, vec![vec![12.0, 12.0]]),
            BenchmarkId::Booth => (0.0, vec![vec![1.0, 3.0]]),
            BenchmarkId::HolderTable => {
                let pts = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
                    .iter()
                    .map(|(s1, s2)| vec![s1 * 8.05502, s2 * 9.66459])
                    .collect();
                (-19.2085, pts)
            }
            BenchmarkId::Beale => (0.0, vec![vec![3.0, 0.5]]),
            BenchmarkId::Trid => {
                let d = dim as f64;
                let x = (1..=dim).map(|i| (i * (dim + 1 - i)) as f64).collect();
                (-d * (d + 4.0) * (d - 1.0) / 6.0, vec![x])
            }
        })
    }

    /// Tolerance to which the printed optimum is reproduced at the printed minimizers.
    pub fn optimum_tolerance(self) -> f64 {
        match self {
            BenchmarkId::HolderTable => 1e-4,
            _ => 1e-9,
        }
    }

    /// Evaluate at `x`; the dimension is taken from `x`.
    pub fn evaluate(self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(self, x: &[f64]) -> f64 {
        let d = x.len() as f64;
        match self {
            BenchmarkId::Sphere => x.iter().map(|v| v * v).sum(),
            BenchmarkId::Rosenbrock => {
                (x[0] - 1.0).powi(2)
                    + 100.0
                        * x.windows(2)
                            .map(|w| (w[1] - w[0] * w[0]).powi(2))
                            .sum::<f64>()
            }
            BenchmarkId::Ackley => {
                let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            BenchmarkId::DixonPrice => {
                (x[0] - 1.0).powi(2)
                    + x.windows(2)
                        .enumerate()
                        .map(|(k, w)| (k + 2) as f64 * (2.0 * w[1] * w[1] - w[0]).powi(2))
                        .sum::<f64>()
            }
            BenchmarkId::Schwefel2d => -x[0] * x[1] * (72.0 - 2.0 * x[0] - 2.0 * x[1]),
            BenchmarkId::Booth => {
                (x[0] + 2.0 * x[1] - 7.0).powi(2) + (2.0 * x[0] + x[1] - 5.0).powi(2)
            }
            BenchmarkId::HolderTable => {
                let radius = (x[0] * x[0] + x[1] * x[1]).sqrt();
                -(x[0].sin() * x[1].cos() * (1.0 - radius / PI).abs().exp()).abs()
            }
            BenchmarkId::Beale => {
                let (a, b) = (x[0], x[1]);
                (1.5 - a + a * b).powi(2)
                    + (2.25 - a + a * b * b).powi(2)
                    + (2.625 - a + a * b * b * b).powi(2)
            }
            BenchmarkId::Trid => {
                x.iter().map(|v| (v - 1.0).powi(2)).sum::<f64>()
                    - x.windows(2).map(|w| w[0] * w[1]).sum::<f64>()
            }
            BenchmarkId::Rastrigin => {
                10.0 * d
                    + x.iter()
                        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
                        .sum::<f64>()
            }
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.alias())
    }
}

/// A benchmark function fixed to one dimension, usable as a [`Problem`].
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkFunction {
    id: BenchmarkId,
    name: String,
    bounds: Bounds,
}

impl BenchmarkFunction {
    pub fn new(id: BenchmarkId, dim: usize) -> Result<Self> {
        id.check_dim(dim)?;
        Ok(Self {
            id,
            name: id.alias().to_string(),
            bounds: id.bounds(dim)?,
        })
    }

    pub fn with_default_dimension(id: BenchmarkId) -> Self {
        Self::new(id, id.default_dimension()).expect("default dimension is valid")
    }

    pub fn id(&self) -> BenchmarkId {
        self.id
    }

    pub fn known_optimum(&self) -> (f64, Vec<Vec<f64>>) {
        self.id
            .known_optimum(self.bounds.dimension())
            .expect("dimension checked at construction")
    }
}

impl Problem for BenchmarkFunction {
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_dimension(&self.name, self.bounds.dimension(), x)?;
        Ok(self.id.eval_unchecked(x))
    }
}

/// Evaluate a benchmark by name (`f1`..`f10` or alias).
pub fn evaluate_benchmark(name: &str, x: &[f64]) -> Result<f64> {
    BenchmarkId::from_name(name)?.evaluate(x)
}

/// Known minimum and minimizers of a benchmark in its default dimension.
pub fn known_optimum(name: &str) -> Result<(f64, Vec<Vec<f64>>)> {
    let id = BenchmarkId::from_name(name)?;
    id.known_optimum(id.default_dimension())
}
