use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};

/// Box constraints `lower[k] <= x[k] <= upper[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(GemError::config("bounds must have dimension >= 1"));
        }
        if lower.len() != upper.len() {
            return Err(GemError::config(format!(
                "bounds dimension mismatch: {} lower vs {} upper",
                lower.len(),
                upper.len()
            )));
        }
        for (k, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(GemError::config(format!(
                    "invalid bounds at coordinate {k}: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` on every coordinate.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Euclidean length of the box diagonal.
    pub fn diagonal(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| (hi - lo).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Clip every coordinate into its interval in place.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

/// A minimization problem as seen by the optimizer.
///
/// `evaluate` must be pure: the same input always gives the same output.
/// Constrained problems return their penalized objective here.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &Bounds;

    fn dimension(&self) -> usize {
        self.bounds().dimension()
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64>;

    /// Project a clamped point onto any extra structure the problem requires
    /// (for example a discrete lattice). The default leaves `x` unchanged.
    fn repair(&self, _x: &mut [f64]) {}
}

impl<P: Problem + ?Sized> Problem for Box<P> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn bounds(&self) -> &Bounds {
        (**self).bounds()
    }
    fn dimension(&self) -> usize {
        (**self).dimension()
    }
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        (**self).evaluate(x)
    }
    fn repair(&self, x: &mut [f64]) {
        (**self).repair(x)
    }
}

pub(crate) fn check_dimension(name: &str, expected: usize, x: &[f64]) -> Result<()> {
    if x.len() != expected {
        return Err(GemError::config(format!(
            "{name} expects dimension {expected}, got {}",
            x.len()
        )));
    }
    Ok(())
}
