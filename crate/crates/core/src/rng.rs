//! Seeded random streams.
//!
//! Every run owns one [`RngStream`]. Streams for repeated runs are derived
//! from a master seed with [`derive_seed`], so any single run can be replayed
//! from the seed written next to its results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::gamma::gamma;

use crate::error::{GemError, Result};

/// Deterministic random source for one optimizer run.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Uniform index in `0..n` that differs from `exclude`. Requires `n >= 2`.
    pub fn index_except(&mut self, n: usize, exclude: usize) -> usize {
        debug_assert!(n >= 2 && exclude < n);
        let j = self.index(n - 1);
        if j >= exclude {
            j + 1
        } else {
            j
        }
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// One Lévy-stable step, see [`LevySampler`].
    pub fn levy(&mut self, beta: f64) -> Result<f64> {
        Ok(LevySampler::new(beta)?.sample(self))
    }

    pub fn uniform_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.uniform()).collect()
    }
}

/// Mantegna's construction of a symmetric Lévy-stable step.
///
/// `s = u / |v|^(1/beta)` with `u ~ N(0, sigma_u^2)`, `v ~ N(0, 1)` and
///
/// ```text
/// sigma_u = [ Γ(1+β) sin(πβ/2) / ( Γ((1+β)/2) β 2^((β-1)/2) ) ]^(1/β)
/// ```
///
/// The tail of `|s|` decays like `s^(-1-β)`, so the variance is infinite
/// for every admissible `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevySampler {
    beta: f64,
    sigma_u: f64,
}

impl LevySampler {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 2.0) {
            return Err(GemError::config(format!(
                "levy exponent beta must lie in (0, 2), got {beta}"
            )));
        }
        let num = gamma(1.0 + beta) * (std::f64::consts::PI * beta / 2.0).sin();
        let den = gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
        Ok(Self {
            beta,
            sigma_u: (num / den).powf(1.0 / beta),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma_u(&self) -> f64 {
        self.sigma_u
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let u = rng.normal() * self.sigma_u;
        let v = rng.normal();
        u / v.abs().powf(1.0 / self.beta)
    }
}

/// One step of the SplitMix64 generator, used as a 64-bit mixing function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for run `run_index` of an experiment: `splitmix64(master ^ splitmix64(run_index))`.
pub fn derive_seed(master_seed: u64, run_index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(run_index))
}
