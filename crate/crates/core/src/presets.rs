//! Algorithm presets.
//!
//! A preset assigns a [`ParamValue`] to each GEM coefficient. Values may be
//! constants, schedules in the iteration counter `t`, random draws, or
//! kernels of distances the engine measures for the current agent. Presets
//! described by two alternative moves carry a [`BranchRule`] that picks one
//! of two parameter bundles per agent per iteration.
//!
//! The registry is plain data and serializes to a JSON document, one record
//! per preset.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::engine::{GemParams, HMode, ZetaLaw};
use crate::error::{GemError, Result};
use crate::rng::{LevySampler, RngStream};

/// Per-agent quantities a preset may depend on, measured by the engine
/// before the agent moves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolveContext {
    /// Current iteration, `1..=t_max`.
    pub t: usize,
    pub t_max: usize,
    pub agent_index: usize,
    /// Centroid size forwarded into the resolved parameters.
    pub m: usize,
    /// Distance from the agent to its partner `x_j`.
    pub partner_distance: f64,
    pub personal_best_distance: f64,
    pub global_best_distance: f64,
    /// Length of the search box diagonal, for normalized distances.
    pub bounds_diagonal: f64,
}

impl ResolveContext {
    /// Context for iteration `t` with all distances zero.
    pub fn at(t: usize, t_max: usize) -> Self {
        Self {
            t,
            t_max,
            agent_index: 0,
            m: 1,
            partner_distance: 0.0,
            personal_best_distance: 0.0,
            global_best_distance: 0.0,
            bounds_diagonal: 1.0,
        }
    }

    fn distance(&self, target: DistanceTarget) -> f64 {
        match target {
            DistanceTarget::Partner => self.partner_distance,
            DistanceTarget::PersonalBest => self.personal_best_distance,
            DistanceTarget::GlobalBest => self.global_best_distance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceTarget {
    Partner,
    PersonalBest,
    GlobalBest,
}

/// How one coefficient is obtained at iteration `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ParamValue {
    Constant { value: f64 },
    /// `base^t`.
    GeometricDecay { base: f64 },
    /// `g0 exp(-alpha t / t_max)`.
    ExponentialDecay { g0: f64, alpha: f64 },
    /// `1 - (t / t_max)^(1/p)`.
    PowerDecay { p: f64 },
    /// Linear from `from` at `t = 0` to `to` at `t = t_max`.
    LinearDecay { from: f64, to: f64 },
    /// `scale / t_max`.
    InverseHorizon { scale: f64 },
    /// `scale / t^2`.
    InverseSquare { scale: f64 },
    UniformDraw { lo: f64, hi: f64 },
    NormalDraw { mean: f64, sd: f64 },
    /// `scale * s` with `s` a Mantegna Lévy step.
    LevyDraw { beta: f64, scale: f64 },
    /// `scale * u1 * (u2 - u3)` with three uniform draws.
    ScaledDifferenceDraw { scale: f64 },
    /// `exp(R) cos(2 pi R)` with `R` uniform on `[lo, hi]`.
    SpiralDraw { lo: f64, hi: f64 },
    /// Henry coefficient iterated as `H(t+1) = H(t) exp(-c (1/T(t) - 1/t0))`
    /// with `T(t) = exp(-t / t_max)` and `H(1) = h0`.
    HenrySolubility { h0: f64, c: f64, t0: f64 },
    /// `scale exp(-gamma d^2)` for the distance `d` to `to`.
    DistanceKernel {
        scale: f64,
        gamma: f64,
        to: DistanceTarget,
    },
    /// Distance to `to` divided by the box diagonal, capped at 1.
    NormalizedDistance { to: DistanceTarget },
    /// Product of the factors, evaluated left to right.
    Product { factors: Vec<ParamValue> },
}

impl ParamValue {
    pub fn constant(value: f64) -> Self {
        ParamValue::Constant { value }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(GemError::config(msg));
        match self {
            ParamValue::GeometricDecay { base } if !(*base > 0.0 && *base <= 1.0) => {
                bad(format!("geometric decay base must lie in (0, 1], got {base}"))
            }
            ParamValue::PowerDecay { p } if !(*p > 0.0) => {
                bad(format!("power decay p must be positive, got {p}"))
            }
            ParamValue::UniformDraw { lo, hi } | ParamValue::SpiralDraw { lo, hi } if lo > hi => {
                bad(format!("draw interval [{lo}, {hi}] is inverted"))
            }
            ParamValue::NormalDraw { sd, .. } if !(*sd >= 0.0) => {
                bad(format!("normal sd must be >= 0, got {sd}"))
            }
            ParamValue::LevyDraw { beta, .. } => LevySampler::new(*beta).map(|_| ()),
            ParamValue::Product { factors } => factors.iter().try_for_each(ParamValue::validate),
            _ => Ok(()),
        }
    }

    /// True when the value ignores the iteration counter and the rng.
    pub fn is_constant(&self) -> bool {
        match self {
            ParamValue::Constant { .. } => true,
            ParamValue::Product { factors } => factors.iter().all(ParamValue::is_constant),
            _ => false,
        }
    }

    pub fn resolve(&self, ctx: &ResolveContext, rng: &mut RngStream) -> Result<f64> {
        let t = ctx.t as f64;
        let t_max = ctx.t_max as f64;
        Ok(match self {
            ParamValue::Constant { value } => *value,
            ParamValue::GeometricDecay { base } => base.powi(ctx.t as i32),
            ParamValue::ExponentialDecay { g0, alpha } => g0 * (-alpha * t / t_max).exp(),
            ParamValue::PowerDecay { p } => 1.0 - (t / t_max).powf(1.0 / p),
            ParamValue::LinearDecay { from, to } => from + (to - from) * t / t_max,
            ParamValue::InverseHorizon { scale } => scale / t_max,
            ParamValue::InverseSquare { scale } => scale / (t * t),
            ParamValue::UniformDraw { lo, hi } => rng.uniform_in(*lo, *hi),
            ParamValue::NormalDraw { mean, sd } => mean + sd * rng.normal(),
            ParamValue::LevyDraw { beta, scale } => scale * rng.levy(*beta)?,
            ParamValue::ScaledDifferenceDraw { scale } => {
                let (u1, u2, u3) = (rng.uniform(), rng.uniform(), rng.uniform());
                scale * u1 * (u2 - u3)
            }
            ParamValue::SpiralDraw { lo, hi } => {
                let r = rng.uniform_in(*lo, *hi);
                r.exp() * (2.0 * std::f64::consts::PI * r).cos()
            }
            ParamValue::HenrySolubility { h0, c, t0 } => {
                // sum_{s=1}^{t-1} exp(s / t_max), a geometric series
                let steps = ctx.t.saturating_sub(1) as f64;
                let ratio = (1.0 / t_max).exp();
                let series = if steps == 0.0 {
                    0.0
                } else {
                    ratio * (ratio.powf(steps) - 1.0) / (ratio - 1.0)
                };
                h0 * (-c * (series - steps / t0)).exp()
            }
            ParamValue::DistanceKernel { scale, gamma, to } => {
                let d = ctx.distance(*to);
                scale * (-gamma * d * d).exp()
            }
            ParamValue::NormalizedDistance { to } => {
                if ctx.bounds_diagonal > 0.0 {
                    (ctx.distance(*to) / ctx.bounds_diagonal).min(1.0)
                } else {
                    0.0
                }
            }
            ParamValue::Product { factors } => {
                let mut out = 1.0;
                for f in factors {
                    out *= f.resolve(ctx, rng)?;
                }
                out
            }
        })
    }
}

impl From<f64> for ParamValue {
    fn from(value: f64) -> Self {
        ParamValue::Constant { value }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Constant { value } => write!(f, "{value}"),
            ParamValue::GeometricDecay { base } => write!(f, "{base}^t"),
            other => write!(
                f,
                "{}",
                serde_json::to_string(other).map_err(|_| fmt::Error)?
            ),
        }
    }
}

/// Parses `1.5` as a constant and `0.97^t` as a geometric decay.
impl FromStr for ParamValue {
    type Err = GemError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(base) = s.strip_suffix("^t") {
            let base: f64 = base
                .trim()
                .parse()
                .map_err(|_| GemError::config(format!("bad geometric base in '{s}'")))?;
            let value = ParamValue::GeometricDecay { base };
            value.validate()?;
            return Ok(value);
        }
        s.parse::<f64>()
            .map(ParamValue::constant)
            .map_err(|_| GemError::config(format!("cannot parse parameter value '{s}'")))
    }
}

/// One value per GEM coefficient plus the perturbation shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamBundle {
    pub a: ParamValue,
    pub b: ParamValue,
    pub c: ParamValue,
    pub theta: ParamValue,
    pub p: ParamValue,
    pub q: ParamValue,
    pub r: ParamValue,
    #[serde(default)]
    pub h_mode: HMode,
    #[serde(default)]
    pub zeta: ZetaLaw,
}

impl ParamBundle {
    /// All coefficients zero except `a = 1`: the identity move.
    pub fn identity() -> Self {
        Self {
            a: 1.0.into(),
            b: 0.0.into(),
            c: 0.0.into(),
            theta: 0.0.into(),
            p: 0.0.into(),
            q: 0.0.into(),
            r: 0.0.into(),
            h_mode: HMode::ConstantOne,
            zeta: ZetaLaw::StandardNormal,
        }
    }

    pub fn fields(&self) -> [(&'static str, &ParamValue); 7] {
        [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("theta", &self.theta),
            ("p", &self.p),
            ("q", &self.q),
            ("r", &self.r),
        ]
    }

    fn field_mut(&mut self, name: &str) -> Option<&mut ParamValue> {
        Some(match name {
            "a" => &mut self.a,
            "b" => &mut self.b,
            "c" => &mut self.c,
            "theta" | "Θ" => &mut self.theta,
            "p" => &mut self.p,
            "q" => &mut self.q,
            "r" => &mut self.r,
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.fields().iter().try_for_each(|(_, v)| v.validate())?;
        if let ZetaLaw::Levy { beta } = self.zeta {
            LevySampler::new(beta)?;
        }
        Ok(())
    }

    /// Resolve in the fixed order a, b, c, theta, p, q, r.
    pub fn resolve(&self, ctx: &ResolveContext, rng: &mut RngStream) -> Result<GemParams> {
        let params = GemParams {
            a: self.a.resolve(ctx, rng)?,
            b: self.b.resolve(ctx, rng)?,
            c: self.c.resolve(ctx, rng)?,
            theta: self.theta.resolve(ctx, rng)?,
            p: self.p.resolve(ctx, rng)?,
            q: self.q.resolve(ctx, rng)?,
            r: self.r.resolve(ctx, rng)?,
            m: ctx.m,
            h_mode: self.h_mode,
            zeta: self.zeta,
        };
        if params.theta < 0.0 {
            return Err(GemError::config(format!(
                "theta resolved to {} at t={}; theta must be >= 0",
                params.theta, ctx.t
            )));
        }
        Ok(params)
    }
}

/// Two alternative moves; `branch_a` is taken with `switch_probability`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRule {
    pub switch_probability: f64,
    pub branch_a: ParamBundle,
    pub branch_b: ParamBundle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Moves {
    Single(ParamBundle),
    Branch(BranchRule),
}

/// How closely the preset follows the algorithm it is named after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fidelity {
    /// Coefficients are fixed numbers.
    Exact,
    /// Coefficients follow schedules, draws or kernels, all available to the engine.
    Scheduled,
    /// Some internal bookkeeping of the original method is replaced by a stand-in.
    Approximate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetSpec {
    pub name: String,
    pub full_name: String,
    pub moves: Moves,
    pub fidelity: Fidelity,
    pub notes: String,
}

impl PresetSpec {
    pub fn single(name: &str, full_name: &str, fidelity: Fidelity, bundle: ParamBundle) -> Self {
        Self {
            name: name.to_string(),
            full_name: full_name.to_string(),
            moves: Moves::Single(bundle),
            fidelity,
            notes: String::new(),
        }
    }

    fn branched(
        name: &str,
        full_name: &str,
        fidelity: Fidelity,
        switch_probability: f64,
        branch_a: ParamBundle,
        branch_b: ParamBundle,
    ) -> Self {
        Self {
            name: name.to_string(),
            full_name: full_name.to_string(),
            moves: Moves::Branch(BranchRule {
                switch_probability,
                branch_a,
                branch_b,
            }),
            fidelity,
            notes: String::new(),
        }
    }

    fn with_notes(mut self, notes: &str) -> Self {
        self.notes = notes.to_string();
        self
    }

    /// The general-purpose setting: `a=1, b=0.7, c=1, p=0.7, q=r=1`,
    /// `theta = 0.97^t`.
    pub fn standard() -> Self {
        PresetSpec::single(
            "GEM",
            "Generalized evolutionary metaheuristic, standard setting",
            Fidelity::Scheduled,
            ParamBundle {
                a: 1.0.into(),
                b: 0.7.into(),
                c: 1.0.into(),
                theta: ParamValue::GeometricDecay { base: 0.97 },
                p: 0.7.into(),
                q: 1.0.into(),
                r: 1.0.into(),
                h_mode: HMode::ConstantOne,
                zeta: ZetaLaw::StandardNormal,
            },
        )
    }

    /// The standard setting with some coefficients overridden by a list like
    /// `a=1,b=0.5,theta=0.9^t`.
    pub fn from_assignments(spec: &str) -> Result<Self> {
        let mut preset = PresetSpec::standard();
        preset.name = "custom".to_string();
        preset.full_name = format!("GEM with {spec}");
        let Moves::Single(bundle) = &mut preset.moves else {
            unreachable!("standard preset has a single move")
        };
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| GemError::config(format!("expected key=value, got '{item}'")))?;
            let key = key.trim();
            let slot = bundle
                .field_mut(key)
                .ok_or_else(|| GemError::config(format!("unknown GEM parameter '{key}'")))?;
            *slot = value.parse()?;
        }
        let all_constant = bundle.fields().iter().all(|(_, v)| v.is_constant());
        preset.fidelity = if all_constant {
            Fidelity::Exact
        } else {
            Fidelity::Scheduled
        };
        preset.validate()?;
        Ok(preset)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.moves {
            Moves::Single(b) => b.validate(),
            Moves::Branch(rule) => {
                if !(0.0..=1.0).contains(&rule.switch_probability) {
                    return Err(GemError::config(format!(
                        "{}: switch probability {} outside [0, 1]",
                        self.name, rule.switch_probability
                    )));
                }
                rule.branch_a.validate()?;
                rule.branch_b.validate()
            }
        }
    }

    /// The bundle(s) of this preset, branch A first.
    pub fn bundles(&self) -> Vec<&ParamBundle> {
        match &self.moves {
            Moves::Single(b) => vec![b],
            Moves::Branch(rule) => vec![&rule.branch_a, &rule.branch_b],
        }
    }

    /// Resolve every coefficient for one agent at iteration `ctx.t`.
    ///
    /// Branching presets consume one uniform draw for the switch before any
    /// coefficient draws.
    pub fn resolve(&self, ctx: &ResolveContext, rng: &mut RngStream) -> Result<GemParams> {
        if ctx.t == 0 || ctx.t > ctx.t_max {
            return Err(GemError::config(format!(
                "iteration {} outside [1, {}]",
                ctx.t, ctx.t_max
            )));
        }
        match &self.moves {
            Moves::Single(bundle) => bundle.resolve(ctx, rng),
            Moves::Branch(rule) => {
                if rng.bernoulli(rule.switch_probability) {
                    rule.branch_a.resolve(ctx, rng)
                } else {
                    rule.branch_b.resolve(ctx, rng)
                }
            }
        }
    }
}

/// Resolve `preset` at iteration `t` for `agent_index` with zero distances.
pub fn resolve_params(
    preset: &PresetSpec,
    t: usize,
    t_max: usize,
    rng: &mut RngStream,
    agent_index: usize,
) -> Result<GemParams> {
    let ctx = ResolveContext {
        agent_index,
        ..ResolveContext::at(t, t_max)
    };
    preset.resolve(&ctx, rng)
}

fn c(v: f64) -> ParamValue {
    ParamValue::constant(v)
}

fn build_registry() -> Vec<PresetSpec> {
    use DistanceTarget::*;
    use Fidelity::*;
    let id = ParamBundle::identity;

    vec![
        PresetSpec::single("DE", "Differential evolution", Exact, ParamBundle { b: c(0.7), ..id() })
            .with_notes("b = F = 0.7; the donor is the random partner x_j."),
        PresetSpec::single(
            "PSO",
            "Particle swarm optimization",
            Exact,
            ParamBundle { c: c(1.0), p: c(1.0), q: c(2.0), r: c(2.0), ..id() },
        )
        .with_notes("q = alpha = 2 and r = beta = 2, the usual learning factors."),
        PresetSpec::single(
            "FA",
            "Firefly algorithm",
            Scheduled,
            ParamBundle {
                b: ParamValue::DistanceKernel { scale: 1.0, gamma: 1.0, to: Partner },
                theta: ParamValue::GeometricDecay { base: 0.97 },
                ..id()
            },
        )
        .with_notes("b = beta0 exp(-gamma r_ij^2) with beta0 = 1, gamma = 1; theta = 0.97^t."),
        PresetSpec::single("SA", "Simulated annealing", Exact, ParamBundle { theta: c(1.0), ..id() })
            .with_notes("Gaussian random walk with greedy acceptance; no Metropolis step."),
        PresetSpec::single(
            "ABC",
            "Artificial bee colony",
            Scheduled,
            ParamBundle { b: ParamValue::UniformDraw { lo: -1.0, hi: 1.0 }, ..id() },
        )
        .with_notes("b = Phi uniform on [-1, 1]."),
        PresetSpec::single(
            "ACS",
            "Artificial cooperative search",
            Approximate,
            ParamBundle { b: ParamValue::ScaledDifferenceDraw { scale: 4.0 }, ..id() },
        )
        .with_notes(
            "b = R = 4 u1 (u2 - u3). The alpha/beta predator key selection is not modelled; \
             the partner x_j stands in for the selected prey.",
        ),
        PresetSpec::single(
            "CSS",
            "Charged system search",
            Approximate,
            ParamBundle { b: ParamValue::NormalizedDistance { to: Partner }, ..id() },
        )
        .with_notes(
            "b = A(R) taken as the linear law A(R) = R, with R the partner distance \
             normalized by the box diagonal (maximum 1). Charge magnitudes are not tracked.",
        ),
        PresetSpec::branched(
            "CS",
            "Cuckoo search",
            Scheduled,
            0.25,
            ParamBundle { b: ParamValue::LevyDraw { beta: 1.5, scale: 1.0 }, ..id() },
            ParamBundle { theta: c(1.0), zeta: ZetaLaw::Levy { beta: 1.5 }, ..id() },
        )
        .with_notes(
            "Switch probability p_a = 0.25 selects b = alpha s with Levy s (alpha = 1, beta = 1.5); \
             otherwise theta = 1 with a Levy-distributed zeta.",
        ),
        PresetSpec::single(
            "GSA",
            "Gravitational search algorithm",
            Approximate,
            ParamBundle {
                b: ParamValue::Product {
                    factors: vec![
                        ParamValue::UniformDraw { lo: 0.0, hi: 1.0 },
                        ParamValue::ExponentialDecay { g0: 100.0, alpha: 20.0 },
                    ],
                },
                c: c(1.0),
                p: ParamValue::UniformDraw { lo: 0.0, hi: 1.0 },
                ..id()
            },
        )
        .with_notes(
            "b = rand G(t), G(t) = G0 exp(-alpha t / T) with G0 = 100, alpha = 20. \
             Agent masses are not tracked.",
        ),
        PresetSpec::single("GEA", "Gradient evolution algorithm", Approximate, ParamBundle { b: c(0.5), ..id() })
            .with_notes(
                "The gradient-ratio b depends on worst/best bookkeeping the swarm does not keep; \
                 b is frozen to 0.5. r_a = 0 (no acceleration factor).",
            ),
        PresetSpec::single(
            "HHO",
            "Harris hawks optimizer",
            Approximate,
            ParamBundle {
                c: c(1.0),
                q: ParamValue::LinearDecay { from: -1.0, to: 0.0 },
                ..id()
            },
        )
        .with_notes("q = -E with escaping energy E decaying linearly from E0 = 1 to 0."),
        PresetSpec::single(
            "HGSO",
            "Henry gas solubility optimization",
            Approximate,
            ParamBundle {
                b: ParamValue::UniformDraw { lo: 0.0, hi: 1.0 },
                c: c(1.0),
                p: c(1.0),
                q: ParamValue::HenrySolubility { h0: 1.0, c: 1.0, t0: 298.15 },
                ..id()
            },
        )
        .with_notes(
            "q follows the Henry coefficient with C_j = 1, T0 = 298.15 K, T(t) = exp(-t/t_max); \
             partial pressures and gas clusters are not tracked. b = r is drawn uniform on [0, 1].",
        ),
        PresetSpec::branched(
            "HS",
            "Harmony search",
            Scheduled,
            0.3,
            ParamBundle {
                a: c(0.0),
                theta: c(1.0),
                h_mode: HMode::IdentityOfPosition,
                ..id()
            },
            ParamBundle { b: c(1.0), ..id() },
        )
        .with_notes(
            "Pitch adjustment (rate 0.3): a = 0, b = c = 0, theta = 1, h(x) = x. \
             Otherwise harmony selection with b = 1, theta = 0, which copies the partner.",
        ),
        PresetSpec::single(
            "ALO",
            "Ant lion optimizer",
            Approximate,
            ParamBundle {
                c: c(1.0),
                r: c(1.0),
                theta: ParamValue::LinearDecay { from: 1.0, to: 0.0 },
                ..id()
            },
        )
        .with_notes(
            "theta = d_i - c_i is modelled as a random-walk range shrinking linearly to 0. \
             The elite averaging of g* is not modelled.",
        ),
        PresetSpec::branched(
            "WOA",
            "Whale optimization algorithm",
            Scheduled,
            0.5,
            ParamBundle {
                b: ParamValue::Product {
                    factors: vec![
                        ParamValue::LinearDecay { from: 2.0, to: 0.0 },
                        ParamValue::UniformDraw { lo: -1.0, hi: 1.0 },
                    ],
                },
                ..id()
            },
            ParamBundle {
                b: ParamValue::SpiralDraw { lo: -1.0, hi: 1.0 },
                theta: c(1.0),
                ..id()
            },
        )
        .with_notes(
            "Encircling: b = -A, A = 2 d u - d with d linear from 2 to 0, i.e. d times a \
             uniform draw on [-1, 1]. Spiral (probability 0.5): theta = 1, b = e^R cos(2 pi R), \
             R uniform on [-1, 1].",
        ),
        PresetSpec::branched(
            "LOA",
            "Lion optimization algorithm",
            Approximate,
            0.5,
            ParamBundle {
                c: c(1.0),
                q: ParamValue::UniformDraw { lo: -1.0, hi: 0.0 },
                ..id()
            },
            ParamBundle {
                theta: ParamValue::Product {
                    factors: vec![
                        ParamValue::NormalizedDistance { to: GlobalBest },
                        ParamValue::UniformDraw { lo: 0.0, hi: 1.0 },
                    ],
                },
                ..id()
            },
        )
        .with_notes(
            "q = -PI with the percentage of improvement PI drawn uniform on [0, 1]. The roaming \
             branch sets theta = D R with D the normalized distance to g* and R uniform on [0, 1]. \
             Prides and nomads are not modelled.",
        ),
        PresetSpec::single(
            "MOA",
            "Mayfly optimization algorithm",
            Scheduled,
            ParamBundle {
                c: c(1.0),
                p: c(0.8),
                q: ParamValue::DistanceKernel { scale: 1.0, gamma: 2.0, to: PersonalBest },
                r: ParamValue::DistanceKernel { scale: 1.5, gamma: 2.0, to: GlobalBest },
                ..id()
            },
        )
        .with_notes(
            "p = g = 0.8, q = a1 exp(-beta r_p^2), r = a2 exp(-beta r_g^2) with a1 = 1, \
             a2 = 1.5, beta = 2.",
        ),
        PresetSpec::single(
            "BBBC",
            "Big bang-big crunch",
            Scheduled,
            ParamBundle {
                a: c(0.0),
                theta: ParamValue::InverseHorizon { scale: 1.0 },
                h_mode: HMode::UpperBound,
                ..id()
            },
        )
        .with_notes(
            "Moves around the centroid (a = 0) with per-coordinate scale Ub / t_max, \
             realized as theta = 1 / t_max and h(x) = Ub.",
        ),
        PresetSpec::single(
            "SSA",
            "Social spider algorithm",
            Approximate,
            ParamBundle {
                b: ParamValue::DistanceKernel { scale: 1.0, gamma: 1.0, to: Partner },
                theta: c(1.0),
                zeta: ZetaLaw::CenteredUniform,
                ..id()
            },
        )
        .with_notes(
            "b = w e^(-d_ij^2) with w = 1 (vibration attenuating with distance); \
             zeta = rand - 1/2.",
        ),
        PresetSpec::branched(
            "MSA",
            "Moth search algorithm",
            Approximate,
            0.5,
            ParamBundle {
                a: ParamValue::UniformDraw { lo: 0.0, hi: 1.0 },
                c: c(1.0),
                q: c(0.618),
                ..id()
            },
            ParamBundle {
                theta: ParamValue::InverseSquare { scale: 1.0 },
                zeta: ZetaLaw::Levy { beta: 1.5 },
                ..id()
            },
        )
        .with_notes(
            "Flight straightly: a = lambda uniform on [0, 1], c = 1, q = phi = 0.618. \
             Levy flight: theta = S_max / t^2 with S_max = 1 and Levy zeta. \
             The half/half subpopulation split is a per-agent coin flip.",
        ),
        PresetSpec::single(
            "MVO",
            "Multi-verse optimizer",
            Scheduled,
            ParamBundle {
                theta: ParamValue::PowerDecay { p: 6.0 },
                zeta: ZetaLaw::SignedBoxSample,
                ..id()
            },
        )
        .with_notes("theta = 1 - (t/t_max)^(1/p), p = 6; zeta = ±[Lb + rand (Ub - Lb)]."),
        PresetSpec::branched(
            "WCA",
            "Water cycle algorithm",
            Approximate,
            0.9,
            ParamBundle { b: ParamValue::UniformDraw { lo: 0.0, hi: 2.0 }, ..id() },
            ParamBundle {
                theta: c(0.1f64.sqrt()),
                zeta: ZetaLaw::Normal { mean: 1.0 },
                ..id()
            },
        )
        .with_notes(
            "Flow step (probability 0.9): b = C rand with C = 2. New-stream step: theta = sqrt(mu), \
             mu = 0.1, zeta Gaussian with unit mean. The evaporation test is replaced by the coin flip.",
        ),
    ]
}

/// All registered presets, in registry order.
pub fn registry() -> &'static [PresetSpec] {
    static REGISTRY: OnceLock<Vec<PresetSpec>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn list_presets() -> Vec<&'static str> {
    registry().iter().map(|p| p.name.as_str()).collect()
}

/// Look up a preset by name, ignoring ASCII case. `GEM` names the standard setting.
pub fn find_preset(name: &str) -> Result<PresetSpec> {
    if name.eq_ignore_ascii_case("gem") || name.eq_ignore_ascii_case("standard") {
        return Ok(PresetSpec::standard());
    }
    registry()
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| GemError::config(format!("unknown preset '{name}'")))
}

/// The registry as a pretty-printed JSON array.
pub fn registry_document() -> Result<String> {
    Ok(serde_json::to_string_pretty(registry())?)
}

pub fn parse_registry_document(text: &str) -> Result<Vec<PresetSpec>> {
    Ok(serde_json::from_str(text)?)
}
