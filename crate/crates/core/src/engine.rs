//! Population state, the four update rules and the main iteration loop.
//!
//! One iteration for agent `i` with partner `j != i`:
//!
//! ```text
//! v_i <- p v_i + q e1 * (g - x_i) + r e2 * (x_i* - x_i)
//! x'  <- a x_i + (1 - a) c_m + b (x_j - x_i) + c v_i + theta h(x_i) * zeta
//! x_i <- x' if f(x') <= f(x_i)
//! ```
//!
//! where `g` is the global best, `x_i*` the personal best, `c_m` the mean of
//! the `m` best current positions, `e1, e2` are uniform vectors and `zeta` a
//! random vector whose law is chosen by the preset (standard normal unless
//! stated otherwise). The global best and centroid are refreshed once per
//! sweep, so every agent in a sweep sees the previous sweep's values.

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};
use crate::presets::{PresetSpec, ResolveContext};
use crate::problem::{Bounds, Problem};
use crate::rng::{LevySampler, RngStream};

/// The function `h(x)` scaling the perturbation term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum HMode {
    /// `h(x) = 1`.
    #[default]
    ConstantOne,
    /// `h(x) = x`.
    IdentityOfPosition,
    /// `h(x) = Ub`, the upper bound vector of the search box.
    UpperBound,
}

/// Law of the perturbation vector `zeta`, drawn per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ZetaLaw {
    #[default]
    StandardNormal,
    /// Normal with the given mean and unit variance.
    Normal { mean: f64 },
    /// Mantegna Lévy step with exponent `beta`.
    Levy { beta: f64 },
    /// `u - 1/2` with `u` uniform on `[0, 1)`.
    CenteredUniform,
    /// `±(Lb + u (Ub - Lb))` with a fair random sign.
    SignedBoxSample,
}

/// The GEM controls resolved for one agent at one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GemParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub theta: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// Number of best agents averaged into the centroid.
    pub m: usize,
    pub h_mode: HMode,
    pub zeta: ZetaLaw,
}

impl GemParams {
    /// All coefficients zero; `m = 1`.
    pub fn zero() -> Self {
        Self {
            a: 0.0,
            b: 0.0,
            c: 0.0,
            theta: 0.0,
            p: 0.0,
            q: 0.0,
            r: 0.0,
            m: 1,
            h_mode: HMode::ConstantOne,
            zeta: ZetaLaw::StandardNormal,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub personal_best: Vec<f64>,
    pub personal_best_value: f64,
    pub current_value: f64,
}

impl Agent {
    fn new(position: Vec<f64>, value: f64) -> Self {
        Self {
            velocity: vec![0.0; position.len()],
            personal_best: position.clone(),
            personal_best_value: value,
            current_value: value,
            position,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub agents: Vec<Agent>,
    pub global_best: Vec<f64>,
    pub global_best_value: f64,
    pub centroid: Vec<f64>,
    pub iteration: usize,
}

impl SwarmState {
    /// Build a state from already-evaluated positions, with zero velocities,
    /// personal bests at the positions and the global best computed.
    pub fn from_evaluated(positions: Vec<Vec<f64>>, values: Vec<f64>, m: usize) -> Result<Self> {
        if positions.is_empty() || positions.len() != values.len() {
            return Err(GemError::config(
                "swarm needs at least one agent and one value per agent",
            ));
        }
        let dim = positions[0].len();
        if dim == 0 || positions.iter().any(|p| p.len() != dim) {
            return Err(GemError::config("all agents must share a dimension >= 1"));
        }
        let agents: Vec<Agent> = positions
            .into_iter()
            .zip(values)
            .map(|(x, f)| Agent::new(x, f))
            .collect();
        let mut state = SwarmState {
            global_best: agents[0].position.clone(),
            global_best_value: f64::INFINITY,
            centroid: vec![0.0; dim],
            agents,
            iteration: 0,
        };
        update_global_best(&mut state, m)?;
        Ok(state)
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.global_best.len()
    }
}

/// `Lb + u * (Ub - Lb)` for a given unit vector `u`.
pub fn position_from_unit(bounds: &Bounds, u: &[f64]) -> Vec<f64> {
    bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .zip(u)
        .map(|((lo, hi), u)| lo + u * (hi - lo))
        .collect()
}

/// Monte Carlo initial positions: `n` uniform samples from the box.
pub fn initialize_positions(
    bounds: &Bounds,
    n: usize,
    dim: usize,
    rng: &mut RngStream,
) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(GemError::config("population size must be >= 1"));
    }
    if dim == 0 || bounds.dimension() != dim {
        return Err(GemError::config(format!(
            "bounds have dimension {}, problem dimension is {dim}",
            bounds.dimension()
        )));
    }
    Ok((0..n)
        .map(|_| position_from_unit(bounds, &rng.uniform_vec(dim)))
        .collect())
}

/// Sample, evaluate and rank an initial population.
pub fn initialize_population<P: Problem + ?Sized>(
    problem: &P,
    n: usize,
    m: usize,
    rng: &mut RngStream,
) -> Result<SwarmState> {
    let bounds = problem.bounds();
    let mut positions = initialize_positions(bounds, n, problem.dimension(), rng)?;
    let mut values = Vec::with_capacity(n);
    for x in positions.iter_mut() {
        problem.repair(x);
        values.push(evaluate_checked(problem, x)?);
    }
    SwarmState::from_evaluated(positions, values, m)
}

/// Agent indices sorted by current value, ties broken by the lower index.
fn ranking(state: &SwarmState) -> Vec<usize> {
    let mut order: Vec<usize> = (0..state.agents.len()).collect();
    order.sort_by(|&i, &j| {
        state.agents[i]
            .current_value
            .total_cmp(&state.agents[j].current_value)
            .then(i.cmp(&j))
    });
    order
}

/// Componentwise mean of the `m` agents with the lowest current values.
pub fn centroid_top_m(state: &SwarmState, m: usize) -> Result<Vec<f64>> {
    let n = state.agents.len();
    if m == 0 || m > n {
        return Err(GemError::config(format!(
            "centroid size m={m} must lie in [1, {n}]"
        )));
    }
    let mut centroid = vec![0.0; state.dimension()];
    for &i in ranking(state).iter().take(m) {
        for (c, x) in centroid.iter_mut().zip(&state.agents[i].position) {
            *c += x;
        }
    }
    let inv = 1.0 / m as f64;
    centroid.iter_mut().for_each(|c| *c *= inv);
    Ok(centroid)
}

/// Refresh the global best from current positions and personal bests, and
/// recompute the centroid. The global best value never increases.
pub fn update_global_best(state: &mut SwarmState, m: usize) -> Result<()> {
    let mut best: Option<(f64, &Vec<f64>)> = None;
    for agent in &state.agents {
        for (value, point) in [
            (agent.current_value, &agent.position),
            (agent.personal_best_value, &agent.personal_best),
        ] {
            if best.is_none_or(|(v, _)| value < v) {
                best = Some((value, point));
            }
        }
    }
    if let Some((value, point)) = best {
        if value < state.global_best_value {
            state.global_best_value = value;
            state.global_best = point.clone();
        }
    }
    state.centroid = centroid_top_m(state, m)?;
    Ok(())
}

/// `p v + q e1 * (g - x) + r e2 * (x* - x)` with explicit random vectors.
pub fn velocity_update_with(
    agent: &Agent,
    global_best: &[f64],
    params: &GemParams,
    eps1: &[f64],
    eps2: &[f64],
) -> Vec<f64> {
    (0..agent.position.len())
        .map(|k| {
            let x = agent.position[k];
            params.p * agent.velocity[k]
                + params.q * eps1[k] * (global_best[k] - x)
                + params.r * eps2[k] * (agent.personal_best[k] - x)
        })
        .collect()
}

/// Velocity update drawing fresh uniform `e1`, `e2` per coordinate.
pub fn velocity_update(
    agent: &Agent,
    global_best: &[f64],
    params: &GemParams,
    rng: &mut RngStream,
) -> Vec<f64> {
    let dim = agent.position.len();
    let eps1 = rng.uniform_vec(dim);
    let eps2 = rng.uniform_vec(dim);
    velocity_update_with(agent, global_best, params, &eps1, &eps2)
}

/// Draw the raw perturbation vector `zeta` under `law`.
pub fn sample_zeta(law: ZetaLaw, bounds: &Bounds, rng: &mut RngStream) -> Result<Vec<f64>> {
    let dim = bounds.dimension();
    Ok(match law {
        ZetaLaw::StandardNormal => (0..dim).map(|_| rng.normal()).collect(),
        ZetaLaw::Normal { mean } => (0..dim).map(|_| mean + rng.normal()).collect(),
        ZetaLaw::Levy { beta } => {
            let sampler = LevySampler::new(beta)?;
            (0..dim).map(|_| sampler.sample(rng)).collect()
        }
        ZetaLaw::CenteredUniform => (0..dim).map(|_| rng.uniform() - 0.5).collect(),
        ZetaLaw::SignedBoxSample => bounds
            .lower()
            .iter()
            .zip(bounds.upper())
            .map(|(lo, hi)| {
                let magnitude = lo + rng.uniform() * (hi - lo);
                if rng.bernoulli(0.5) {
                    magnitude
                } else {
                    -magnitude
                }
            })
            .collect(),
    })
}

fn h_value(mode: HMode, x: &[f64], bounds: &Bounds, k: usize) -> f64 {
    match mode {
        HMode::ConstantOne => 1.0,
        HMode::IdentityOfPosition => x[k],
        HMode::UpperBound => bounds.upper()[k],
    }
}

/// `a x + (1 - a) centroid + b (partner - x) + c v_new + theta h(x) * zeta`.
pub fn position_update_with(
    x: &[f64],
    partner: &[f64],
    centroid: &[f64],
    v_new: &[f64],
    params: &GemParams,
    bounds: &Bounds,
    zeta: &[f64],
) -> Vec<f64> {
    (0..x.len())
        .map(|k| {
            let mut out = params.a * x[k]
                + (1.0 - params.a) * centroid[k]
                + params.b * (partner[k] - x[k])
                + params.c * v_new[k];
            // theta = 0 must not touch zeta: a Lévy draw can be infinite
            if params.theta != 0.0 {
                out += params.theta * h_value(params.h_mode, x, bounds, k) * zeta[k];
            }
            out
        })
        .collect()
}

/// Position update drawing `zeta` from the law in `params`.
pub fn position_update(
    x: &[f64],
    partner: &[f64],
    centroid: &[f64],
    v_new: &[f64],
    params: &GemParams,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let zeta = sample_zeta(params.zeta, bounds, rng)?;
    Ok(position_update_with(
        x, partner, centroid, v_new, params, bounds, &zeta,
    ))
}

/// Greedy acceptance for minimization; ties accept the candidate.
pub fn greedy_select(
    old_position: Vec<f64>,
    old_value: f64,
    new_position: Vec<f64>,
    new_value: f64,
) -> Result<(Vec<f64>, f64)> {
    if old_value.is_nan() || new_value.is_nan() {
        return Err(GemError::Evaluation(format!(
            "NaN objective in acceptance test (old {old_value}, new {new_value})"
        )));
    }
    if new_value <= old_value {
        Ok((new_position, new_value))
    } else {
        Ok((old_position, old_value))
    }
}

/// Clip each coordinate into `[Lb, Ub]`.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Vec<f64> {
    let mut out = x.to_vec();
    bounds.clamp_in_place(&mut out);
    out
}

fn evaluate_checked<P: Problem + ?Sized>(problem: &P, x: &[f64]) -> Result<f64> {
    let value = problem.evaluate(x)?;
    if value.is_nan() {
        return Err(GemError::Evaluation(format!(
            "{} returned NaN at {x:?}",
            problem.name()
        )));
    }
    Ok(value)
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Population size, budget and centroid options for one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Number of agents.
    pub n: usize,
    /// Number of iterations (sweeps over the population).
    pub t_max: usize,
    /// Centroid size; `None` means the whole population.
    pub m: Option<usize>,
    /// Also evaluate the centroid after every sweep and let it compete for
    /// the global best. Costs one extra evaluation per iteration.
    pub evaluate_centroid: bool,
}

impl EngineConfig {
    pub fn new(n: usize, t_max: usize) -> Self {
        Self {
            n,
            t_max,
            m: None,
            evaluate_centroid: false,
        }
    }

    pub fn centroid_size(&self) -> usize {
        self.m.unwrap_or(self.n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(GemError::config("population size n must be >= 1"));
        }
        if self.t_max == 0 {
            return Err(GemError::config("iteration budget t_max must be >= 1"));
        }
        let m = self.centroid_size();
        if m == 0 || m > self.n {
            return Err(GemError::config(format!(
                "centroid size m={m} must lie in [1, n={}]",
                self.n
            )));
        }
        Ok(())
    }
}

/// Result of a single optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    /// Best value after each iteration; length `t_max`.
    pub history: Vec<f64>,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Run the optimizer to completion.
pub fn run_gem<P: Problem + ?Sized>(
    problem: &P,
    preset: &PresetSpec,
    config: &EngineConfig,
    rng: &mut RngStream,
) -> Result<RunOutcome> {
    run_gem_observed(problem, preset, config, rng, |_| {})
}

/// Run the optimizer, calling `observe` with the state after initialization
/// and after every iteration.
pub fn run_gem_observed<P, F>(
    problem: &P,
    preset: &PresetSpec,
    config: &EngineConfig,
    rng: &mut RngStream,
    mut observe: F,
) -> Result<RunOutcome>
where
    P: Problem + ?Sized,
    F: FnMut(&SwarmState),
{
    config.validate()?;
    let m = config.centroid_size();
    let bounds = problem.bounds();
    let n = config.n;

    let mut state = initialize_population(problem, n, m, rng)
        .map_err(|e| wrap_run_error(e, 0))?;
    let mut evaluations = n;
    observe(&state);

    let diagonal = bounds.diagonal();
    let mut history = Vec::with_capacity(config.t_max);

    for t in 1..=config.t_max {
        let snapshot: Vec<Vec<f64>> = state.agents.iter().map(|a| a.position.clone()).collect();
        for i in 0..n {
            let partner_index = if n > 1 { rng.index_except(n, i) } else { i };
            let partner = &snapshot[partner_index];
            let agent = &state.agents[i];
            let ctx = ResolveContext {
                t,
                t_max: config.t_max,
                agent_index: i,
                m,
                partner_distance: distance(&agent.position, partner),
                personal_best_distance: distance(&agent.position, &agent.personal_best),
                global_best_distance: distance(&agent.position, &state.global_best),
                bounds_diagonal: diagonal,
            };
            let params = preset
                .resolve(&ctx, rng)
                .map_err(|e| wrap_run_error(e, t))?;

            let v_new = velocity_update(agent, &state.global_best, &params, rng);
            let mut candidate = position_update(
                &agent.position,
                partner,
                &state.centroid,
                &v_new,
                &params,
                bounds,
                rng,
            )
            .map_err(|e| wrap_run_error(e, t))?;
            // a NaN coordinate (e.g. inf * 0) falls back to the current one
            for (c, x) in candidate.iter_mut().zip(&agent.position) {
                if c.is_nan() {
                    *c = *x;
                }
            }
            bounds.clamp_in_place(&mut candidate);
            problem.repair(&mut candidate);
            let value = evaluate_checked(problem, &candidate).map_err(|e| wrap_run_error(e, t))?;
            evaluations += 1;

            let agent = &mut state.agents[i];
            agent.velocity = v_new;
            let old_position = std::mem::take(&mut agent.position);
            let (position, accepted_value) =
                greedy_select(old_position, agent.current_value, candidate, value)
                    .map_err(|e| wrap_run_error(e, t))?;
            agent.position = position;
            agent.current_value = accepted_value;
            if accepted_value < agent.personal_best_value {
                agent.personal_best_value = accepted_value;
                agent.personal_best = agent.position.clone();
            }
        }

        update_global_best(&mut state, m).map_err(|e| wrap_run_error(e, t))?;
        if config.evaluate_centroid {
            let mut centroid = state.centroid.clone();
            bounds.clamp_in_place(&mut centroid);
            problem.repair(&mut centroid);
            let value = evaluate_checked(problem, &centroid).map_err(|e| wrap_run_error(e, t))?;
            evaluations += 1;
            if value < state.global_best_value {
                state.global_best_value = value;
                state.global_best = centroid;
            }
        }
        state.iteration = t;
        history.push(state.global_best_value);
        observe(&state);
    }

    Ok(RunOutcome {
        best_point: state.global_best,
        best_value: state.global_best_value,
        history,
        iterations: config.t_max,
        evaluations,
    })
}

fn wrap_run_error(err: GemError, iteration: usize) -> GemError {
    match err {
        GemError::Config(_) => err,
        other => GemError::Run {
            iteration,
            source: Box::new(other),
        },
    }
}
