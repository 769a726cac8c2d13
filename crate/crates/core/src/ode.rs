//! Parameter estimation for a second-order step response.
//!
//! The model `y''/w^2 + 2 z y'/w + y = u(t)` with `y(0) = y'(0) = 0` and a
//! unit step `u` is integrated with classical fixed-step RK4. The fit
//! minimizes the squared error against eleven measured samples at
//! `t = 0, 1, ..., 10`.

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};
use crate::problem::{check_dimension, Bounds, Problem};

/// Damping ratio and natural frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeParams {
    pub zeta: f64,
    pub omega: f64,
}

impl OdeParams {
    pub fn new(zeta: f64, omega: f64) -> Self {
        Self { zeta, omega }
    }
}

/// Measured response at integer times; the `t = 0` sample is the initial condition.
pub const VIBRATION_TIMES: [f64; 11] = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
pub const VIBRATION_VALUES: [f64; 11] = [
    0.0, 1.0706, 1.3372, 0.8277, 0.9507, 1.0848, 0.9814, 0.9769, 1.0169, 1.0012, 0.9933,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VibrationData {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl Default for VibrationData {
    fn default() -> Self {
        Self {
            times: VIBRATION_TIMES.to_vec(),
            values: VIBRATION_VALUES.to_vec(),
        }
    }
}

pub const DEFAULT_DT: f64 = 0.01;

/// Samples `y(k dt)` for `k = 0..=t_end/dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub values: Vec<f64>,
    steps_per_unit: usize,
}

impl Trajectory {
    /// `y` at integer time `t`, read from the grid.
    pub fn at_integer_time(&self, t: usize) -> Option<f64> {
        self.values.get(t * self.steps_per_unit).copied()
    }

    pub fn integer_times(&self) -> Vec<f64> {
        self.values
            .iter()
            .step_by(self.steps_per_unit)
            .copied()
            .collect()
    }
}

fn rhs(params: &OdeParams, y: f64, w: f64) -> (f64, f64) {
    let om = params.omega;
    (w, om * om * (1.0 - y) - 2.0 * params.zeta * om * w)
}

/// Integrate the step response on `[0, t_end]` with RK4 step `dt`.
///
/// `dt` must divide 1 so integer times fall on grid points.
pub fn simulate_step_response(params: OdeParams, t_end: f64, dt: f64) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(GemError::config(format!("time step must be positive, got {dt}")));
    }
    let per_unit = (1.0 / dt).round();
    if per_unit < 1.0 || ((per_unit * dt) - 1.0).abs() > 1e-9 {
        return Err(GemError::config(format!(
            "time step {dt} does not divide the unit interval"
        )));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(GemError::config(format!("bad end time {t_end}")));
    }
    let steps_per_unit = per_unit as usize;
    let total = (t_end.ceil() as usize) * steps_per_unit;
    let h = 1.0 / per_unit;

    let mut values = Vec::with_capacity(total + 1);
    let (mut y, mut w) = (0.0, 0.0);
    values.push(y);
    for _ in 0..total {
        let (k1y, k1w) = rhs(&params, y, w);
        let (k2y, k2w) = rhs(&params, y + 0.5 * h * k1y, w + 0.5 * h * k1w);
        let (k3y, k3w) = rhs(&params, y + 0.5 * h * k2y, w + 0.5 * h * k2w);
        let (k4y, k4w) = rhs(&params, y + h * k3y, w + h * k3w);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        values.push(y);
    }
    Ok(Trajectory {
        dt: h,
        values,
        steps_per_unit,
    })
}

/// Closed-form underdamped response, valid for `0 <= zeta < 1`.
pub fn analytic_step_response(params: OdeParams, t: f64) -> Result<f64> {
    let OdeParams { zeta, omega } = params;
    if !(0.0..1.0).contains(&zeta) {
        return Err(GemError::config(format!(
            "closed form needs 0 <= zeta < 1, got {zeta}"
        )));
    }
    let root = (1.0 - zeta * zeta).sqrt();
    let wd = omega * root;
    Ok(1.0 - (-zeta * omega * t).exp() * ((wd * t).cos() + zeta / root * (wd * t).sin()))
}

/// Sum of squared residuals between `data` and the simulated response.
pub fn sse_objective_with_dt(params: OdeParams, data: &VibrationData, dt: f64) -> Result<f64> {
    let t_end = data.times.iter().copied().fold(0.0, f64::max);
    let traj = simulate_step_response(params, t_end.max(10.0), dt)?;
    data.times
        .iter()
        .zip(&data.values)
        .map(|(t, y)| {
            if t.fract() != 0.0 || *t < 0.0 {
                return Err(GemError::config(format!("sample time {t} is not a whole number")));
            }
            let ys = traj
                .at_integer_time(*t as usize)
                .ok_or_else(|| GemError::config(format!("sample time {t} beyond simulation")))?;
            Ok((y - ys).powi(2))
        })
        .sum()
}

pub fn sse_objective(params: OdeParams, data: &VibrationData) -> Result<f64> {
    sse_objective_with_dt(params, data, DEFAULT_DT)
}

/// The fit as an optimization problem over `x = (zeta, omega)`.
#[derive(Debug, Clone)]
pub struct OdeFit {
    data: VibrationData,
    bounds: Bounds,
    dt: f64,
}

impl OdeFit {
    pub fn new(data: VibrationData, dt: f64) -> Result<Self> {
        if data.times.len() != data.values.len() || data.times.is_empty() {
            return Err(GemError::config("vibration data needs matching, non-empty series"));
        }
        simulate_step_response(OdeParams::new(0.5, 1.0), 0.0, dt)?;
        Ok(Self {
            data,
            bounds: Bounds::new(vec![0.0, 0.1], vec![0.99, 5.0])?,
            dt,
        })
    }

    pub fn data(&self) -> &VibrationData {
        &self.data
    }
}

impl Default for OdeFit {
    fn default() -> Self {
        Self::new(VibrationData::default(), DEFAULT_DT).expect("default fit is valid")
    }
}

impl Problem for OdeFit {
    fn name(&self) -> &str {
        "ode_vibration"
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_dimension("ode_vibration", 2, x)?;
        sse_objective_with_dt(OdeParams::new(x[0], x[1]), &self.data, self.dt)
    }
}
