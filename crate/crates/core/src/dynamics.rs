//! Floating-point corroboration: fixed-step RK4 trajectories, volume
//! contraction of the tangent flow and a Benettin estimate of the largest
//! Lyapunov exponent.
//!
//! Nothing here certifies anything. A positive exponent is reported as
//! heuristic evidence of chaos only.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::systems::{ParamSystem, SystemKind, SystemParams};

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

pub const DEFAULT_DIVERGENCE_BOUND: f64 = 1e12;
pub const DEFAULT_RENORMALIZATION_INTERVAL: f64 = 0.5;
/// Minimum averaging window `t_end - transient` for a Lyapunov estimate.
pub const MIN_AVERAGING_TIME: f64 = 100.0;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("trajectory diverged at t = {t}: {reason}")]
    Divergence { t: f64, reason: String, partial: Box<Trajectory> },
}

/// A vector field on R³ with its Jacobian.
pub trait VectorField {
    fn eval(&self, s: &Vec3) -> Vec3;
    fn jacobian(&self, s: &Vec3) -> Mat3;
}

/// Lorenz or Chen field with double-precision parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Flow {
    pub system: SystemKind,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Flow {
    pub fn new(system: SystemKind, a: f64, b: f64, c: f64) -> Self {
        Flow { system, a, b, c }
    }

    pub fn lorenz(a: f64, b: f64, c: f64) -> Self {
        Flow::new(SystemKind::Lorenz, a, b, c)
    }

    pub fn chen(a: f64, b: f64, c: f64) -> Self {
        Flow::new(SystemKind::Chen, a, b, c)
    }

    pub fn from_params(p: &SystemParams) -> Self {
        let [a, b, c] = p.params();
        Flow::new(p.kind(), a.to_f64(), b.to_f64(), c.to_f64())
    }

    /// The Jacobian trace, which does not depend on the state.
    pub fn trace(&self) -> f64 {
        match self.system {
            SystemKind::Lorenz => -(self.a + 1.0 + self.b),
            SystemKind::Chen => -(self.a + self.b - self.c),
        }
    }
}

impl VectorField for Flow {
    fn eval(&self, s: &Vec3) -> Vec3 {
        let [x, y, z] = *s;
        let (a, b, c) = (self.a, self.b, self.c);
        match self.system {
            SystemKind::Lorenz => [a * (y - x), c * x - x * z - y, x * y - b * z],
            SystemKind::Chen => [a * (y - x), (c - a) * x - x * z + c * y, x * y - b * z],
        }
    }

    fn jacobian(&self, s: &Vec3) -> Mat3 {
        let [x, y, z] = *s;
        let (a, b, c) = (self.a, self.b, self.c);
        match self.system {
            SystemKind::Lorenz => [[-a, a, 0.0], [c - z, -1.0, -x], [y, x, -b]],
            SystemKind::Chen => [[-a, a, 0.0], [c - a - z, c, -x], [y, x, -b]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
    pub initial_state: Vec3,
    /// Abort once any component exceeds this magnitude.
    pub divergence_bound: f64,
}

impl IntegratorConfig {
    pub const METHOD: &'static str = "classical 4th-order Runge-Kutta";

    pub fn new(dt: f64, t_end: f64, initial_state: Vec3) -> Self {
        IntegratorConfig { dt, t_end, initial_state, divergence_bound: DEFAULT_DIVERGENCE_BOUND }
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let bad = |m: &str| Err(DynamicsError::InvalidConfig(m.to_string()));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt must be positive and finite");
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad("t_end must be positive and finite");
        }
        if self.dt > self.t_end {
            return bad("dt must not exceed t_end");
        }
        if !self.initial_state.iter().all(|v| v.is_finite()) {
            return bad("initial state must be finite");
        }
        if self.divergence_bound.is_nan() || self.divergence_bound <= 0.0 {
            return bad("divergence bound must be positive");
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Sample {
    pub fn state(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub flow: Option<Flow>,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    pub fn max_abs_component(&self) -> f64 {
        self.samples.iter().flat_map(|s| [s.x.abs(), s.y.abs(), s.z.abs()]).fold(0.0, f64::max)
    }

    /// CSV with header `t,x,y,z`, 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,x,y,z")?;
        for s in &self.samples {
            writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", s.t, s.x, s.y, s.z)?;
        }
        Ok(())
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += h * k[i];
    }
    out
}

/// One classical Runge–Kutta step for `y' = f(y)`.
pub fn rk4_step<const N: usize>(f: impl Fn(&[f64; N]) -> [f64; N], y: &[f64; N], dt: f64) -> [f64; N] {
    let k1 = f(y);
    let k2 = f(&axpy(y, dt / 2.0, &k1));
    let k3 = f(&axpy(y, dt / 2.0, &k2));
    let k4 = f(&axpy(y, dt, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn exceeds(values: &[f64], bound: f64) -> Option<String> {
    values.iter().find_map(|v| {
        if !v.is_finite() {
            Some("non-finite state".to_string())
        } else if v.abs() > bound {
            Some(format!("|component| {:e} exceeds bound {:e}", v.abs(), bound))
        } else {
            None
        }
    })
}

/// Integrates any vector field with fixed-step RK4, sampling every step.
pub fn integrate_field<F: VectorField>(field: &F, cfg: &IntegratorConfig) -> Result<Trajectory, DynamicsError> {
    cfg.validate()?;
    let n = cfg.steps();
    let mut samples = Vec::with_capacity(n + 1);
    let mut state = cfg.initial_state;
    let push = |samples: &mut Vec<Sample>, i: usize, s: &Vec3| {
        samples.push(Sample { t: i as f64 * cfg.dt, x: s[0], y: s[1], z: s[2] })
    };
    push(&mut samples, 0, &state);
    for i in 1..=n {
        state = rk4_step(|s| field.eval(s), &state, cfg.dt);
        if let Some(reason) = exceeds(&state, cfg.divergence_bound) {
            return Err(DynamicsError::Divergence {
                t: i as f64 * cfg.dt,
                reason,
                partial: Box::new(Trajectory { flow: None, samples }),
            });
        }
        push(&mut samples, i, &state);
    }
    Ok(Trajectory { flow: None, samples })
}

/// RK4 trajectory of a Lorenz or Chen system.
pub fn integrate(flow: &Flow, cfg: &IntegratorConfig) -> Result<Trajectory, DynamicsError> {
    let tag = |mut t: Trajectory| {
        t.flow = Some(*flow);
        t
    };
    match integrate_field(flow, cfg) {
        Ok(t) => Ok(tag(t)),
        Err(DynamicsError::Divergence { t, reason, partial }) => {
            Err(DynamicsError::Divergence { t, reason, partial: Box::new(tag(*partial)) })
        }
        Err(e) => Err(e),
    }
}

fn matvec(m: &Mat3, v: &Vec3) -> Vec3 {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// State plus tangent dynamics `Φ' = J(x) Φ`, packed as 3 + 9 numbers.
fn tangent_rhs<F: VectorField>(field: &F, y: &[f64; 12]) -> [f64; 12] {
    let s = [y[0], y[1], y[2]];
    let j = field.jacobian(&s);
    let f = field.eval(&s);
    let mut out = [0.0; 12];
    out[..3].copy_from_slice(&f);
    for col in 0..3 {
        let v = [y[3 + col], y[6 + col], y[9 + col]];
        let jv = matvec(&j, &v);
        for row in 0..3 {
            out[3 + 3 * row + col] = jv[row];
        }
    }
    out
}

/// Replaces the tangent columns of `y` by their Gram-Schmidt orthonormal
/// basis and returns `ln det R`. Keeping the basis orthonormal avoids the
/// cancellation a direct `det Φ` suffers once stretching and contraction
/// rates differ by tens of units.
fn orthonormalize_tangent(y: &mut [f64; 12]) -> f64 {
    let mut cols = [[0.0; 3]; 3];
    for (col, v) in cols.iter_mut().enumerate() {
        *v = [y[3 + col], y[6 + col], y[9 + col]];
    }
    let mut log_det = 0.0;
    for k in 0..3 {
        for j in 0..k {
            let basis = cols[j];
            let proj = dot(&cols[k], &basis);
            for (x, q) in cols[k].iter_mut().zip(basis) {
                *x -= proj * q;
            }
        }
        let norm = dot(&cols[k], &cols[k]).sqrt();
        log_det += norm.ln();
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    for (col, v) in cols.iter().enumerate() {
        for row in 0..3 {
            y[3 + 3 * row + col] = v[row];
        }
    }
    log_det
}

fn dot(u: &Vec3, v: &Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeReport {
    pub trace: f64,
    pub t_end: f64,
    /// `det Φ(t_end)`.
    pub final_det: f64,
    /// `exp(trace * t_end)`.
    pub expected_final_det: f64,
    /// Largest `|det Φ(t) / exp(trace t) - 1|` over all steps.
    pub max_relative_deviation: f64,
}

/// Compares `det Φ(t)` of the tangent flow with Liouville's `exp(trace · t)`.
/// The determinant is accumulated as a product of per-step QR stretch
/// factors of the orthonormalized tangent basis.
pub fn volume_contraction_check(flow: &Flow, cfg: &IntegratorConfig) -> Result<VolumeReport, DynamicsError> {
    cfg.validate()?;
    let trace = flow.trace();
    let mut y = [0.0; 12];
    y[..3].copy_from_slice(&cfg.initial_state);
    y[3] = 1.0;
    y[7] = 1.0;
    y[11] = 1.0;
    let mut log_det = 0.0;
    let mut max_dev: f64 = 0.0;
    let n = cfg.steps();
    for i in 1..=n {
        y = rk4_step(|s| tangent_rhs(flow, s), &y, cfg.dt);
        if let Some(reason) = exceeds(&y, cfg.divergence_bound) {
            return Err(DynamicsError::Divergence {
                t: i as f64 * cfg.dt,
                reason,
                partial: Box::new(Trajectory { flow: Some(*flow), samples: Vec::new() }),
            });
        }
        log_det += orthonormalize_tangent(&mut y);
        let t = i as f64 * cfg.dt;
        max_dev = max_dev.max((log_det - trace * t).exp_m1().abs());
    }
    let t_end = n as f64 * cfg.dt;
    Ok(VolumeReport {
        trace,
        t_end,
        final_det: log_det.exp(),
        expected_final_det: (trace * t_end).exp(),
        max_relative_deviation: max_dev,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovConfig {
    pub integrator: IntegratorConfig,
    pub transient: f64,
    pub renormalization_interval: f64,
}

impl LyapunovConfig {
    pub fn new(integrator: IntegratorConfig, transient: f64) -> Self {
        LyapunovConfig { integrator, transient, renormalization_interval: DEFAULT_RENORMALIZATION_INTERVAL }
    }

    /// dt = 1e-3, 250 time units after a 50-unit transient, from (1, 1, 1).
    pub fn standard() -> Self {
        LyapunovConfig::new(IntegratorConfig::new(1e-3, 300.0, [1.0, 1.0, 1.0]), 50.0)
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        self.integrator.validate()?;
        let bad = |m: String| Err(DynamicsError::InvalidConfig(m));
        if self.transient.is_nan() || self.transient < 0.0 {
            return bad("transient must be non-negative".into());
        }
        if self.integrator.t_end - self.transient < MIN_AVERAGING_TIME {
            return bad(format!("t_end - transient must be at least {MIN_AVERAGING_TIME} time units"));
        }
        if self.renormalization_interval.is_nan() || self.renormalization_interval < self.integrator.dt {
            return bad("renormalization interval must be at least one step".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub lambda_max: f64,
    pub transient_discard: f64,
    pub renormalization_interval: f64,
    pub averaging_time: f64,
    pub label: &'static str,
}

impl LyapunovEstimate {
    pub const CHAOS_LABEL: &'static str = "heuristic evidence of chaos";
    pub const NO_CHAOS_LABEL: &'static str = "heuristic: no exponential divergence detected";
}

/// Benettin estimate: evolve one tangent vector with the linearized flow,
/// renormalize it at fixed intervals and average the log stretch factors
/// collected after the transient.
pub fn largest_lyapunov<F: VectorField>(field: &F, cfg: &LyapunovConfig) -> Result<LyapunovEstimate, DynamicsError> {
    cfg.validate()?;
    let ic = &cfg.integrator;
    let dt = ic.dt;
    let n = ic.steps();
    let per_renorm = ((cfg.renormalization_interval / dt).round() as usize).max(1);
    let transient_steps = (cfg.transient / dt).round() as usize;

    let rhs = |y: &[f64; 6]| {
        let s = [y[0], y[1], y[2]];
        let f = field.eval(&s);
        let jv = matvec(&field.jacobian(&s), &[y[3], y[4], y[5]]);
        [f[0], f[1], f[2], jv[0], jv[1], jv[2]]
    };
    let inv = 1.0 / 3f64.sqrt();
    let mut y = [ic.initial_state[0], ic.initial_state[1], ic.initial_state[2], inv, inv, inv];
    let mut log_sum = 0.0;
    let mut counted_from = None;
    for i in 1..=n {
        y = rk4_step(rhs, &y, dt);
        if let Some(reason) = exceeds(&y[..3], ic.divergence_bound) {
            return Err(DynamicsError::Divergence {
                t: i as f64 * dt,
                reason,
                partial: Box::new(Trajectory { flow: None, samples: Vec::new() }),
            });
        }
        if i % per_renorm == 0 {
            let norm = (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]).sqrt();
            for v in &mut y[3..] {
                *v /= norm;
            }
            if i > transient_steps {
                counted_from.get_or_insert(i - per_renorm);
                log_sum += norm.ln();
            }
        }
    }
    let start = counted_from.unwrap_or(n);
    let last_renorm = n - n % per_renorm;
    let averaging_time = (last_renorm.saturating_sub(start)) as f64 * dt;
    let lambda_max = log_sum / averaging_time;
    Ok(LyapunovEstimate {
        lambda_max,
        transient_discard: cfg.transient,
        renormalization_interval: per_renorm as f64 * dt,
        averaging_time,
        label: if lambda_max > 0.0 { LyapunovEstimate::CHAOS_LABEL } else { LyapunovEstimate::NO_CHAOS_LABEL },
    })
}

fn solve3(m: &Mat3, rhs: &Vec3) -> Option<Vec3> {
    let d = det3(m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut mk = *m;
        for r in 0..3 {
            mk[r][k] = rhs[r];
        }
        *slot = det3(&mk) / d;
    }
    Some(out)
}

/// Newton iteration for `f(x) = 0` from `guess`; `None` if it fails to
/// converge to a residual below `1e-13` in 50 steps.
pub fn newton_equilibrium<F: VectorField>(field: &F, guess: &Vec3) -> Option<Vec3> {
    let mut x = *guess;
    for _ in 0..50 {
        let f = field.eval(&x);
        let dx = solve3(&field.jacobian(&x), &f)?;
        for i in 0..3 {
            x[i] -= dx[i];
        }
        let step = dx.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let resid = field.eval(&x).iter().map(|v| v.abs()).fold(0.0, f64::max);
        if step < 1e-14 * (1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max)) || resid < 1e-13 {
            return Some(x);
        }
    }
    None
}

/// Equilibria found by Newton refinement from the slowest samples (local
/// minima of `|f|`) of a trajectory, deduplicated to `1e-8`.
pub fn equilibria_from_trajectory<F: VectorField>(field: &F, traj: &Trajectory) -> Vec<Vec3> {
    let speed = |s: &Sample| {
        let f = field.eval(&s.state());
        (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt()
    };
    let speeds: Vec<f64> = traj.samples.iter().map(speed).collect();
    let mut found: Vec<Vec3> = Vec::new();
    for i in 1..speeds.len().saturating_sub(1) {
        if !(speeds[i] <= speeds[i - 1] && speeds[i] < speeds[i + 1]) {
            continue;
        }
        if let Some(eq) = newton_equilibrium(field, &traj.samples[i].state()) {
            let dup = found.iter().any(|e| e.iter().zip(&eq).all(|(p, q)| (p - q).abs() < 1e-8));
            if !dup {
                found.push(eq);
            }
        }
    }
    found
}
