//! Chaotic-inflation analytics and the homogeneous inflaton field equations
//! in a flat FRW background:
//!
//! ```text
//! φ̈ + 3Hφ̇ + V′(φ) = 0,   H² = (8π / 3M_p²)(φ̇²/2 + V),   Ṅ = H
//! ```
//!
//! With the schedule enabled the potential follows the regime switches; the
//! field and its velocity are carried continuously across each switch while
//! `V` jumps.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::export::{fmt_f64, Table};
use crate::ode::{self, Control, Tolerances};
use crate::params::ModelParams;
use crate::potentials::{dv_regime, regime_at, v_regime, RegimeTag};

/// Quantum/classical boundary `φ* = (3/16π)^{1/4}·M_p^{3/2}/m^{1/2}`.
pub fn phi_star_analytic(p: &ModelParams) -> f64 {
    (3.0 / (16.0 * PI)).powf(0.25) * p.m_p.powf(1.5) / p.m.sqrt()
}

/// Minimum initial field for 60 e-folds, `√(60/2π)·M_p ≈ 3.1·M_p`.
pub fn chaotic_field_bound(p: &ModelParams) -> f64 {
    (60.0 / (2.0 * PI)).sqrt() * p.m_p
}

/// Strict check `φ₀ > √(60/2π)·M_p`.
pub fn chaotic_bound_check(phi0: f64, p: &ModelParams) -> bool {
    phi0 > chaotic_field_bound(p)
}

/// Slow-roll attractor velocity `−m/√(12πG) = −m·M_p/√(12π)`.
pub fn slow_roll_velocity(p: &ModelParams) -> f64 {
    -p.m * p.m_p / (12.0 * PI).sqrt()
}

/// Linear slow-roll evolution `φ(t) = φ₀ − (m/√(12πG))·t`.
pub fn slow_roll_phi(t: f64, phi0: f64, p: &ModelParams) -> f64 {
    phi0 + slow_roll_velocity(p) * t
}

/// Hubble rate from the Friedmann constraint; negative energy densities are clamped to zero.
pub fn hubble(phidot: f64, potential: f64, p: &ModelParams) -> f64 {
    let rho = 0.5 * phidot * phidot + potential;
    (8.0 * PI / (3.0 * p.m_p * p.m_p) * rho).max(0.0).sqrt()
}

/// First Hubble slow-roll parameter `ε_H = −Ḣ/H² = 3(φ̇²/2)/ρ`.
pub fn epsilon_h(phidot: f64, potential: f64) -> f64 {
    let kinetic = 0.5 * phidot * phidot;
    let rho = kinetic + potential;
    if kinetic == 0.0 {
        0.0
    } else if rho > 0.0 {
        3.0 * kinetic / rho
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndCondition {
    /// Run to the end of the time span.
    None,
    /// Stop when `ε_H ≥ 1`.
    #[default]
    SlowRollViolation,
    /// Stop when `φ < M_p/√(4π)`.
    FieldThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EomOptions {
    pub tol: Tolerances,
    pub end: EndCondition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    EndOfSpan,
    SlowRollViolated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub phi: f64,
    pub phidot: f64,
    pub hubble: f64,
    pub efolds: f64,
    pub regime: RegimeTag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
    pub terminated_by: Termination,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryRow {
        // Trajectories always hold the initial row.
        &self.rows[self.rows.len() - 1]
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["t", "phi", "phidot", "H", "N", "regime"]);
        for r in &self.rows {
            t.push(vec![
                fmt_f64(r.t),
                fmt_f64(r.phi),
                fmt_f64(r.phidot),
                fmt_f64(r.hubble),
                fmt_f64(r.efolds),
                r.regime.to_string(),
            ]);
        }
        t
    }
}

/// Final e-fold count of a trajectory.
pub fn efolds(traj: &Trajectory) -> f64 {
    traj.last().efolds
}

/// Potential regime used for the field equations at time `t`.
fn active_regime(t: f64, p: &ModelParams, use_schedule: bool) -> RegimeTag {
    if use_schedule {
        regime_at(t, p)
    } else {
        RegimeTag::Regime3
    }
}

fn end_reached(end: EndCondition, y: &[f64; 3], regime: RegimeTag, p: &ModelParams) -> Result<bool> {
    Ok(match end {
        EndCondition::None => false,
        EndCondition::SlowRollViolation => epsilon_h(y[1], v_regime(regime, y[0], p)?) >= 1.0,
        EndCondition::FieldThreshold => y[0] < p.m_p / (4.0 * PI).sqrt(),
    })
}

/// Time windows of constant potential regime inside `(t0, t1)`.
fn segments(t0: f64, t1: f64, p: &ModelParams, use_schedule: bool) -> Vec<(f64, f64, RegimeTag)> {
    let mut cuts = vec![t0];
    if use_schedule {
        for b in [p.t_p, p.regime3_onset()] {
            if b > t0 && b < t1 {
                cuts.push(b);
            }
        }
    }
    cuts.push(t1);
    cuts.windows(2)
        .map(|w| (w[0], w[1], active_regime(0.5 * (w[0] + w[1]), p, use_schedule)))
        .collect()
}

/// Integrates the inflaton from `(φ₀, φ̇₀)` over `t_span` with the default
/// tolerances (`rtol = 1e-8`, `atol = 1e-10`) and the `ε_H ≥ 1` stop rule.
pub fn integrate_eom(phi0: f64, phidot0: f64, t_span: (f64, f64), p: &ModelParams, use_schedule: bool) -> Result<Trajectory> {
    integrate_eom_with(phi0, phidot0, t_span, p, use_schedule, &EomOptions::default())
}

pub fn integrate_eom_with(
    phi0: f64,
    phidot0: f64,
    t_span: (f64, f64),
    p: &ModelParams,
    use_schedule: bool,
    opts: &EomOptions,
) -> Result<Trajectory> {
    let (t0, t1) = t_span;
    if !(t0 >= 0.0) || !(t1 > t0) || !t1.is_finite() {
        return Err(Error::Domain(format!("invalid time span [{t0}, {t1}]")));
    }
    if !phi0.is_finite() || !phidot0.is_finite() {
        return Err(Error::Domain("initial field and velocity must be finite".into()));
    }
    let start_regime = active_regime(t0, p, use_schedule);
    let v0 = v_regime(start_regime, phi0, p)?;
    if 0.5 * phidot0 * phidot0 + v0 < 0.0 {
        return Err(Error::Domain("initial energy density is negative".into()));
    }

    let row = |t: f64, y: &[f64; 3]| -> Result<TrajectoryRow> {
        let v = v_regime(active_regime(t, p, use_schedule), y[0], p)?;
        Ok(TrajectoryRow { t, phi: y[0], phidot: y[1], hubble: hubble(y[1], v, p), efolds: y[2], regime: regime_at(t, p) })
    };

    let mut rows = vec![row(t0, &[phi0, phidot0, 0.0])?];
    let mut y = [phi0, phidot0, 0.0];
    let mut h_next = None;

    for (a, b, regime) in segments(t0, t1, p, use_schedule) {
        let rhs = move |_t: f64, y: &[f64; 3]| -> Result<[f64; 3]> {
            let v = v_regime(regime, y[0], p)?;
            let dv = dv_regime(regime, y[0], p)?;
            let h = hubble(y[1], v, p);
            Ok([y[1], -3.0 * h * y[1] - dv, h])
        };
        let mut stopped = false;
        let mut step_error = None;
        let (_, y_end, h) = ode::integrate(&rhs, a, y, b, &opts.tol, h_next, |ta, ya, tb, yb| {
            if end_reached(opts.end, yb, regime, p)? {
                let (t_event, y_event) = locate_event(&rhs, ta, ya, tb, opts.end, regime, p)?;
                rows.push(row(t_event, &y_event)?);
                stopped = true;
                return Ok(Control::Stop);
            }
            match row(tb, yb) {
                Ok(r) => rows.push(r),
                Err(e) => step_error = Some(e),
            }
            Ok(if step_error.is_some() { Control::Stop } else { Control::Continue })
        })?;
        if let Some(e) = step_error {
            return Err(e);
        }
        if stopped {
            return Ok(Trajectory { rows, terminated_by: Termination::SlowRollViolated });
        }
        y = y_end;
        h_next = Some(h);
    }
    Ok(Trajectory { rows, terminated_by: Termination::EndOfSpan })
}

/// Bisection on the sub-step length for the first point inside `[ta, tb]`
/// where the end condition holds.
fn locate_event<F>(
    rhs: &F,
    ta: f64,
    ya: &[f64; 3],
    tb: f64,
    end: EndCondition,
    regime: RegimeTag,
    p: &ModelParams,
) -> Result<(f64, [f64; 3])>
where
    F: Fn(f64, &[f64; 3]) -> Result<[f64; 3]>,
{
    let h = tb - ta;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut y_hi = ode::dp_step(rhs, ta, ya, h)?.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let y_mid = ode::dp_step(rhs, ta, ya, mid * h)?.0;
        if end_reached(end, &y_mid, regime, p)? {
            hi = mid;
            y_hi = y_mid;
        } else {
            lo = mid;
        }
    }
    let t_event = if hi >= 1.0 { tb } else { ta + hi * h };
    Ok((t_event.max(ta + f64::EPSILON * ta.abs().max(1.0)).min(tb), y_hi))
}
