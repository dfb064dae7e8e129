//! Dormand–Prince 5(4) embedded Runge–Kutta with adaptive step control.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

// 5th-order weights (same as the last row of A, FSAL).
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];

// 4th-order embedded weights.
const B_HAT: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub const MIN_STEP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10 }
    }
}

/// One Dormand–Prince step. Returns the 5th-order solution and the
/// difference to the embedded 4th-order one.
pub fn dp_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> Result<([f64; N], [f64; N])>
where
    F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let mut k = [[0.0; N]; 7];
    k[0] = f(t, y)?;
    for s in 1..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            let a = A[s][j];
            if a != 0.0 {
                for i in 0..N {
                    ys[i] += h * a * kj[i];
                }
            }
        }
        k[s] = f(t + C[s] * h, &ys)?;
    }
    let mut y_new = *y;
    let mut err = [0.0; N];
    for s in 0..7 {
        for i in 0..N {
            y_new[i] += h * B[s] * k[s][i];
            err[i] += h * (B[s] - B_HAT[s]) * k[s][i];
        }
    }
    Ok((y_new, err))
}

fn error_norm<const N: usize>(y: &[f64; N], y_new: &[f64; N], err: &[f64; N], tol: &Tolerances) -> f64 {
    let sum: f64 = (0..N)
        .map(|i| {
            let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
            (err[i] / scale).powi(2)
        })
        .sum();
    (sum / N as f64).sqrt()
}

/// What to do after an accepted step.
pub enum Control {
    Continue,
    Stop,
}

/// Integrates `y' = f(t, y)` from `t0` to `t1`, calling `on_step(t, y)` after
/// each accepted step with the step's start and end states (the initial point
/// is not reported). Returning [`Control::Stop`] ends the integration after
/// that step. The result is the final time, state and proposed next step.
pub fn integrate<const N: usize, F, S>(
    f: &F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    tol: &Tolerances,
    h_init: Option<f64>,
    mut on_step: S,
) -> Result<(f64, [f64; N], f64)>
where
    F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
    S: FnMut(f64, &[f64; N], f64, &[f64; N]) -> Result<Control>,
{
    let span = t1 - t0;
    if !(span > 0.0) {
        return Ok((t0, y0, 0.0));
    }
    let mut t = t0;
    let mut y = y0;
    let mut h = h_init.unwrap_or_else(|| initial_step(f, t0, &y0, tol).unwrap_or(1e-6 * span)).min(span);

    while t < t1 {
        if h < MIN_STEP {
            return Err(Error::Step { t, h });
        }
        let last = t + h >= t1;
        let step = if last { t1 - t } else { h };
        let (y_new, err) = dp_step(f, t, &y, step)?;
        let norm = error_norm(&y, &y_new, &err, tol);
        if !norm.is_finite() {
            h *= 0.25;
            continue;
        }
        if norm <= 1.0 {
            let t_new = if last { t1 } else { t + step };
            let control = on_step(t, &y, t_new, &y_new)?;
            t = t_new;
            y = y_new;
            let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
            h = step * factor;
            if let Control::Stop = control {
                return Ok((t, y, h));
            }
        } else {
            h = step * (0.9 * norm.powf(-0.2)).clamp(0.1, 1.0);
        }
    }
    Ok((t, y, h))
}

/// Starting step estimate (Hairer, Nørsett & Wanner, II.4).
fn initial_step<const N: usize, F>(f: &F, t0: f64, y0: &[f64; N], tol: &Tolerances) -> Result<f64>
where
    F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let f0 = f(t0, y0)?;
    let scale: Vec<f64> = y0.iter().map(|v| tol.atol + tol.rtol * v.abs()).collect();
    let rms = |v: &[f64]| (v.iter().zip(&scale).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / N as f64).sqrt();
    let d0 = rms(y0);
    let d1 = rms(&f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let mut y1 = *y0;
    for i in 0..N {
        y1[i] += h0 * f0[i];
    }
    let f1 = f(t0 + h0, &y1)?;
    let diff: Vec<f64> = f1.iter().zip(&f0).map(|(a, b)| a - b).collect();
    let d2 = rms(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    Ok((100.0 * h0).min(h1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let f = |_t: f64, y: &[f64; 1]| Ok([-y[0]]);
        let (t, y, _) = integrate(&f, 0.0, [1.0], 5.0, &Tolerances::default(), None, |_, _, _, _| Ok(Control::Continue)).unwrap();
        assert_eq!(t, 5.0);
        assert!((y[0] - (-5.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn harmonic_oscillator_period() {
        let f = |_t: f64, y: &[f64; 2]| Ok([y[1], -y[0]]);
        let tol = Tolerances { rtol: 1e-10, atol: 1e-12 };
        let (_, y, _) = integrate(&f, 0.0, [1.0, 0.0], 2.0 * std::f64::consts::PI, &tol, None, |_, _, _, _| Ok(Control::Continue)).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-8 && y[1].abs() < 1e-8);
    }

    #[test]
    fn fifth_order_convergence() {
        // Single steps on y' = y: local error scales like h^6.
        let f = |_t: f64, y: &[f64; 1]| Ok([y[0]]);
        let e1 = (dp_step(&f, 0.0, &[1.0], 0.2).unwrap().0[0] - 0.2f64.exp()).abs();
        let e2 = (dp_step(&f, 0.0, &[1.0], 0.1).unwrap().0[0] - 0.1f64.exp()).abs();
        let order = (e1 / e2).log2();
        assert!(order > 5.5 && order < 6.5, "observed {order}");
    }

    #[test]
    fn step_underflow_is_reported() {
        // Finite-time blow-up at t = 1.
        let f = |_t: f64, y: &[f64; 1]| Ok([y[0] * y[0]]);
        let r = integrate(&f, 0.0, [1.0], 2.0, &Tolerances::default(), None, |_, _, _, _| Ok(Control::Continue));
        assert!(matches!(r, Err(Error::Step { .. })));
    }

    #[test]
    fn callback_errors_and_stops_propagate() {
        let f = |_t: f64, y: &[f64; 1]| Ok([-y[0]]);
        let mut calls = 0;
        let (t, _, _) = integrate(&f, 0.0, [1.0], 100.0, &Tolerances::default(), None, |_, _, t, _| {
            calls += 1;
            Ok(if t > 1.0 { Control::Stop } else { Control::Continue })
        })
        .unwrap();
        assert!(t > 1.0 && t < 100.0);
        assert!(calls > 1);

        let g = |t: f64, _y: &[f64; 1]| if t > 0.5 { Err(Error::Pole { phi: 0.0, denominator: 0.0 }) } else { Ok([1.0]) };
        let r = integrate(&g, 0.0, [0.0], 1.0, &Tolerances::default(), None, |_, _, _, _| Ok(Control::Continue));
        assert!(matches!(r, Err(Error::Pole { .. })));
    }
}
