//! The three regime potentials, their derivatives, the brane-world parent
//! potential and the time schedule that switches between them.
//!
//! Regime 1 (`t ≤ t_p`) is a tilted sine-Gordon well
//! `V₁(φ) = (M_p²/2)(1 − cos φ) + (m²/2)(φ − φ*)²`, optionally driven by a small
//! linear term. Regime 2 is the rational barrier `V₂ = (m²φ²/2)/(1 + Aφ³)` and
//! regime 3 the chaotic-inflation quadratic `V₃ = m²φ²/2`. The switch is
//! discontinuous in `V`; no matching is applied.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegimeTag {
    Regime1,
    Regime2,
    Regime3,
}

impl RegimeTag {
    pub fn index(self) -> u8 {
        match self {
            RegimeTag::Regime1 => 1,
            RegimeTag::Regime2 => 2,
            RegimeTag::Regime3 => 3,
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Cosine part of `V₁`, the pure sine-Gordon potential `(M_p²/2)(1 − cos φ)`.
pub fn sine_gordon(phi: f64, m_p: f64) -> f64 {
    0.5 * m_p * m_p * (1.0 - phi.cos())
}

pub fn v1(phi: f64, p: &ModelParams) -> f64 {
    let d = phi - p.phi_star;
    sine_gordon(phi, p.m_p) + 0.5 * p.m * p.m * d * d
}

/// `V₁` shifted by the constant initial energy density.
pub fn v_total(phi: f64, p: &ModelParams) -> f64 {
    p.rho_init + v1(phi, p)
}

/// Brane-world parent potential in `(φ, ψ)`.
pub fn v_brane(phi: f64, psi: f64, p: &ModelParams) -> f64 {
    let radial = psi * psi - p.m_p * p.m_p;
    0.25 * radial * radial + 0.5 * p.lambda_coupling * phi * phi * psi * psi + v1(phi, p)
}

fn regime2_denominator(phi: f64, p: &ModelParams) -> Result<f64> {
    let denominator = 1.0 + p.a_coeff * phi * phi * phi;
    if denominator > 0.0 {
        Ok(denominator)
    } else {
        Err(Error::Pole { phi, denominator })
    }
}

pub fn v2(phi: f64, p: &ModelParams) -> Result<f64> {
    let denominator = regime2_denominator(phi, p)?;
    Ok(0.5 * p.m * p.m * phi * phi / denominator)
}

pub fn v3(phi: f64, p: &ModelParams) -> f64 {
    0.5 * p.m * p.m * phi * phi
}

/// Analytic `∂V/∂φ` of the bare regime potential (`V₁`, `V₂` or `V₃`).
///
/// The regime-1 drive is not included here; see [`dv_effective`].
pub fn dv(regime: RegimeTag, phi: f64, p: &ModelParams) -> Result<f64> {
    let m2 = p.m * p.m;
    match regime {
        RegimeTag::Regime1 => Ok(0.5 * p.m_p * p.m_p * phi.sin() + m2 * (phi - p.phi_star)),
        RegimeTag::Regime2 => {
            let denominator = regime2_denominator(phi, p)?;
            let cubic = p.a_coeff * phi * phi * phi;
            Ok(m2 * phi * (1.0 - 0.5 * cubic) / (denominator * denominator))
        }
        RegimeTag::Regime3 => Ok(m2 * phi),
    }
}

/// Analytic `∂²V₁/∂φ²`.
pub fn d2v1(phi: f64, p: &ModelParams) -> f64 {
    0.5 * p.m_p * p.m_p * phi.cos() + p.m * p.m
}

pub fn regime_at(t: f64, p: &ModelParams) -> RegimeTag {
    if t <= p.t_p {
        RegimeTag::Regime1
    } else if t < p.regime3_onset() {
        RegimeTag::Regime2
    } else {
        RegimeTag::Regime3
    }
}

/// Potential of a given regime as seen by the field equations. Regime 1
/// carries the initial energy density and the linear drive.
pub fn v_regime(regime: RegimeTag, phi: f64, p: &ModelParams) -> Result<f64> {
    match regime {
        RegimeTag::Regime1 => Ok(v_total(phi, p) + p.drive_amp * phi),
        RegimeTag::Regime2 => v2(phi, p),
        RegimeTag::Regime3 => Ok(v3(phi, p)),
    }
}

/// Derivative of [`v_regime`].
pub fn dv_regime(regime: RegimeTag, phi: f64, p: &ModelParams) -> Result<f64> {
    let bare = dv(regime, phi, p)?;
    Ok(match regime {
        RegimeTag::Regime1 => bare + p.drive_amp,
        _ => bare,
    })
}

/// Scheduled potential at time `t`.
pub fn v_effective(phi: f64, t: f64, p: &ModelParams) -> Result<f64> {
    v_regime(regime_at(t, p), phi, p)
}

pub fn dv_effective(phi: f64, t: f64, p: &ModelParams) -> Result<f64> {
    dv_regime(regime_at(t, p), phi, p)
}
