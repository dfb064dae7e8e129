//! Model constants in Planck-natural units (`ħ = c = 1`).

use crate::error::{Error, Result};

/// Fraction of the cosine amplitude `M_p²/2` that the linear drive may reach.
pub const MAX_DRIVE_FRACTION: f64 = 0.01;

/// Parameters of the three-regime inflaton model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Planck mass.
    pub m_p: f64,
    /// Inflaton mass; must stay below `m_p`.
    pub m: f64,
    /// Quantum/classical boundary field value, the centre of the quadratic tilt.
    pub phi_star: f64,
    /// Denominator coefficient `A` of the regime-2 potential.
    pub a_coeff: f64,
    /// `φ²ψ²` coupling of the brane-world potential.
    pub lambda_coupling: f64,
    /// Constant initial energy density added to `V₁`.
    pub rho_init: f64,
    /// Amplitude of the linear drive `drive_amp·φ` active in regime 1.
    pub drive_amp: f64,
    /// Planck time; regime 1 lasts until `t_p`.
    pub t_p: f64,
    /// Regime-2 onset offset `δt`.
    pub delta_t: f64,
    /// Regime 3 begins at `t_p + regime_k·δt`.
    pub regime_k: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            m_p: 1.0,
            m: 0.1,
            phi_star: 0.0,
            a_coeff: 1.0,
            lambda_coupling: 1.0,
            rho_init: 0.0,
            drive_amp: 0.0,
            t_p: 1.0,
            delta_t: 0.1,
            regime_k: 10.0,
        }
    }
}

impl ModelParams {
    /// Newton's constant, `1/M_p²`.
    pub fn g_newton(&self) -> f64 {
        1.0 / (self.m_p * self.m_p)
    }

    /// Largest admissible `|drive_amp|`.
    pub fn max_drive(&self) -> f64 {
        MAX_DRIVE_FRACTION * self.m_p * self.m_p / 2.0
    }

    /// Time at which regime 3 starts.
    pub fn regime3_onset(&self) -> f64 {
        self.t_p + self.regime_k * self.delta_t
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m_p", self.m_p),
            ("m", self.m),
            ("phi_star", self.phi_star),
            ("a_coeff", self.a_coeff),
            ("lambda", self.lambda_coupling),
            ("rho_init", self.rho_init),
            ("drive_amp", self.drive_amp),
            ("t_p", self.t_p),
            ("delta_t", self.delta_t),
            ("K", self.regime_k),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Validation(format!("{name} must be finite")));
        }
        let check = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(Error::Validation(msg.into())) };
        check(self.m_p > 0.0, "m_p > 0")?;
        check(self.m > 0.0, "m > 0")?;
        check(self.m < self.m_p, "m < m_p")?;
        check(self.a_coeff >= 0.0, "a_coeff >= 0")?;
        check(self.rho_init >= 0.0, "rho_init >= 0")?;
        check(self.t_p > 0.0, "t_p > 0")?;
        check(self.delta_t > 0.0, "delta_t > 0")?;
        check(self.regime_k > 0.0, "K > 0")?;
        check(
            self.drive_amp.abs() <= self.max_drive(),
            "|drive_amp| <= 0.01 * m_p^2 / 2",
        )?;
        Ok(())
    }
}
