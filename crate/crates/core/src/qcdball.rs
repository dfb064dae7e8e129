//! QCD-ball (dense quark nugget) mass scaling, stability and formation radius.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallParams {
    /// Prefactor of `M_B = μ·B^{8/9}`.
    pub mu: f64,
    /// Nucleon mass.
    pub m_n: f64,
    /// Axion domain-wall tension.
    pub sigma: f64,
    pub c_tilde: f64,
    /// Experimental minimum critical charge.
    pub b_c_exp: f64,
    /// Lower edge of the metastable band, the "`1 ≪ B`" threshold.
    pub b_soft: f64,
}

impl Default for BallParams {
    fn default() -> Self {
        let m_n = 1.0;
        let b_c_exp = 1e20;
        Self { mu: mu_for_critical_charge(b_c_exp, m_n), m_n, sigma: 1.0, c_tilde: 0.7, b_c_exp, b_soft: 1e3 }
    }
}

/// Prefactor `μ = (9/8)·m_N·B_c^{1/9}` that puts the critical charge at `b_c`.
pub fn mu_for_critical_charge(b_c: f64, m_n: f64) -> f64 {
    9.0 / 8.0 * m_n * b_c.powf(1.0 / 9.0)
}

impl BallParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("mu", self.mu),
            ("m_n", self.m_n),
            ("sigma", self.sigma),
            ("c_tilde", self.c_tilde),
            ("b_c_exp", self.b_c_exp),
            ("b_soft", self.b_soft),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!("{name} must be positive and finite")));
            }
        }
        if self.c_tilde > 1.0 {
            return Err(Error::Validation("c_tilde must lie in (0, 1]".into()));
        }
        Ok(())
    }
}

fn check_charge(b: f64) -> Result<()> {
    if b >= 1.0 && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("baryon charge must be >= 1, got {b}")))
    }
}

pub fn ball_mass(b: f64, bp: &BallParams) -> Result<f64> {
    check_charge(b)?;
    Ok(bp.mu * b.powf(8.0 / 9.0))
}

/// Marginal mass cost of one more unit of charge, `(8/9)·μ·B^{−1/9}`.
pub fn ball_mass_slope(b: f64, bp: &BallParams) -> Result<f64> {
    check_charge(b)?;
    Ok(8.0 / 9.0 * bp.mu * b.powf(-1.0 / 9.0))
}

/// Charge where `∂M_B/∂B = m_N`, i.e. `((8μ)/(9m_N))⁹`, never below one.
pub fn critical_charge(bp: &BallParams) -> f64 {
    (8.0 * bp.mu / (9.0 * bp.m_n)).powi(9).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    AbsolutelyStable,
    Metastable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::AbsolutelyStable => "absolutely_stable",
            Stability::Metastable => "metastable",
            Stability::Unstable => "unstable",
        })
    }
}

/// Absolutely stable above the critical charge when `m_N > ∂M_B/∂B`;
/// metastable in `b_soft ≤ B < B_c`; unstable otherwise. Both stable classes
/// need `B ≥ b_soft`.
pub fn stability_class(b: f64, bp: &BallParams) -> Result<Stability> {
    let slope = ball_mass_slope(b, bp)?;
    let b_crit = critical_charge(bp);
    Ok(if b >= b_crit && b >= bp.b_soft && bp.m_n > slope {
        Stability::AbsolutelyStable
    } else if b >= bp.b_soft && b < b_crit {
        Stability::Metastable
    } else {
        Stability::Unstable
    })
}

/// Formation radius `R₀ = (c̃·B^{4/3}/(8πσ))^{1/3}`.
pub fn ball_radius(b: f64, bp: &BallParams) -> Result<f64> {
    check_charge(b)?;
    if !(bp.sigma > 0.0) {
        return Err(Error::Domain(format!("wall tension must be positive, got {}", bp.sigma)));
    }
    Ok((bp.c_tilde * b.powf(4.0 / 3.0) / (8.0 * PI * bp.sigma)).cbrt())
}

/// Wall tension that gives radius `r0` at charge `b`.
pub fn tension_for_radius(b: f64, r0: f64, c_tilde: f64) -> Result<f64> {
    check_charge(b)?;
    if !(r0 > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r0}")));
    }
    Ok(c_tilde * b.powf(4.0 / 3.0) / (8.0 * PI * r0 * r0 * r0))
}

/// `2σ/R − (−Ω/V)`: wall pressure minus Fermi pressure, zero at balance.
pub fn pressure_balance_residual(r: f64, sigma: f64, omega: f64, volume: f64) -> Result<f64> {
    if !(r > 0.0) || !(volume > 0.0) {
        return Err(Error::Domain("radius and volume must be positive".into()));
    }
    Ok(2.0 * sigma / r - (-omega / volume))
}

/// Radius at which the pressures balance, `2σV/(−Ω)`.
pub fn balance_radius(sigma: f64, omega: f64, volume: f64) -> Result<f64> {
    if !(omega < 0.0) {
        return Err(Error::Domain("balance needs a negative thermodynamic potential".into()));
    }
    Ok(2.0 * sigma * volume / -omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn with_mu(mu: f64, m_n: f64) -> BallParams {
        BallParams { mu, m_n, ..Default::default() }
    }

    #[test]
    fn mass_examples() {
        let bp = with_mu(1.0, 1.0);
        assert_eq!(ball_mass(1.0, &bp).unwrap(), 1.0);
        assert!((ball_mass(512.0, &bp).unwrap() - 256.0).abs() < 1e-12);
        // 10^(33·8/9), mpmath
        let m = ball_mass(1e33, &bp).unwrap();
        assert!((m - 2.154_434_690_031_883_7e29).abs() <= 1e-13 * m);
        assert!(matches!(ball_mass(0.5, &bp), Err(Error::Domain(_))));
    }

    #[test]
    fn stability_examples() {
        let bp = with_mu(1.0, 1.0);
        assert_eq!(stability_class(1.0, &bp).unwrap(), Stability::Unstable);

        let bp = BallParams { mu: mu_for_critical_charge(1e20, 1.0), m_n: 1.0, ..Default::default() };
        assert!(((critical_charge(&bp) - 1e20) / 1e20).abs() < 1e-12);
        assert_eq!(stability_class(1e5, &bp).unwrap(), Stability::Metastable);
        assert_eq!(stability_class(1e21, &bp).unwrap(), Stability::AbsolutelyStable);
        assert_eq!(stability_class(10.0, &bp).unwrap(), Stability::Unstable);
        assert!(stability_class(0.0, &bp).is_err());
    }

    #[test]
    fn critical_charge_examples() {
        assert_eq!(critical_charge(&with_mu(9.0 / 8.0 * 3.0, 3.0)), 1.0);
        assert_eq!(critical_charge(&with_mu(0.1, 1.0)), 1.0);
        let bp = with_mu(9.0 / 8.0 * 10f64.powf(20.0 / 9.0), 1.0);
        assert!(((critical_charge(&bp) - 1e20) / 1e20).abs() < 1e-13);
    }

    #[test]
    fn slope_at_critical_charge_matches_finite_difference() {
        let bp = BallParams::default();
        let bc = critical_charge(&bp);
        let h = bc * 1e-6;
        let fd = (ball_mass(bc + h, &bp).unwrap() - ball_mass(bc - h, &bp).unwrap()) / (2.0 * h);
        assert!(((fd - bp.m_n) / bp.m_n).abs() < 1e-9);
    }

    #[test]
    fn radius_examples() {
        let bp = BallParams { c_tilde: 1.0, sigma: 1.0 / (8.0 * PI), ..Default::default() };
        assert!((ball_radius(1.0, &bp).unwrap() - 1.0).abs() < 1e-15);
        let ratio = ball_radius(16.0 * 7.0, &bp).unwrap() / ball_radius(7.0, &bp).unwrap();
        assert!((ratio - 3.428_975_931_412_291).abs() < 1e-13);

        let sigma = tension_for_radius(1e33, 1.0, 0.7).unwrap();
        assert!(((sigma - 2.785_211_504_108_168e42) / sigma).abs() < 1e-13);
        let bp = BallParams { c_tilde: 0.7, sigma, ..Default::default() };
        assert!((ball_radius(1e33, &bp).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pressure_balance_examples() {
        assert_eq!(pressure_balance_residual(1.0, 1.0, -2.0, 1.0).unwrap(), 0.0);
        assert_eq!(pressure_balance_residual(2.0, 1.0, -2.0, 1.0).unwrap(), -1.0);
        let (sigma, omega, volume) = (0.37, -4.2, 1.9);
        let r = balance_radius(sigma, omega, volume).unwrap();
        assert!(pressure_balance_residual(r, sigma, omega, volume).unwrap().abs() < 1e-12);
        assert!(pressure_balance_residual(0.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn validation() {
        BallParams::default().validate().unwrap();
        assert!(BallParams { c_tilde: 1.5, ..Default::default() }.validate().is_err());
        assert!(BallParams { sigma: 0.0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn mass_is_increasing_and_concave() {
        let bp = BallParams::default();
        let mut prev_slope = f64::INFINITY;
        for i in 0..200 {
            let b = 10f64.powf(0.2 * i as f64);
            let h = b * 1e-4;
            let lo = ball_mass(b.max(1.0 + h) - h, &bp).unwrap();
            let hi = ball_mass(b.max(1.0 + h) + h, &bp).unwrap();
            let slope = (hi - lo) / (2.0 * h);
            assert!(slope > 0.0);
            assert!(slope < prev_slope);
            prev_slope = slope;
        }
    }

    proptest! {
        #[test]
        fn ball_is_lighter_than_free_nucleons(log_b in 0.0f64..40.0, frac in 0.01f64..1.0) {
            let bp = BallParams { mu: frac, m_n: 1.0, ..Default::default() };
            let b = 10f64.powf(log_b);
            let m = ball_mass(b, &bp).unwrap();
            prop_assert!(m <= bp.m_n * b);
            if b > 1.0 {
                prop_assert!(m < bp.m_n * b);
            }
        }

        #[test]
        fn stability_flips_at_critical_charge(log_bc in 4.0f64..30.0) {
            let bc_target = 10f64.powf(log_bc);
            let bp = BallParams { mu: mu_for_critical_charge(bc_target, 1.0), m_n: 1.0, ..Default::default() };
            let bc = critical_charge(&bp);
            prop_assert_eq!(stability_class(bc * (1.0 - 1e-6), &bp).unwrap(), Stability::Metastable);
            prop_assert_eq!(stability_class(bc * (1.0 + 1e-6), &bp).unwrap(), Stability::AbsolutelyStable);
        }
    }
}
