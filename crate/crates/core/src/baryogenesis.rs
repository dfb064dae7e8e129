//! Baryon asymmetry `η = (n_b − n_b̄)/s` and the nucleosynthesis window.

use crate::error::{Error, Result};

pub const BBN_LOWER: f64 = 2e-10;
pub const BBN_UPPER: f64 = 7e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryInput {
    pub n_b: f64,
    pub n_bbar: f64,
    /// Entropy density.
    pub s: f64,
}

pub fn eta(input: &AsymmetryInput) -> Result<f64> {
    if !(input.s > 0.0) {
        return Err(Error::Domain(format!("entropy density must be positive, got {}", input.s)));
    }
    if input.n_b < 0.0 || input.n_bbar < 0.0 {
        return Err(Error::Domain("number densities must be non-negative".into()));
    }
    Ok((input.n_b - input.n_bbar) / input.s)
}

/// Open interval `2×10⁻¹⁰ < η < 7×10⁻¹⁰`.
pub fn in_bbn_window(eta: f64) -> bool {
    eta > BBN_LOWER && eta < BBN_UPPER
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(eta(&AsymmetryInput { n_b: 5.0, n_bbar: 5.0, s: 2.0 }).unwrap(), 0.0);
        let e = eta(&AsymmetryInput { n_b: 1.0 + 3e-10, n_bbar: 1.0, s: 1.0 }).unwrap();
        assert!((e - 3e-10).abs() < 1e-16);
        assert!(eta(&AsymmetryInput { n_b: 1.0, n_bbar: 0.0, s: 0.0 }).is_err());
        assert!(eta(&AsymmetryInput { n_b: -1.0, n_bbar: 0.0, s: 1.0 }).is_err());
    }

    #[test]
    fn window() {
        assert!(in_bbn_window(3e-10));
        assert!(!in_bbn_window(1e-10));
        assert!(!in_bbn_window(2e-10));
        assert!(!in_bbn_window(7e-10));
        assert!(!in_bbn_window(-3e-10));
    }

    proptest! {
        #[test]
        fn antisymmetric(n_b in 0.0f64..1e3, n_bbar in 0.0f64..1e3, s in 1e-3f64..1e3) {
            let a = eta(&AsymmetryInput { n_b, n_bbar, s }).unwrap();
            let b = eta(&AsymmetryInput { n_b: n_bbar, n_bbar: n_b, s }).unwrap();
            prop_assert_eq!(a, -b);
        }

        #[test]
        fn scale_invariant(n_b in 0.0f64..1e3, n_bbar in 0.0f64..1e3, s in 1e-3f64..1e3) {
            let a = eta(&AsymmetryInput { n_b, n_bbar, s }).unwrap();
            let b = eta(&AsymmetryInput { n_b: 7.0 * n_b, n_bbar: 7.0 * n_bbar, s: 7.0 * s }).unwrap();
            prop_assert!((a - b).abs() <= 4.0 * f64::EPSILON * (n_b + n_bbar) / s);
        }
    }
}
