//! Thin-wall energetics of a nucleated kink–antikink pair in one spatial
//! dimension, Heisenberg time/energy scales and the dilaton radius relation.
//!
//! Units: `ħ = 1`, `l_p = 1`.

use crate::error::{Error, Result};
use crate::vacua::DEGENERATE_GAP;

/// Energy of a pair separated by `r`: two walls minus the gap released over the
/// enclosed true-vacuum segment, `2·E_kink − gap·r`.
pub fn pair_energy_thin_wall(r: f64, e_kink: f64, gap: f64) -> f64 {
    2.0 * e_kink - gap * r
}

/// Separation at which the pair energy falls to `budget`. Larger separations
/// are energetically allowed.
pub fn critical_separation(e_kink: f64, gap: f64, budget: f64) -> Result<f64> {
    if !(gap > DEGENERATE_GAP) {
        return Err(Error::Degenerate { gap });
    }
    let deficit = 2.0 * e_kink - budget;
    Ok(if deficit > 0.0 { deficit / gap } else { 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergScales {
    pub delta_t: f64,
    pub delta_e: f64,
}

/// Fluctuation energy allowed for a time `delta_t`, with `Δt·ΔE = ħ = 1`.
///
/// `ΔE` is the double nearest `1/Δt` whose floating-point product with `Δt`
/// is exactly one. Roughly one `Δt` in seventeen has no such partner (the
/// rounding interval around one contains no representable multiple); there the
/// correctly rounded reciprocal is returned and the product is off by one ulp.
pub fn heisenberg_scales(delta_t: f64) -> Result<HeisenbergScales> {
    if !(delta_t > 0.0) || !delta_t.is_finite() {
        return Err(Error::Domain(format!("fluctuation time must be positive, got {delta_t}")));
    }
    let reciprocal = 1.0 / delta_t;
    let delta_e = exact_reciprocal(delta_t).unwrap_or(reciprocal);
    Ok(HeisenbergScales { delta_t, delta_e })
}

fn next_toward(x: f64, up: bool) -> f64 {
    let bits = x.to_bits();
    // x is positive and finite here
    f64::from_bits(if up { bits + 1 } else { bits - 1 })
}

/// Searches a few ulps around `1/x` for `d` with `x·d == 1` in floating point.
fn exact_reciprocal(x: f64) -> Option<f64> {
    let r = 1.0 / x;
    if !(r.is_normal()) {
        return None;
    }
    if x * r == 1.0 {
        return Some(r);
    }
    let (mut up, mut down) = (r, r);
    for _ in 0..4 {
        up = next_toward(up, true);
        down = next_toward(down, false);
        if x * down == 1.0 {
            return Some(down);
        }
        if x * up == 1.0 {
            return Some(up);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilatonRadius {
    /// Gauge coupling `α = e^φ`.
    pub alpha_gauge: f64,
    /// String length `λ_s ≈ l_p·e^{−φ/2}`.
    pub lambda_s: f64,
}

/// Dilaton relation `l_p²/λ_s² = α = e^φ` with `l_p = 1`.
///
/// `λ_s` is the double nearest `e^{−φ/2}` for which `1/(λ_s·λ_s)` rounds to
/// `α` exactly. Squaring skips about half of all doubles, so for many `φ` no
/// such length exists; the correctly rounded `e^{−φ/2}` is used there.
pub fn dilaton_radius(phi: f64) -> DilatonRadius {
    let alpha_gauge = phi.exp();
    let nearest = (-0.5 * phi).exp();
    let lambda_s = exact_inverse_sqrt(alpha_gauge, nearest).unwrap_or(nearest);
    DilatonRadius { alpha_gauge, lambda_s }
}

fn exact_inverse_sqrt(alpha: f64, guess: f64) -> Option<f64> {
    if !guess.is_normal() || !alpha.is_normal() {
        return None;
    }
    let hits = |l: f64| 1.0 / (l * l) == alpha;
    if hits(guess) {
        return Some(guess);
    }
    let (mut up, mut down) = (guess, guess);
    for _ in 0..4 {
        up = next_toward(up, true);
        down = next_toward(down, false);
        if hits(down) {
            return Some(down);
        }
        if hits(up) {
            return Some(up);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NucleationScales {
    pub delta_t: f64,
    pub delta_e: f64,
    pub r_star: f64,
    pub lambda_s: f64,
}

/// Combines the Heisenberg budget for `delta_t`, the thin-wall critical
/// separation and the dilaton length at field value `phi`.
pub fn nucleation_scales(delta_t: f64, e_kink: f64, gap: f64, phi: f64) -> Result<NucleationScales> {
    let h = heisenberg_scales(delta_t)?;
    let r_star = critical_separation(e_kink, gap, h.delta_e)?;
    Ok(NucleationScales { delta_t: h.delta_t, delta_e: h.delta_e, r_star, lambda_s: dilaton_radius(phi).lambda_s })
}
