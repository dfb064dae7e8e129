use std::f64::consts::PI;

use nucleosim_core::nucleation::{critical_separation, pair_energy_thin_wall};
use nucleosim_core::solitons::{kink_energy, kink_wavenumber, pair_profile, profile_energy, Grid1d};
use nucleosim_core::vacua::vacuum_pair;
use nucleosim_core::ModelParams;

/// Least-squares slope of `ys` against `xs`.
fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

// The bubble interior sits at 2π, so the tilt is centred there.
fn small_tilt() -> ModelParams {
    ModelParams { m: 0.05, phi_star: 2.0 * PI, ..Default::default() }
}

#[test]
fn grid_pair_energy_falls_with_slope_minus_gap() {
    let p = small_tilt();
    let k = kink_wavenumber(&p);
    let gap = vacuum_pair(&p, (-PI, 3.0 * PI)).unwrap().gap;
    let grid = Grid1d::for_separation(30.0 / k, &p).with_points(8192);
    let rs: Vec<f64> = (0..=20).map(|i| (10.0 + i as f64) / k).collect();
    let es: Vec<f64> = rs.iter().map(|&r| profile_energy(&pair_profile(r, &p, grid).unwrap(), &p).unwrap()).collect();
    let slope = fit_slope(&rs, &es);
    assert!(((slope + gap) / gap).abs() < 0.05, "slope {slope}, gap {gap}");
}

#[test]
fn pair_energy_offset_is_two_kinks() {
    let p = small_tilt();
    let k = kink_wavenumber(&p);
    let gap = vacuum_pair(&p, (-PI, 3.0 * PI)).unwrap().gap;
    let grid = Grid1d::for_separation(30.0 / k, &p).with_points(8192);
    let width = grid.x_max - grid.x_min;
    // false vacuum everywhere costs V₁(0)·L
    let background = 0.5 * p.m * p.m * (2.0 * PI) * (2.0 * PI) * width;
    let r = 20.0 / k;
    let e = profile_energy(&pair_profile(r, &p, grid).unwrap(), &p).unwrap() - background;
    let thin = pair_energy_thin_wall(r, kink_energy(&p), gap);
    assert!(((e - thin) / thin).abs() < 0.1, "grid {e}, thin wall {thin}");
}

#[test]
fn critical_separation_round_trip() {
    let p = small_tilt();
    let e = kink_energy(&p);
    let gap = vacuum_pair(&p, (-PI, 3.0 * PI)).unwrap().gap;
    for budget in [0.0, 0.5, 1.0, 2.0] {
        let r = critical_separation(e, gap, budget).unwrap();
        assert!((pair_energy_thin_wall(r, e, gap) - budget).abs() <= 4.0 * f64::EPSILON * 2.0 * e);
    }
}
