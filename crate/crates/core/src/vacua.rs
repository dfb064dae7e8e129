//! Extrema of the regime-1 potential, the adjacent true/false vacuum pair and
//! the Bogomol'nyi energy gap between them.
//!
//! The gap is reported as a pure number in natural units; its conversion to an
//! inverse length scale is left to the caller since no length scale is fixed.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::potentials::{d2v1, dv, v1, RegimeTag};

pub const DEFAULT_GRID: usize = 4096;
pub const MIN_GRID: usize = 100;
/// Gaps below this are treated as exactly degenerate wells.
pub const DEGENERATE_GAP: f64 = 1e-14;
/// Step of the central difference used to classify extrema.
const CLASSIFY_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub phi: f64,
    pub kind: ExtremumKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumPair {
    pub phi_t: f64,
    pub phi_f: f64,
    pub v_t: f64,
    pub v_f: f64,
    pub curv_t: f64,
    pub curv_f: f64,
    /// `V₁(φ_F) − V₁(φ_T)`; the initial energy density cancels.
    pub gap: f64,
}

/// Absolute bisection tolerance on `dV₁/dφ`.
fn stationarity_tol(p: &ModelParams) -> f64 {
    1e-12 * (p.m_p * p.m_p).max(1.0)
}

fn slope(phi: f64, p: &ModelParams) -> f64 {
    // Regime 1 never fails.
    dv(RegimeTag::Regime1, phi, p).unwrap_or(f64::NAN)
}

/// Bisection on `dV₁` over a bracketing interval. Stops at the tolerance or
/// when the interval can no longer be split in floating point.
fn refine(mut lo: f64, mut hi: f64, mut g_lo: f64, p: &ModelParams) -> f64 {
    let tol = stationarity_tol(p);
    let mut best = (lo, g_lo.abs());
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = slope(mid, p);
        if g_mid.abs() < best.1 {
            best = (mid, g_mid.abs());
        }
        if g_mid.abs() <= tol {
            return mid;
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    let g_hi = slope(hi, p).abs();
    if g_hi < best.1 {
        hi
    } else {
        best.0
    }
}

fn classify(phi: f64, p: &ModelParams) -> Option<ExtremumKind> {
    let h = CLASSIFY_STEP;
    let curvature = (slope(phi + h, p) - slope(phi - h, p)) / (2.0 * h);
    if curvature > 0.0 {
        Some(ExtremumKind::Min)
    } else if curvature < 0.0 {
        Some(ExtremumKind::Max)
    } else {
        None
    }
}

/// Every stationary point of `V₁` in `range`, sorted by field value.
///
/// Sign changes of `dV₁/dφ` on an `n_grid`-point uniform grid are refined by
/// bisection, and each root is classified by the sign of a central-difference
/// second derivative.
pub fn find_extrema(p: &ModelParams, range: (f64, f64), n_grid: usize) -> Result<Vec<Extremum>> {
    let (lo, hi) = range;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("empty field interval [{lo}, {hi}]")));
    }
    if n_grid < MIN_GRID {
        return Err(Error::Grid(format!("extremum scan needs at least {MIN_GRID} points, got {n_grid}")));
    }
    let step = (hi - lo) / (n_grid - 1) as f64;
    let node = |i: usize| if i == n_grid - 1 { hi } else { lo + step * i as f64 };

    let mut roots = Vec::new();
    let mut x_prev = node(0);
    let mut g_prev = slope(x_prev, p);
    if g_prev == 0.0 {
        roots.push(x_prev);
    }
    for i in 1..n_grid {
        let x = node(i);
        let g = slope(x, p);
        if g == 0.0 {
            roots.push(x);
        } else if g_prev != 0.0 && (g < 0.0) != (g_prev < 0.0) {
            roots.push(refine(x_prev, x, g_prev, p));
        }
        x_prev = x;
        g_prev = g;
    }

    let extrema: Vec<Extremum> = roots
        .into_iter()
        .filter_map(|phi| classify(phi, p).map(|kind| Extremum { phi, kind }))
        .collect();
    if extrema.is_empty() {
        return Err(Error::NoExtremum { lo, hi });
    }
    Ok(extrema)
}

pub fn vacuum_pair(p: &ModelParams, range: (f64, f64)) -> Result<VacuumPair> {
    vacuum_pair_with_grid(p, range, DEFAULT_GRID)
}

/// Picks, among neighbouring minima, the pair separated by the highest
/// intervening maximum and labels the lower one as the true vacuum.
pub fn vacuum_pair_with_grid(p: &ModelParams, range: (f64, f64), n_grid: usize) -> Result<VacuumPair> {
    let extrema = find_extrema(p, range, n_grid)?;
    let minima: Vec<f64> = extrema
        .iter()
        .filter(|e| e.kind == ExtremumKind::Min)
        .map(|e| e.phi)
        .collect();
    if minima.len() < 2 {
        return Err(Error::NoVacuumPair { found: minima.len() });
    }

    let mut best: Option<(f64, f64, f64)> = None;
    for w in minima.windows(2) {
        let (a, b) = (w[0], w[1]);
        let barrier = extrema
            .iter()
            .filter(|e| e.kind == ExtremumKind::Max && e.phi > a && e.phi < b)
            .map(|e| v1(e.phi, p))
            .fold(f64::NEG_INFINITY, f64::max);
        if barrier.is_finite() && best.map_or(true, |(_, _, top)| barrier > top) {
            best = Some((a, b, barrier));
        }
    }
    let (a, b, _) = best.ok_or(Error::NoVacuumPair { found: minima.len() })?;

    let (phi_t, phi_f) = if v1(a, p) <= v1(b, p) { (a, b) } else { (b, a) };
    let v_t = v1(phi_t, p);
    let v_f = v1(phi_f, p);
    let gap = v_f - v_t;
    if gap < DEGENERATE_GAP {
        return Err(Error::Degenerate { gap });
    }
    Ok(VacuumPair {
        phi_t,
        phi_f,
        v_t,
        v_f,
        curv_t: d2v1(phi_t, p),
        curv_f: d2v1(phi_f, p),
        gap,
    })
}

/// Field window holding the well at `φ*` and its neighbour one period above.
pub fn calibration_field_range(phi_star: f64) -> (f64, f64) {
    (phi_star - PI, phi_star + 3.0 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationSearch {
    pub m_range: (f64, f64),
    pub phi_star_range: (f64, f64),
    pub m_cells: usize,
    pub phi_star_cells: usize,
}

impl Default for CalibrationSearch {
    fn default() -> Self {
        Self { m_range: (0.01, 0.5), phi_star_range: (0.0, 0.0), m_cells: 64, phi_star_cells: 1 }
    }
}

/// Accepted distance between the calibrated gap and its target.
pub const CALIBRATION_TOL: f64 = 1e-6;

fn gap_at(m: f64, phi_star: f64, template: &ModelParams) -> Option<f64> {
    let p = ModelParams { m, phi_star, ..*template };
    vacuum_pair(&p, calibration_field_range(phi_star)).ok().map(|pair| pair.gap)
}

fn linspace(range: (f64, f64), cells: usize) -> Vec<f64> {
    let (lo, hi) = range;
    if cells <= 1 || lo == hi {
        return vec![lo];
    }
    (0..cells)
        .map(|i| if i == cells - 1 { hi } else { lo + (hi - lo) * i as f64 / (cells - 1) as f64 })
        .collect()
}

/// Bisection on `m` at fixed `φ*` inside a bracketing cell.
fn bisect_m(mut lo: f64, mut hi: f64, phi_star: f64, target: f64, template: &ModelParams) -> Option<(f64, f64)> {
    let mut g_lo = gap_at(lo, phi_star, template)? - target;
    let mut best = (lo, g_lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = gap_at(mid, phi_star, template)? - target;
        if g_mid.abs() < best.1.abs() {
            best = (mid, g_mid);
        }
        if g_mid == 0.0 {
            break;
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    let g_hi = gap_at(hi, phi_star, template)? - target;
    if g_hi.abs() < best.1.abs() {
        best = (hi, g_hi);
    }
    Some((best.0, best.1 + target))
}

/// Finds `(m, φ*)` whose vacuum gap equals `target_gap`.
///
/// Every `φ*` row of the search box is scanned on an `m` grid; the first
/// bracketing cell of each row is refined by bisection on `m`. Among the rows
/// that succeed, the solution with the smallest `m`, then smallest `φ*`, wins.
pub fn gap_calibrate(target_gap: f64, template: &ModelParams, search: &CalibrationSearch) -> Result<ModelParams> {
    if !(target_gap > 0.0) || !target_gap.is_finite() {
        return Err(Error::Calibration(format!("target gap must be positive, got {target_gap}")));
    }
    let (m_lo, m_hi) = search.m_range;
    if !(m_lo > 0.0 && m_lo <= m_hi) {
        return Err(Error::Calibration(format!("invalid m interval [{m_lo}, {m_hi}]")));
    }
    if search.phi_star_range.0 > search.phi_star_range.1 {
        return Err(Error::Calibration("invalid phi_star interval".into()));
    }
    let m_grid = linspace(search.m_range, search.m_cells.max(2));

    let mut found: Option<(f64, f64)> = None;
    for phi_star in linspace(search.phi_star_range, search.phi_star_cells) {
        let gaps: Vec<Option<f64>> = m_grid.iter().map(|&m| gap_at(m, phi_star, template)).collect();
        let hit = (0..m_grid.len()).find_map(|i| {
            let g = gaps[i]?;
            if (g - target_gap).abs() <= CALIBRATION_TOL {
                return Some((m_grid[i], g));
            }
            let g_next = (*gaps.get(i + 1)?)?;
            if (g - target_gap) * (g_next - target_gap) < 0.0 {
                bisect_m(m_grid[i], m_grid[i + 1], phi_star, target_gap, template)
            } else {
                None
            }
        });
        if let Some((m, gap)) = hit {
            if (gap - target_gap).abs() <= CALIBRATION_TOL && found.map_or(true, |(m_best, _)| m < m_best) {
                found = Some((m, phi_star));
            }
        }
    }

    let (m, phi_star) = found.ok_or_else(|| {
        Error::Calibration(format!(
            "no (m, phi_star) in m = [{m_lo}, {m_hi}], phi_star = [{}, {}] reaches gap {target_gap}",
            search.phi_star_range.0, search.phi_star_range.1
        ))
    })?;
    let calibrated = ModelParams { m, phi_star, ..*template };
    calibrated
        .validate()
        .map_err(|e| Error::Calibration(format!("calibrated parameters are invalid: {e}")))?;
    Ok(calibrated)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketTerms {
    /// `M_p² + 2m²`
    pub bracket_a: f64,
    /// `2·M_p²·φ_T·φ_F / 3!`
    pub bracket_b: f64,
    /// `(bracket_a − bracket_b)/2`, the bracket estimate of the gap.
    pub gap_check: f64,
    /// `|gap_check − pair.gap|`, reported for diagnostics only.
    pub residual: f64,
}

pub fn bracket_terms(p: &ModelParams, pair: &VacuumPair) -> BracketTerms {
    let bracket_a = p.m_p * p.m_p + 2.0 * p.m * p.m;
    let bracket_b = 2.0 * p.m_p * p.m_p * pair.phi_t * pair.phi_f / 6.0;
    let gap_check = (bracket_a - bracket_b) / 2.0;
    BracketTerms { bracket_a, bracket_b, gap_check, residual: (gap_check - pair.gap).abs() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn with_m(m: f64) -> ModelParams {
        ModelParams { m, phi_star: 0.0, m_p: 1.0, ..Default::default() }
    }

    /// Plain bisection on `sin(φ)/2 + m²φ` without any tolerance shortcut,
    /// independent of `refine`.
    fn oracle_root(m: f64, mut lo: f64, mut hi: f64) -> f64 {
        let f = |x: f64| 0.5 * x.sin() + m * m * x;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0) == (f(lo) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn near_pure_sine_gordon_extrema() {
        let p = with_m(1e-6);
        let ex = find_extrema(&p, (-PI, 3.0 * PI), DEFAULT_GRID).unwrap();
        let minima: Vec<f64> = ex.iter().filter(|e| e.kind == ExtremumKind::Min).map(|e| e.phi).collect();
        let maxima: Vec<f64> = ex.iter().filter(|e| e.kind == ExtremumKind::Max).map(|e| e.phi).collect();
        assert_eq!(minima.len(), 2);
        assert_eq!(maxima.len(), 1);
        assert!(minima[0].abs() < 1e-9);
        assert!((minima[1] - oracle_root(1e-6, 5.0, 7.0)).abs() < 1e-9);
        assert!((minima[1] - 2.0 * PI).abs() < 1e-9);
        assert!((maxima[0] - oracle_root(1e-6, 2.0, 4.0)).abs() < 1e-9);
        assert!((maxima[0] - PI).abs() < 1e-9);
    }

    #[test]
    fn tilt_shifts_the_upper_well_below_two_pi() {
        let p = with_m(0.2);
        let ex = find_extrema(&p, (PI, 3.0 * PI), DEFAULT_GRID).unwrap();
        let minima: Vec<f64> = ex.iter().filter(|e| e.kind == ExtremumKind::Min).map(|e| e.phi).collect();
        assert_eq!(minima.len(), 1);
        // mpmath oracle: root of sin(φ)/2 + 0.04φ in [3π/2, 2π]
        assert!((minima[0] - 5.800_623_590_828_668).abs() < 1e-10);
        assert!((minima[0] - oracle_root(0.2, 3.0 * PI / 2.0, 2.0 * PI)).abs() < 1e-10);
        assert!(minima[0] < 2.0 * PI);
    }

    #[test]
    fn steep_tilt_has_no_secondary_well() {
        let p = with_m(2.0);
        assert!(matches!(find_extrema(&p, (PI, 3.0 * PI), DEFAULT_GRID), Err(Error::NoExtremum { .. })));
    }

    #[test]
    fn rejects_coarse_grid_and_empty_range() {
        let p = with_m(0.1);
        assert!(matches!(find_extrema(&p, (0.0, 1.0), 99), Err(Error::Grid(_))));
        assert!(matches!(find_extrema(&p, (1.0, 1.0), 200), Err(Error::Domain(_))));
    }

    #[test]
    fn extrema_are_stationary_and_sorted() {
        for m in [0.01, 0.1, 0.2, 0.25] {
            let p = ModelParams { m, phi_star: 0.3, ..Default::default() };
            let ex = find_extrema(&p, (-7.0, 13.0), DEFAULT_GRID).unwrap();
            for e in &ex {
                assert!(dv(RegimeTag::Regime1, e.phi, &p).unwrap().abs() <= 1e-10);
            }
            assert!(ex.windows(2).all(|w| w[0].phi < w[1].phi));
        }
    }

    #[test]
    fn pair_for_moderate_tilt() {
        let pair = vacuum_pair(&with_m(0.15), (-PI, 3.0 * PI)).unwrap();
        assert_eq!(pair.phi_t, 0.0);
        assert!((pair.phi_f - oracle_root(0.15, 3.0 * PI / 2.0, 2.0 * PI)).abs() < 1e-10);
        let oracle_gap = 0.5 * (1.0 - pair.phi_f.cos()) + 0.5 * 0.15 * 0.15 * pair.phi_f * pair.phi_f;
        assert!((pair.gap - oracle_gap).abs() < 1e-14);
        // mpmath oracle at m = 0.15
        assert!((pair.gap - 0.424_892_826_719_095_3).abs() < 1e-12);
        assert!(pair.curv_t > 0.0 && pair.curv_f > 0.0);
    }

    #[test]
    fn gap_vanishes_with_tilt() {
        let g1 = vacuum_pair(&with_m(1e-2), (-PI, 3.0 * PI)).unwrap().gap;
        let g2 = vacuum_pair(&with_m(1e-3), (-PI, 3.0 * PI)).unwrap().gap;
        let g3 = vacuum_pair(&with_m(1e-4), (-PI, 3.0 * PI)).unwrap().gap;
        assert!(g1 > g2 && g2 > g3 && g3 < 1e-6);
        assert!(matches!(vacuum_pair(&with_m(1e-9), (-PI, 3.0 * PI)), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn single_well_is_not_a_pair() {
        assert!(matches!(
            vacuum_pair(&with_m(0.2), (PI, 3.0 * PI)),
            Err(Error::NoVacuumPair { found: 1 })
        ));
    }

    #[test]
    fn highest_barrier_pair_is_chosen() {
        // Three wells near 0, 2π, 4π. Centring the tilt at 2π + 0.5 makes the
        // barrier near π taller than the one near 3π.
        let p = ModelParams { m: 0.05, phi_star: 2.0 * PI + 0.5, ..Default::default() };
        let pair = vacuum_pair(&p, (-1.0, 4.0 * PI + 1.0)).unwrap();
        let ex = find_extrema(&p, (-1.0, 4.0 * PI + 1.0), DEFAULT_GRID).unwrap();
        let maxima: Vec<f64> = ex.iter().filter(|e| e.kind == ExtremumKind::Max).map(|e| e.phi).collect();
        assert_eq!(maxima.len(), 2);
        let (lower_max, upper_max) = (v1(maxima[0], &p), v1(maxima[1], &p));
        assert!(lower_max > upper_max);
        // The pair straddles the lower-φ (higher) barrier.
        assert!(pair.phi_t.min(pair.phi_f) < maxima[0] && pair.phi_t.max(pair.phi_f) > maxima[0]);
    }

    #[test]
    fn gap_grows_with_tilt() {
        let mut last = 0.0;
        for i in 1..=50 {
            let m = 0.005 * i as f64;
            let gap = vacuum_pair(&with_m(m), (-PI, 3.0 * PI)).unwrap().gap;
            assert!(gap >= last, "gap decreased at m = {m}");
            last = gap;
        }
    }

    #[test]
    fn calibration_reaches_target() {
        let p = gap_calibrate(0.373, &ModelParams::default(), &CalibrationSearch::default()).unwrap();
        // Independent mpmath bisection: m* = 0.14015093936188802...
        assert!((p.m - 0.140_150_939_361_888).abs() < 1e-8);
        assert_eq!(p.phi_star, 0.0);
        let gap = vacuum_pair(&p, (-PI, 3.0 * PI)).unwrap().gap;
        assert!((gap - 0.373).abs() <= CALIBRATION_TOL);
    }

    #[test]
    fn calibration_failures() {
        let t = ModelParams::default();
        assert!(matches!(gap_calibrate(0.0, &t, &CalibrationSearch::default()), Err(Error::Calibration(_))));
        let heavy = CalibrationSearch { m_range: (1.0, 2.0), ..Default::default() };
        assert!(matches!(gap_calibrate(0.373, &t, &heavy), Err(Error::Calibration(_))));
    }

    #[test]
    fn calibration_over_phi_star_box_prefers_smallest_m() {
        let search = CalibrationSearch { phi_star_range: (-0.5, 0.5), phi_star_cells: 5, ..Default::default() };
        let p = gap_calibrate(0.373, &ModelParams::default(), &search).unwrap();
        let gap = vacuum_pair(&p, calibration_field_range(p.phi_star)).unwrap().gap;
        assert!((gap - 0.373).abs() <= CALIBRATION_TOL);
        for phi_star in [-0.5, -0.25, 0.0, 0.25, 0.5] {
            let row = CalibrationSearch { phi_star_range: (phi_star, phi_star), ..Default::default() };
            let q = gap_calibrate(0.373, &ModelParams::default(), &row).unwrap();
            assert!(p.m <= q.m);
        }
    }

    #[test]
    fn bracket_examples() {
        let pair = VacuumPair { phi_t: 0.0, phi_f: 6.0, v_t: 0.0, v_f: 0.1, curv_t: 1.0, curv_f: 1.0, gap: 0.1 };
        let p = ModelParams { m: 1e-300, ..Default::default() };
        let b = bracket_terms(&p, &pair);
        assert_eq!((b.bracket_a, b.bracket_b, b.gap_check), (1.0, 0.0, 0.5));

        let pair = VacuumPair { phi_t: 1.0, phi_f: 3.0, ..pair };
        let b = bracket_terms(&with_m(0.1), &pair);
        assert!((b.bracket_a - 1.02).abs() < 1e-15);
        assert_eq!(b.bracket_b, 1.0);
        assert!((b.gap_check - 0.01).abs() < 1e-15);
        assert!((b.residual - 0.09).abs() < 1e-15);
    }

    fn two_well_params() -> impl Strategy<Value = ModelParams> {
        (0.02f64..0.25, -0.5f64..0.5).prop_map(|(m, phi_star)| ModelParams { m, phi_star, ..Default::default() })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn pair_labels_are_ordered(p in two_well_params()) {
            let pair = vacuum_pair(&p, calibration_field_range(p.phi_star)).unwrap();
            prop_assert!(pair.v_t <= pair.v_f);
            prop_assert!(pair.gap >= 0.0);
            prop_assert!(pair.phi_t != pair.phi_f);
            prop_assert!(pair.curv_t > 0.0 && pair.curv_f > 0.0);
            prop_assert!(dv(RegimeTag::Regime1, pair.phi_t, &p).unwrap().abs() <= 1e-10);
            prop_assert!(dv(RegimeTag::Regime1, pair.phi_f, &p).unwrap().abs() <= 1e-10);
        }

        #[test]
        fn extrema_are_deterministic(p in two_well_params()) {
            let a = find_extrema(&p, (-4.0, 10.0), 1000).unwrap();
            let b = find_extrema(&p, (-4.0, 10.0), 1000).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
