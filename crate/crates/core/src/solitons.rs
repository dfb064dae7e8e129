//! Sine-Gordon kinks, antikinks and the kink–antikink (S–S′) pair bounding a
//! nucleated bubble, with their energies and topological charge.
//!
//! The cosine term of `V₁` is `(M_p²/2)(1 − cos φ)`, so static solutions obey
//! `φ'' = (M_p²/2) sin φ` and the kink is `4·atan(exp(k(x − x₀)))` with
//! `k = M_p/√2`. The quadratic tilt has no closed-form kink and is ignored when
//! building profiles; it enters only through [`profile_energy`].

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::export::Table;
use crate::params::ModelParams;
use crate::potentials::{sine_gordon, v1};

pub const MIN_PROFILE_POINTS: usize = 64;
pub const DEFAULT_PROFILE_POINTS: usize = 4096;
/// Default half-margin beyond the outermost kink centre, in kink widths.
pub const DEFAULT_MARGIN_WIDTHS: f64 = 16.0;
/// Largest allowed gap between a profile end and the vacuum it should reach.
pub const BOUNDARY_TOL: f64 = 1e-3;
pub const DEFAULT_SIMPSON_PANELS: usize = 1024;

/// Inverse kink width `M_p/√2`.
pub fn kink_wavenumber(p: &ModelParams) -> f64 {
    p.m_p / SQRT_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1d {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl Grid1d {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Grid(format!("empty grid [{x_min}, {x_max}]")));
        }
        if n < 2 {
            return Err(Error::Grid(format!("grid needs at least 2 points, got {n}")));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Symmetric default grid `±(R/2 + 16/k)` with 4096 points.
    pub fn for_separation(separation: f64, p: &ModelParams) -> Self {
        let half = 0.5 * separation + DEFAULT_MARGIN_WIDTHS / kink_wavenumber(p);
        Self { x_min: -half, x_max: half, n: DEFAULT_PROFILE_POINTS }
    }

    pub fn with_points(self, n: usize) -> Self {
        Self { n, ..self }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.n)
            .map(|i| if i == self.n - 1 { self.x_max } else { self.x_min + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winding {
    Kink,
    Antikink,
}

impl Winding {
    pub fn sign(self) -> f64 {
        match self {
            Winding::Kink => 1.0,
            Winding::Antikink => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Kink,
    Antikink,
    Pair,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileMeta {
    pub kind: ProfileKind,
    pub centers: Vec<f64>,
    /// Kink width `1/k`.
    pub width: f64,
}

/// Field sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldProfile {
    xs: Vec<f64>,
    phis: Vec<f64>,
    meta: ProfileMeta,
}

impl FieldProfile {
    pub fn new(grid: Grid1d, phis: Vec<f64>, meta: ProfileMeta) -> Result<Self> {
        let grid = Grid1d::new(grid.x_min, grid.x_max, grid.n)?;
        if phis.len() != grid.n {
            return Err(Error::Grid(format!("{} field values for {} grid points", phis.len(), grid.n)));
        }
        if let Some(i) = phis.iter().position(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("non-finite field value at node {i}")));
        }
        Ok(Self { xs: grid.nodes(), phis, meta })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn meta(&self) -> &ProfileMeta {
        &self.meta
    }

    pub fn spacing(&self) -> f64 {
        (self.xs[self.xs.len() - 1] - self.xs[0]) / (self.xs.len() - 1) as f64
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["x", "phi"]);
        for (x, phi) in self.xs.iter().zip(&self.phis) {
            t.push_f64(&[*x, *phi]);
        }
        t
    }
}

/// Analytic sine-Gordon kink value at `x`.
pub fn kink_value(x: f64, x0: f64, winding: Winding, k: f64) -> f64 {
    4.0 * (winding.sign() * k * (x - x0)).exp().atan()
}

fn check_points(grid: &Grid1d) -> Result<()> {
    if grid.n < MIN_PROFILE_POINTS {
        return Err(Error::Grid(format!("profiles need at least {MIN_PROFILE_POINTS} points, got {}", grid.n)));
    }
    Ok(())
}

fn check_boundary(phis: &[f64], left: f64, right: f64) -> Result<()> {
    let dl = (phis[0] - left).abs();
    let dr = (phis[phis.len() - 1] - right).abs();
    if dl > BOUNDARY_TOL || dr > BOUNDARY_TOL {
        return Err(Error::Grid(format!(
            "grid too narrow: boundary deviation {:.3e} exceeds {BOUNDARY_TOL:e}",
            dl.max(dr)
        )));
    }
    Ok(())
}

pub fn kink_profile(x0: f64, winding: Winding, p: &ModelParams, grid: Grid1d) -> Result<FieldProfile> {
    let grid = Grid1d::new(grid.x_min, grid.x_max, grid.n)?;
    check_points(&grid)?;
    let k = kink_wavenumber(p);
    if (grid.x_max - grid.x_min) * k < 10.0 {
        return Err(Error::Grid(format!(
            "grid spans {:.3} kink widths, need at least 10",
            (grid.x_max - grid.x_min) * k
        )));
    }
    let phis: Vec<f64> = grid.nodes().iter().map(|&x| kink_value(x, x0, winding, k)).collect();
    let (left, right) = match winding {
        Winding::Kink => (0.0, 2.0 * PI),
        Winding::Antikink => (2.0 * PI, 0.0),
    };
    check_boundary(&phis, left, right)?;
    let kind = match winding {
        Winding::Kink => ProfileKind::Kink,
        Winding::Antikink => ProfileKind::Antikink,
    };
    FieldProfile::new(grid, phis, ProfileMeta { kind, centers: vec![x0], width: 1.0 / k })
}

/// Kink at `−R/2` followed by an antikink at `+R/2`, superposed as
/// `φ_K(x + R/2) − φ_K(x − R/2)`. The plateau between them approaches `2π`
/// with an ansatz error of order `e^{−kR}`.
pub fn pair_profile(separation: f64, p: &ModelParams, grid: Grid1d) -> Result<FieldProfile> {
    if !(separation >= 0.0) || !separation.is_finite() {
        return Err(Error::Domain(format!("pair separation must be non-negative, got {separation}")));
    }
    let grid = Grid1d::new(grid.x_min, grid.x_max, grid.n)?;
    check_points(&grid)?;
    let k = kink_wavenumber(p);
    let half = 0.5 * separation;
    let margin = 5.0 / k;
    if grid.x_min > -half - margin || grid.x_max < half + margin {
        return Err(Error::Grid(format!(
            "grid [{}, {}] does not hold both centres with 5 widths of margin",
            grid.x_min, grid.x_max
        )));
    }
    let phis: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&x| kink_value(x, -half, Winding::Kink, k) - kink_value(x, half, Winding::Kink, k))
        .collect();
    check_boundary(&phis, 0.0, 0.0)?;
    FieldProfile::new(grid, phis, ProfileMeta { kind: ProfileKind::Pair, centers: vec![-half, half], width: 1.0 / k })
}

/// Second-order finite-difference derivative: centred inside, one-sided at the ends.
fn gradient(phis: &[f64], h: f64) -> Vec<f64> {
    let n = phis.len();
    if n < 3 {
        let d = (phis[n - 1] - phis[0]) / h;
        return vec![d; n];
    }
    let mut d = Vec::with_capacity(n);
    d.push((-3.0 * phis[0] + 4.0 * phis[1] - phis[2]) / (2.0 * h));
    for i in 1..n - 1 {
        d.push((phis[i + 1] - phis[i - 1]) / (2.0 * h));
    }
    d.push((3.0 * phis[n - 1] - 4.0 * phis[n - 2] + phis[n - 3]) / (2.0 * h));
    d
}

fn trapezoid(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    let interior: f64 = values[1..n - 1].iter().sum();
    h * (interior + 0.5 * (values[0] + values[n - 1]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologicalCharge {
    /// `(φ(x_max) − φ(x_min))/2π`
    pub endpoint: f64,
    /// `(1/2π)∫φ′dx` on the grid, for diagnostics.
    pub gradient: f64,
}

pub fn topological_charge(profile: &FieldProfile) -> TopologicalCharge {
    let phis = profile.phis();
    let endpoint = (phis[phis.len() - 1] - phis[0]) / (2.0 * PI);
    let h = profile.spacing();
    let gradient = trapezoid(&gradient(phis, h), h) / (2.0 * PI);
    TopologicalCharge { endpoint, gradient }
}

/// Composite Simpson rule on `[a, b]` with an even number of panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels + panels % 2;
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}

/// BPS energy of one kink, `∫₀^{2π} √(2V) dφ` for the cosine term (analytically `4√2·M_p`).
pub fn kink_energy(p: &ModelParams) -> f64 {
    kink_energy_with_panels(p, DEFAULT_SIMPSON_PANELS)
}

pub fn kink_energy_with_panels(p: &ModelParams, panels: usize) -> f64 {
    let m_p = p.m_p;
    simpson(|phi| (2.0 * sine_gordon(phi, m_p)).max(0.0).sqrt(), 0.0, 2.0 * PI, panels.max(2))
}

/// Grid energy `∫[φ′²/2 + V₁(φ)]dx` of a profile under the full tilted potential.
pub fn profile_energy(profile: &FieldProfile, p: &ModelParams) -> Result<f64> {
    profile_energy_with(profile, |phi| v1(phi, p))
}

/// Grid energy of a profile under an arbitrary potential.
pub fn profile_energy_with(profile: &FieldProfile, potential: impl Fn(f64) -> f64) -> Result<f64> {
    let phis = profile.phis();
    if phis.len() < MIN_PROFILE_POINTS {
        return Err(Error::Grid(format!(
            "energy needs at least {MIN_PROFILE_POINTS} points, got {}",
            phis.len()
        )));
    }
    let h = profile.spacing();
    let density: Vec<f64> = gradient(phis, h)
        .iter()
        .zip(phis)
        .map(|(d, &phi)| 0.5 * d * d + potential(phi))
        .collect();
    Ok(trapezoid(&density, h))
}
