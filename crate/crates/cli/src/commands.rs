//! One function per subcommand. Each turns a single-cell configuration into
//! its output artifacts; sweeping and file handling live elsewhere.

use std::fmt;
use std::str::FromStr;

use nucleosim_core::baryogenesis::{eta, in_bbn_window, AsymmetryInput};
use nucleosim_core::export::{fmt_f64, Table};
use nucleosim_core::inflation::{integrate_eom_with, EndCondition, EomOptions};
use nucleosim_core::nucleation::{nucleation_scales, pair_energy_thin_wall};
use nucleosim_core::ode::Tolerances;
use nucleosim_core::potentials::{v1, v2, v3};
use nucleosim_core::qcdball::{ball_mass, ball_mass_slope, ball_radius, stability_class};
use nucleosim_core::solitons::{
    kink_energy, kink_profile, kink_wavenumber, pair_profile, profile_energy, profile_energy_with,
    topological_charge, Grid1d, Winding,
};
use nucleosim_core::potentials::sine_gordon;
use nucleosim_core::nucleation::dilaton_radius;
use nucleosim_core::vacua::{bracket_terms, calibration_field_range, gap_calibrate, vacuum_pair_with_grid, CalibrationSearch};
use nucleosim_core::ModelParams;

use crate::config::{default_scan_range, RunConfig, MODEL_KEYS};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    PotentialScan,
    Vacua,
    Calibrate,
    Soliton,
    Nucleate,
    Inflate,
    Qcdball,
    Eta,
}

pub const COMMANDS: &[Command] = &[
    Command::PotentialScan,
    Command::Vacua,
    Command::Calibrate,
    Command::Soliton,
    Command::Nucleate,
    Command::Inflate,
    Command::Qcdball,
    Command::Eta,
];

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::PotentialScan => "potential-scan",
            Command::Vacua => "vacua",
            Command::Calibrate => "calibrate",
            Command::Soliton => "soliton",
            Command::Nucleate => "nucleate",
            Command::Inflate => "inflate",
            Command::Qcdball => "qcdball",
            Command::Eta => "eta",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        COMMANDS.iter().copied().find(|c| c.name() == s).ok_or_else(|| format!("unknown subcommand `{s}`"))
    }
}

/// One artifact. `suffix` names a companion file next to the main output.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Csv { suffix: Option<&'static str>, table: Table },
    Text { suffix: Option<&'static str>, text: String },
}

fn csv(table: Table) -> Artifact {
    Artifact::Csv { suffix: None, table }
}

fn companion(suffix: &'static str, table: Table) -> Artifact {
    Artifact::Csv { suffix: Some(suffix), table }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    match cmd {
        Command::PotentialScan => potential_scan(cfg),
        Command::Vacua => vacua(cfg),
        Command::Calibrate => calibrate(cfg),
        Command::Soliton => soliton(cfg),
        Command::Nucleate => nucleate(cfg),
        Command::Inflate => inflate(cfg),
        Command::Qcdball => qcdball(cfg),
        Command::Eta => eta_cmd(cfg),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / last }).collect()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => 10f64.powf(a + (b - a) * i as f64 / last),
        })
        .collect()
}

fn field_range(cfg: &RunConfig, fallback: (f64, f64)) -> (f64, f64) {
    (cfg.real_opt("phi_min").unwrap_or(fallback.0), cfg.real_opt("phi_max").unwrap_or(fallback.1))
}

fn potential_scan(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let p = cfg.model();
    let (lo, hi) = field_range(cfg, default_scan_range(p.phi_star));
    let mut t = Table::new(&["phi", "V1", "V2", "V3"]);
    for phi in linspace(lo, hi, cfg.count("scan_points")) {
        // V2 is undefined past its pole
        let v2 = v2(phi, &p).unwrap_or(f64::NAN);
        t.push_f64(&[phi, v1(phi, &p), v2, v3(phi, &p)]);
    }
    Ok(vec![csv(t)])
}

fn vacua(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let p = cfg.model();
    let range = field_range(cfg, calibration_field_range(p.phi_star));
    let pair = vacuum_pair_with_grid(&p, range, cfg.count("n_grid"))?;
    let b = bracket_terms(&p, &pair);
    let mut t = Table::new(&[
        "phi_t", "phi_f", "v_t", "v_f", "curv_t", "curv_f", "gap", "bracket_a", "bracket_b", "gap_check", "residual",
    ]);
    t.push_f64(&[
        pair.phi_t, pair.phi_f, pair.v_t, pair.v_f, pair.curv_t, pair.curv_f, pair.gap, b.bracket_a, b.bracket_b,
        b.gap_check, b.residual,
    ]);
    Ok(vec![csv(t)])
}

/// Model keys of `p` in config syntax, with full precision.
pub fn model_fixture(p: &ModelParams) -> String {
    let values = [p.m_p, p.m, p.phi_star, p.a_coeff, p.lambda_coupling, p.rho_init, p.drive_amp, p.t_p, p.delta_t, p.regime_k];
    MODEL_KEYS
        .iter()
        .zip(values)
        .map(|(k, v)| format!("{k} = {}\n", fmt_f64(v)))
        .collect()
}

fn calibrate(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let target = cfg.real("target_gap");
    let search = CalibrationSearch {
        m_range: (cfg.real("m_min"), cfg.real("m_max")),
        phi_star_range: (cfg.real("phi_star_min"), cfg.real("phi_star_max")),
        m_cells: cfg.count("m_cells"),
        phi_star_cells: cfg.count("phi_star_cells"),
    };
    let p = gap_calibrate(target, &cfg.model(), &search)?;
    let pair = vacuum_pair_with_grid(&p, calibration_field_range(p.phi_star), cfg.count("n_grid"))?;
    let mut text = format!("# calibrated vacuum gap {} (target {})\n", fmt_f64(pair.gap), fmt_f64(target));
    text.push_str(&model_fixture(&p));
    Ok(vec![Artifact::Text { suffix: None, text }])
}

fn soliton(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let p = cfg.model();
    let kind = cfg.choice("profile");
    let x0 = cfg.real("x0");
    let separation = cfg.real("separation");
    let n = cfg.count("grid_points");
    let default = match kind {
        "pair" => Grid1d::for_separation(separation, &p),
        _ => {
            let g = Grid1d::for_separation(0.0, &p);
            Grid1d { x_min: g.x_min + x0, x_max: g.x_max + x0, ..g }
        }
    };
    let grid = Grid1d::new(
        cfg.real_opt("x_min").unwrap_or(default.x_min),
        cfg.real_opt("x_max").unwrap_or(default.x_max),
        n,
    )?;
    let profile = match kind {
        "kink" => kink_profile(x0, Winding::Kink, &p, grid)?,
        "antikink" => kink_profile(x0, Winding::Antikink, &p, grid)?,
        _ => pair_profile(separation, &p, grid)?,
    };
    let q = topological_charge(&profile);
    let e_grid = profile_energy(&profile, &p)?;
    let e_sg = profile_energy_with(&profile, |phi| sine_gordon(phi, p.m_p))?;
    let mut energies = Table::new(&[
        "profile", "separation", "x0", "k", "e_bps", "e_grid", "e_grid_sg", "charge_endpoint", "charge_gradient",
    ]);
    energies.push(
        std::iter::once(kind.to_string())
            .chain(
                [separation, x0, kink_wavenumber(&p), kink_energy(&p), e_grid, e_sg, q.endpoint, q.gradient]
                    .iter()
                    .map(|v| fmt_f64(*v)),
            )
            .collect(),
    );
    Ok(vec![csv(profile.to_table()), companion("energies", energies)])
}

fn nucleate(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let p = cfg.model();
    let range = field_range(cfg, calibration_field_range(p.phi_star));
    let pair = vacuum_pair_with_grid(&p, range, cfg.count("n_grid"))?;
    let e_kink = kink_energy(&p);
    let phi = cfg.real("dilaton_phi");
    let s = nucleation_scales(cfg.real("fluct_time"), e_kink, pair.gap, phi)?;
    let alpha = dilaton_radius(phi).alpha_gauge;

    let r_max = cfg.real_opt("r_max").unwrap_or(2.0 * 2.0 * e_kink / pair.gap);
    let mut curve = Table::new(&["R", "E_thin"]);
    for r in linspace(0.0, r_max, cfg.count("r_points")) {
        curve.push_f64(&[r, pair_energy_thin_wall(r, e_kink, pair.gap)]);
    }
    let mut scales = Table::new(&["delta_t", "delta_e", "r_star", "lambda_s", "alpha_gauge", "e_kink", "gap"]);
    scales.push_f64(&[s.delta_t, s.delta_e, s.r_star, s.lambda_s, alpha, e_kink, pair.gap]);
    Ok(vec![csv(curve), companion("scales", scales)])
}

fn inflate(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let p = cfg.model();
    let end = match cfg.choice("end_condition") {
        "slow_roll" => EndCondition::SlowRollViolation,
        "field_threshold" => EndCondition::FieldThreshold,
        _ => EndCondition::None,
    };
    let opts = EomOptions { tol: Tolerances { rtol: cfg.real("rtol"), atol: cfg.real("atol") }, end };
    let traj = integrate_eom_with(
        cfg.real("phi0"),
        cfg.real("phidot0"),
        (cfg.real("t_start"), cfg.real("t_end")),
        &p,
        cfg.flag("use_schedule"),
        &opts,
    )?;
    Ok(vec![csv(traj.to_table())])
}

fn qcdball(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let bp = cfg.ball();
    let mut t = Table::new(&["B", "M_B", "dM_dB", "class", "R0"]);
    for b in logspace(cfg.real("b_min"), cfg.real("b_max"), cfg.count("b_points")) {
        t.push(vec![
            fmt_f64(b),
            fmt_f64(ball_mass(b, &bp)?),
            fmt_f64(ball_mass_slope(b, &bp)?),
            stability_class(b, &bp)?.to_string(),
            fmt_f64(ball_radius(b, &bp)?),
        ]);
    }
    Ok(vec![csv(t)])
}

fn eta_cmd(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let input = AsymmetryInput { n_b: cfg.real("n_b"), n_bbar: cfg.real("n_bbar"), s: cfg.real("s") };
    let value = eta(&input)?;
    let mut t = Table::new(&["n_b", "n_bbar", "s", "eta", "in_bbn_window"]);
    let mut row: Vec<String> = [input.n_b, input.n_bbar, input.s, value].iter().map(|v| fmt_f64(*v)).collect();
    row.push(in_bbn_window(value).to_string());
    t.push(row);
    Ok(vec![csv(t)])
}
