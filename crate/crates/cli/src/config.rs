//! `key = value` run configuration with defaults, sweeps and validation.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nucleosim_core::qcdball::{mu_for_critical_charge, BallParams};
use nucleosim_core::solitons::MIN_PROFILE_POINTS;
use nucleosim_core::vacua::MIN_GRID;
use nucleosim_core::ModelParams;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Real,
    Count,
    Flag,
    Choice(&'static [&'static str]),
}

pub struct KeySpec {
    pub name: &'static str,
    pub kind: Kind,
    /// Default in config syntax; `None` means "derived by the command".
    pub default: Option<&'static str>,
}

const fn key(name: &'static str, kind: Kind, default: Option<&'static str>) -> KeySpec {
    KeySpec { name, kind, default }
}

pub const PROFILE_KINDS: &[&str] = &["kink", "antikink", "pair"];
pub const END_CONDITIONS: &[&str] = &["slow_roll", "field_threshold", "none"];

use Kind::{Choice, Count, Flag, Real};

pub const KEYS: &[KeySpec] = &[
    // model
    key("m_p", Real, Some("1")),
    key("m", Real, Some("0.1")),
    key("phi_star", Real, Some("0")),
    key("a_coeff", Real, Some("1")),
    key("lambda", Real, Some("1")),
    key("rho_init", Real, Some("0")),
    key("drive_amp", Real, Some("0")),
    key("t_p", Real, Some("1")),
    key("delta_t", Real, Some("0.1")),
    key("K", Real, Some("10")),
    // QCD ball
    key("mu", Real, None),
    key("m_n", Real, Some("1")),
    key("sigma", Real, Some("1")),
    key("c_tilde", Real, Some("0.7")),
    key("b_c_exp", Real, Some("1e20")),
    key("b_soft", Real, Some("1e3")),
    // potential-scan, vacua
    key("phi_min", Real, None),
    key("phi_max", Real, None),
    key("scan_points", Count, Some("1001")),
    key("n_grid", Count, Some("4096")),
    // calibrate
    key("target_gap", Real, Some("0.373")),
    key("m_min", Real, Some("0.01")),
    key("m_max", Real, Some("0.5")),
    key("phi_star_min", Real, Some("0")),
    key("phi_star_max", Real, Some("0")),
    key("m_cells", Count, Some("64")),
    key("phi_star_cells", Count, Some("1")),
    // soliton
    key("profile", Choice(PROFILE_KINDS), Some("pair")),
    key("x0", Real, Some("0")),
    key("separation", Real, Some("0")),
    key("grid_points", Count, Some("4096")),
    key("x_min", Real, None),
    key("x_max", Real, None),
    // nucleate
    key("fluct_time", Real, Some("1")),
    key("dilaton_phi", Real, Some("6.283185307179586")),
    key("r_max", Real, None),
    key("r_points", Count, Some("101")),
    // inflate
    key("phi0", Real, Some("3.1")),
    key("phidot0", Real, Some("0")),
    key("t_start", Real, Some("0")),
    key("t_end", Real, Some("1e5")),
    key("use_schedule", Flag, Some("false")),
    key("end_condition", Choice(END_CONDITIONS), Some("slow_roll")),
    key("rtol", Real, Some("1e-8")),
    key("atol", Real, Some("1e-10")),
    // qcdball
    key("b_min", Real, Some("1")),
    key("b_max", Real, Some("1e40")),
    key("b_points", Count, Some("81")),
    // eta
    key("n_b", Real, Some("0")),
    key("n_bbar", Real, Some("0")),
    key("s", Real, Some("1")),
    // sweeps
    key("workers", Count, Some("0")),
];

pub const MODEL_KEYS: &[&str] = &["m_p", "m", "phi_star", "a_coeff", "lambda", "rho_init", "drive_amp", "t_p", "delta_t", "K"];

/// Largest accepted count value.
const MAX_COUNT: f64 = 1e8;

pub fn key_spec(name: &str) -> Option<&'static KeySpec> {
    KEYS.iter().find(|k| k.name == name)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(usize),
    Flag(bool),
    Choice(&'static str),
}

fn parse_value(kind: Kind, text: &str) -> Result<Value, String> {
    match kind {
        Real => {
            let v: f64 = text.parse().map_err(|_| format!("`{text}` is not a number"))?;
            if v.is_finite() {
                Ok(Value::Real(v))
            } else {
                Err(format!("`{text}` is not a finite number"))
            }
        }
        Count => {
            let v: f64 = text.parse().map_err(|_| format!("`{text}` is not a count"))?;
            if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= MAX_COUNT {
                Ok(Value::Count(v as usize))
            } else {
                Err(format!("`{text}` is not a non-negative integer below {MAX_COUNT:e}"))
            }
        }
        Flag => match text {
            "true" => Ok(Value::Flag(true)),
            "false" => Ok(Value::Flag(false)),
            _ => Err(format!("`{text}` is not true or false")),
        },
        Choice(options) => options
            .iter()
            .find(|o| **o == text)
            .map(|o| Value::Choice(o))
            .ok_or_else(|| format!("`{text}` is not one of {}", options.join(", "))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub key: &'static str,
    pub values: Vec<f64>,
}

fn parse_sweep(text: &str, log: bool) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("sweep `{text}` must be start:stop:count"));
    }
    let num = |s: &str| -> Result<f64, String> {
        s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("`{s}` is not a finite number"))
    };
    let (start, stop) = (num(parts[0])?, num(parts[1])?);
    let count: usize = parts[2].parse().map_err(|_| format!("`{}` is not a count", parts[2]))?;
    if count == 0 || count as f64 > MAX_COUNT {
        return Err(format!("sweep count must lie in 1..={MAX_COUNT:e}"));
    }
    if log && !(start > 0.0 && stop > 0.0) {
        return Err("logsweep bounds must be positive".into());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                stop
            } else if log {
                (start.ln() + (stop.ln() - start.ln()) * i as f64 / last).exp()
            } else {
                start + (stop - start) * i as f64 / last
            }
        })
        .collect())
}

/// Parsed configuration. Only explicitly set keys are stored; the rest fall
/// back to [`KEYS`] defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<&'static str, Value>,
    pub sweeps: Vec<SweepAxis>,
}

enum Entry {
    Plain(&'static str, Value),
    Sweep(SweepAxis),
}

fn parse_entry(line: &str) -> Result<Option<Entry>, String> {
    let content = line.split('#').next().unwrap_or("").trim();
    if content.is_empty() {
        return Ok(None);
    }
    let (k, v) = content.split_once('=').ok_or("expected `key = value`")?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() || v.is_empty() {
        return Err("expected `key = value`".into());
    }
    let (name, log) = if let Some(rest) = k.strip_prefix("sweep.") {
        (rest, Some(false))
    } else if let Some(rest) = k.strip_prefix("logsweep.") {
        (rest, Some(true))
    } else {
        (k, None)
    };
    let spec = key_spec(name).ok_or_else(|| format!("unknown key `{name}`"))?;
    match log {
        None => Ok(Some(Entry::Plain(spec.name, parse_value(spec.kind, v)?))),
        Some(log) => {
            if spec.kind != Real || spec.name == "workers" {
                return Err(format!("`{name}` cannot be swept"));
            }
            Ok(Some(Entry::Sweep(SweepAxis { key: spec.name, values: parse_sweep(v, log)? })))
        }
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg = parse_document(text)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Parses without validating, for callers that apply overrides first.
pub fn parse_document(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    for (i, line) in text.lines().enumerate() {
        let at = || format!("line {}", i + 1);
        let entry = parse_entry(line).map_err(|msg| ConfigError::Parse { at: at(), msg })?;
        let name = match &entry {
            None => continue,
            Some(Entry::Plain(name, _)) => *name,
            Some(Entry::Sweep(axis)) => axis.key,
        };
        if cfg.values.contains_key(name) || cfg.sweeps.iter().any(|a| a.key == name) {
            return Err(ConfigError::Parse { at: at(), msg: format!("`{name}` is given more than once") });
        }
        cfg.insert(entry);
    }
    Ok(cfg)
}

impl RunConfig {
    fn insert(&mut self, entry: Option<Entry>) {
        match entry {
            None => {}
            Some(Entry::Plain(name, value)) => {
                self.sweeps.retain(|a| a.key != name);
                self.values.insert(name, value);
            }
            Some(Entry::Sweep(axis)) => {
                self.values.remove(axis.key);
                match self.sweeps.iter_mut().find(|a| a.key == axis.key) {
                    Some(existing) => *existing = axis,
                    None => self.sweeps.push(axis),
                }
            }
        }
    }

    /// Applies a `key=value` override; it replaces any earlier value or sweep.
    pub fn apply_override(&mut self, text: &str) -> Result<(), ConfigError> {
        let entry = parse_entry(text).map_err(|msg| ConfigError::Parse { at: format!("--set {text}"), msg })?;
        if entry.is_none() {
            return Err(ConfigError::Parse { at: format!("--set {text}"), msg: "expected `key=value`".into() });
        }
        self.insert(entry);
        Ok(())
    }

    pub fn is_set(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    fn value(&self, name: &str) -> Option<Value> {
        if let Some(v) = self.values.get(name) {
            return Some(v.clone());
        }
        let spec = key_spec(name).unwrap_or_else(|| panic!("unregistered key {name}"));
        spec.default.map(|d| parse_value(spec.kind, d).unwrap_or_else(|e| panic!("bad default for {name}: {e}")))
    }

    pub fn real_opt(&self, name: &str) -> Option<f64> {
        match self.value(name)? {
            Value::Real(v) => Some(v),
            other => panic!("{name} is not real: {other:?}"),
        }
    }

    pub fn real(&self, name: &str) -> f64 {
        self.real_opt(name).unwrap_or_else(|| panic!("{name} has no default"))
    }

    pub fn count(&self, name: &str) -> usize {
        match self.value(name) {
            Some(Value::Count(v)) => v,
            other => panic!("{name} is not a count: {other:?}"),
        }
    }

    pub fn flag(&self, name: &str) -> bool {
        match self.value(name) {
            Some(Value::Flag(v)) => v,
            other => panic!("{name} is not a flag: {other:?}"),
        }
    }

    pub fn choice(&self, name: &str) -> &'static str {
        match self.value(name) {
            Some(Value::Choice(v)) => v,
            other => panic!("{name} is not a choice: {other:?}"),
        }
    }

    pub fn model(&self) -> ModelParams {
        ModelParams {
            m_p: self.real("m_p"),
            m: self.real("m"),
            phi_star: self.real("phi_star"),
            a_coeff: self.real("a_coeff"),
            lambda_coupling: self.real("lambda"),
            rho_init: self.real("rho_init"),
            drive_amp: self.real("drive_amp"),
            t_p: self.real("t_p"),
            delta_t: self.real("delta_t"),
            regime_k: self.real("K"),
        }
    }

    /// Ball parameters; an unset `mu` puts the critical charge at `b_c_exp`.
    pub fn ball(&self) -> BallParams {
        let m_n = self.real("m_n");
        let b_c_exp = self.real("b_c_exp");
        BallParams {
            mu: self.real_opt("mu").unwrap_or_else(|| mu_for_critical_charge(b_c_exp, m_n)),
            m_n,
            sigma: self.real("sigma"),
            c_tilde: self.real("c_tilde"),
            b_c_exp,
            b_soft: self.real("b_soft"),
        }
    }

    /// Sweep cells in row-major order over the axes as declared.
    pub fn cells(&self) -> Vec<Vec<(&'static str, f64)>> {
        let mut cells: Vec<Vec<(&'static str, f64)>> = vec![vec![]];
        for axis in &self.sweeps {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    axis.values.iter().map(move |&v| {
                        let mut c = c.clone();
                        c.push((axis.key, v));
                        c
                    })
                })
                .collect();
        }
        cells
    }

    /// Single-run configuration for one sweep cell.
    pub fn cell_config(&self, cell: &[(&'static str, f64)]) -> RunConfig {
        let mut values = self.values.clone();
        for &(k, v) in cell {
            values.insert(k, Value::Real(v));
        }
        RunConfig { values, sweeps: vec![] }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sweeps.is_empty() {
            return self.validate_single();
        }
        for (i, cell) in self.cells().iter().enumerate() {
            self.cell_config(cell)
                .validate_single()
                .map_err(|e| ConfigError::Validation(format!("sweep cell {i}: {}", strip(e))))?;
        }
        Ok(())
    }

    fn validate_single(&self) -> Result<(), ConfigError> {
        let fail = |msg: String| Err(ConfigError::Validation(msg));
        if let Err(e) = self.model().validate() {
            return fail(core_msg(e));
        }
        if let Err(e) = self.ball().validate() {
            return fail(core_msg(e));
        }
        if let (Some(lo), Some(hi)) = (self.real_opt("phi_min"), self.real_opt("phi_max")) {
            if !(lo < hi) {
                return fail("phi_min < phi_max".into());
            }
        }
        if let (Some(lo), Some(hi)) = (self.real_opt("x_min"), self.real_opt("x_max")) {
            if !(lo < hi) {
                return fail("x_min < x_max".into());
            }
        }
        let checks: [(bool, &str); 18] = [
            (self.count("scan_points") >= 2, "scan_points >= 2"),
            (self.count("n_grid") >= MIN_GRID, "n_grid >= 100"),
            (self.real("target_gap") > 0.0, "target_gap > 0"),
            (self.real("m_min") > 0.0 && self.real("m_min") <= self.real("m_max"), "0 < m_min <= m_max"),
            (self.real("phi_star_min") <= self.real("phi_star_max"), "phi_star_min <= phi_star_max"),
            (self.count("m_cells") >= 2 && self.count("phi_star_cells") >= 1, "m_cells >= 2 and phi_star_cells >= 1"),
            (self.count("grid_points") >= MIN_PROFILE_POINTS, "grid_points >= 64"),
            (self.real("separation") >= 0.0, "separation >= 0"),
            (self.real("fluct_time") > 0.0, "fluct_time > 0"),
            (self.real_opt("r_max").map_or(true, |r| r > 0.0), "r_max > 0"),
            (self.count("r_points") >= 2, "r_points >= 2"),
            (self.real("t_start") >= 0.0 && self.real("t_end") > self.real("t_start"), "0 <= t_start < t_end"),
            (self.real("rtol") > 0.0 && self.real("atol") > 0.0, "rtol > 0 and atol > 0"),
            (self.real("b_min") >= 1.0 && self.real("b_min") <= self.real("b_max"), "1 <= b_min <= b_max"),
            (self.count("b_points") >= 2, "b_points >= 2"),
            (self.real("n_b") >= 0.0 && self.real("n_bbar") >= 0.0, "n_b >= 0 and n_bbar >= 0"),
            (self.real("s") > 0.0, "s > 0"),
            (self.real("dilaton_phi").abs() <= 700.0, "|dilaton_phi| <= 700"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => fail((*msg).into()),
            None => Ok(()),
        }
    }

    /// Explicit values as config text, in key-table order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for spec in KEYS {
            if let Some(v) = self.values.get(spec.name) {
                out.push_str(&format!("{} = {}\n", spec.name, render(v)));
            }
        }
        for axis in &self.sweeps {
            let vals: Vec<String> = axis.values.iter().map(|v| nucleosim_core::export::fmt_f64(*v)).collect();
            out.push_str(&format!("# sweep.{} over [{}]\n", axis.key, vals.join(", ")));
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::Real(x) => nucleosim_core::export::fmt_f64(*x),
        Value::Count(n) => n.to_string(),
        Value::Flag(b) => b.to_string(),
        Value::Choice(c) => (*c).to_string(),
    }
}

fn core_msg(e: nucleosim_core::Error) -> String {
    match e {
        nucleosim_core::Error::Validation(msg) => msg,
        other => other.to_string(),
    }
}

fn strip(e: ConfigError) -> String {
    match e {
        ConfigError::Validation(msg) => msg,
        other => other.to_string(),
    }
}

/// Default field window for scans: two periods either side of `φ*`.
pub fn default_scan_range(phi_star: f64) -> (f64, f64) {
    (phi_star - 4.0 * PI, phi_star + 4.0 * PI)
}
