use serde::{Deserialize, Serialize};

use crate::energetics::DiamagnetConfig;
use crate::london::{Geometry, LondonParams, SourceConfig};
use crate::spectrum::Annulus;

use super::CliError;

pub const DEFAULT_CONFIG: &str = include_str!("../../config/default.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Exact,
    Approx,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LondonSection {
    pub beta: f64,
    #[serde(default = "default_mu")]
    pub mu: f64,
    #[serde(default = "default_solver")]
    pub solver: SolverKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourcesSection {
    pub phi_a: f64,
    #[serde(default)]
    pub b_e: f64,
    #[serde(default = "yes")]
    pub include_shield: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default)]
    pub f_start: f64,
    #[serde(default = "one")]
    pub f_stop: f64,
    #[serde(default = "default_step")]
    pub f_step: f64,
    #[serde(default = "default_l_min")]
    pub l_min: i64,
    #[serde(default = "default_l_max")]
    pub l_max: i64,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            f_start: 0.0,
            f_stop: 1.0,
            f_step: default_step(),
            l_min: default_l_min(),
            l_max: default_l_max(),
            n_max: default_n_max(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_format")]
    pub format: Format,
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default = "default_points")]
    pub profile_points: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { format: default_format(), path: None, profile_points: default_points() }
    }
}

/// Thresholds used by `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesSection {
    #[serde(default = "default_wronskian")]
    pub wronskian: f64,
    #[serde(default = "default_oracle")]
    pub oracle_rel: f64,
    #[serde(default = "default_fd_intervals")]
    pub fd_intervals: usize,
    #[serde(default = "default_periodicity")]
    pub periodicity: f64,
    #[serde(default = "default_identity")]
    pub identity_rel: f64,
    #[serde(default = "default_approx")]
    pub approx_rel: f64,
}

impl Default for TolerancesSection {
    fn default() -> Self {
        TolerancesSection {
            wronskian: default_wronskian(),
            oracle_rel: default_oracle(),
            fd_intervals: default_fd_intervals(),
            periodicity: default_periodicity(),
            identity_rel: default_identity(),
            approx_rel: default_approx(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: Geometry,
    pub london: LondonSection,
    pub sources: SourcesSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub tolerances: TolerancesSection,
}

fn default_mu() -> f64 {
    0.5
}
fn default_solver() -> SolverKind {
    SolverKind::Exact
}
fn yes() -> bool {
    true
}
fn one() -> f64 {
    1.0
}
fn default_step() -> f64 {
    0.05
}
fn default_l_min() -> i64 {
    -8
}
fn default_l_max() -> i64 {
    8
}
fn default_n_max() -> usize {
    3
}
fn default_format() -> Format {
    Format::Csv
}
fn default_points() -> usize {
    401
}
fn default_wronskian() -> f64 {
    1e-10
}
fn default_oracle() -> f64 {
    5e-6
}
fn default_fd_intervals() -> usize {
    8192
}
fn default_periodicity() -> f64 {
    1e-9
}
fn default_identity() -> f64 {
    1e-8
}
fn default_approx() -> f64 {
    0.02
}

fn invalid(key: &str, msg: impl Into<String>) -> CliError {
    CliError::Config { key: key.to_string(), message: msg.into() }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let key = e.span().map(|s| text[s].trim().to_string()).unwrap_or_default();
            CliError::Config { key, message: e.message().to_string() }
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn default_scenario() -> Self {
        RunConfig::parse(DEFAULT_CONFIG).expect("bundled default config is valid")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.geometry.validate().map_err(|e| invalid("geometry", e.to_string()))?;
        LondonParams::new(self.london.beta, &self.geometry).map_err(|e| invalid("london.beta", e.to_string()))?;
        DiamagnetConfig::new(self.london.mu).map_err(|e| invalid("london.mu", e.to_string()))?;
        if !self.sources.phi_a.is_finite() {
            return Err(invalid("sources.phi_a", "must be finite"));
        }
        if !self.sources.b_e.is_finite() {
            return Err(invalid("sources.b_e", "must be finite"));
        }
        let s = &self.sweep;
        if !(s.f_step.is_finite() && s.f_step > 0.0) {
            return Err(invalid("sweep.f_step", format!("must be positive, got {}", s.f_step)));
        }
        if !(s.f_start.is_finite() && s.f_stop.is_finite() && s.f_stop >= s.f_start) {
            return Err(invalid("sweep.f_stop", "need finite f_start <= f_stop"));
        }
        if (s.f_stop - s.f_start) / s.f_step > 1e5 {
            return Err(invalid("sweep.f_step", "flux grid would exceed 100000 points"));
        }
        if s.l_max - s.l_min < 2 {
            return Err(invalid("sweep.l_min", "need l_max - l_min >= 2"));
        }
        if s.n_max == 0 {
            return Err(invalid("sweep.n_max", "must be >= 1"));
        }
        if self.output.profile_points < 2 {
            return Err(invalid("output.profile_points", "must be >= 2"));
        }
        let t = &self.tolerances;
        for (key, v) in [
            ("tolerances.wronskian", t.wronskian),
            ("tolerances.oracle_rel", t.oracle_rel),
            ("tolerances.periodicity", t.periodicity),
            ("tolerances.identity_rel", t.identity_rel),
            ("tolerances.approx_rel", t.approx_rel),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(key, "must be positive"));
            }
        }
        if t.fd_intervals < 64 {
            return Err(invalid("tolerances.fd_intervals", "must be >= 64"));
        }
        Ok(())
    }

    pub fn london_params(&self) -> LondonParams {
        LondonParams::new(self.london.beta, &self.geometry).expect("validated")
    }

    pub fn source(&self) -> SourceConfig {
        SourceConfig { phi_a: self.sources.phi_a, b_e: self.sources.b_e, include_shield: self.sources.include_shield }
    }

    pub fn annulus(&self) -> Annulus {
        self.geometry.annulus()
    }

    /// `f_start + i f_step`, with the last point snapped onto `f_stop` when
    /// it lands within rounding of it.
    pub fn flux_grid(&self) -> Vec<f64> {
        let s = &self.sweep;
        let span = (s.f_stop - s.f_start) / s.f_step;
        let n = (span + 1e-9).floor() as usize;
        let mut grid: Vec<f64> = (0..=n).map(|i| s.f_start + i as f64 * s.f_step).collect();
        if let Some(last) = grid.last_mut() {
            if (*last - s.f_stop).abs() <= 1e-9 * s.f_step {
                *last = s.f_stop;
            }
        }
        grid
    }

    /// Every effective parameter as `key=value` pairs, defaults included.
    pub fn echo(&self) -> Vec<(String, String)> {
        let g = &self.geometry;
        let lp = self.london_params();
        let f = |x: f64| super::table::fmt_float(x);
        let mut out = vec![
            ("geometry.a".into(), f(g.a)),
            ("geometry.b".into(), f(g.b)),
            ("geometry.c".into(), f(g.c)),
            ("geometry.d".into(), f(g.d)),
            ("geometry.e".into(), f(g.e)),
            ("geometry.r_e".into(), f(g.r_e)),
            ("london.beta".into(), f(self.london.beta)),
            ("london.alpha".into(), f(lp.alpha)),
            ("london.mu".into(), f(self.london.mu)),
            (
                "london.solver".into(),
                match self.london.solver {
                    SolverKind::Exact => "exact".into(),
                    SolverKind::Approx => "approx".into(),
                },
            ),
            ("sources.phi_a".into(), f(self.sources.phi_a)),
            ("sources.b_e".into(), f(self.sources.b_e)),
            ("sources.include_shield".into(), self.sources.include_shield.to_string()),
            ("sweep.f_start".into(), f(self.sweep.f_start)),
            ("sweep.f_stop".into(), f(self.sweep.f_stop)),
            ("sweep.f_step".into(), f(self.sweep.f_step)),
            ("sweep.l_min".into(), self.sweep.l_min.to_string()),
            ("sweep.l_max".into(), self.sweep.l_max.to_string()),
            ("sweep.n_max".into(), self.sweep.n_max.to_string()),
            ("output.format".into(), self.output.format.name().into()),
            ("output.profile_points".into(), self.output.profile_points.to_string()),
        ];
        let t = &self.tolerances;
        out.extend([
            ("tolerances.wronskian".into(), f(t.wronskian)),
            ("tolerances.oracle_rel".into(), f(t.oracle_rel)),
            ("tolerances.fd_intervals".into(), t.fd_intervals.to_string()),
            ("tolerances.periodicity".into(), f(t.periodicity)),
            ("tolerances.identity_rel".into(), f(t.identity_rel)),
            ("tolerances.approx_rel".into(), f(t.approx_rel)),
        ]);
        out
    }
}
