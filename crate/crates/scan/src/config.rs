//! Scan configuration and the flat `key=value` settings file.

use std::fmt;
use std::str::FromStr;

use quench_qgt_core::{
    excitation_probability, volatility_timescale, FdConfig, QgtValue, QuenchProtocol,
};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ScanError};

pub const DEFAULT_K_POINTS: usize = 401;
pub const DEFAULT_T_POINTS: usize = 201;
pub const DEFAULT_T_MAX: f64 = 20.0;

/// Step used by the scan verification hook.
///
/// Far below the library default of `1e-4`: the `k`-derivative of the evolved
/// state grows linearly in `t`, so the second-order truncation error of the
/// central stencil grows like `t³` and exceeds `1e-6` at late times for
/// `1e-4`. Rounding stays below `1e-9` at this step.
pub const DEFAULT_FD_STEP: f64 = 2e-6;

/// Tolerance for the recorded verification residual.
pub const VERIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    GKk,
    G0,
    G1,
    G2,
    GTt,
    ReQkt,
    ImQkt,
    Curvature,
    Beta2,
    Tau,
}

impl Component {
    pub const ALL: [Component; 10] = [
        Component::GKk,
        Component::G0,
        Component::G1,
        Component::G2,
        Component::GTt,
        Component::ReQkt,
        Component::ImQkt,
        Component::Curvature,
        Component::Beta2,
        Component::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::GKk => "g_kk",
            Component::G0 => "g0",
            Component::G1 => "g1",
            Component::G2 => "g2",
            Component::GTt => "g_tt",
            Component::ReQkt => "re_qkt",
            Component::ImQkt => "im_qkt",
            Component::Curvature => "curvature",
            Component::Beta2 => "beta2",
            Component::Tau => "tau",
        }
    }

    /// Value at one grid point. `beta2` and `tau` do not depend on `t`.
    pub fn evaluate(self, proto: &QuenchProtocol, k: f64, q: &QgtValue) -> Result<f64> {
        Ok(match self {
            Component::GKk => q.g_kk,
            Component::G0 => q.g0,
            Component::G1 => q.g1,
            Component::G2 => q.g2,
            Component::GTt => q.g_tt,
            Component::ReQkt => q.re_qkt,
            Component::ImQkt => q.im_qkt,
            Component::Curvature => q.curvature(),
            Component::Beta2 => excitation_probability(proto, k)?,
            Component::Tau => volatility_timescale(proto, k).as_f64(),
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self> {
        Component::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| ScanError::ConfigInvalid(format!("unknown component `{s}`")))
    }
}

/// Comma separated component list, e.g. `g_kk,im_qkt`.
pub fn parse_components(s: &str) -> Result<Vec<Component>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(ScanError::ConfigInvalid(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub proto: QuenchProtocol,
    pub k_points: usize,
    pub t_max: f64,
    pub t_points: usize,
    pub components: Vec<Component>,
    pub fd_verify: bool,
    pub format: Format,
    pub fd_step: f64,
    /// Seeds the verification subsample.
    pub seed: u64,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ScanConfig {
    pub fn new(proto: QuenchProtocol) -> Self {
        Self {
            proto,
            k_points: DEFAULT_K_POINTS,
            t_max: DEFAULT_T_MAX,
            t_points: DEFAULT_T_POINTS,
            components: vec![Component::GKk],
            fd_verify: false,
            format: Format::Csv,
            fd_step: DEFAULT_FD_STEP,
            seed: 0,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ScanError::ConfigInvalid(msg));
        if self.k_points < 3 {
            return bad(format!("k_points = {} < 3", self.k_points));
        }
        if self.t_points < 1 {
            return bad("t_points must be at least 1".into());
        }
        if !(self.t_max.is_finite() && self.t_max >= 0.0) {
            return bad(format!("t_max = {} must be finite and non-negative", self.t_max));
        }
        if self.components.is_empty() {
            return bad("component list is empty".into());
        }
        for (i, c) in self.components.iter().enumerate() {
            if self.components[..i].contains(c) {
                return bad(format!("component `{c}` listed twice"));
            }
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        self.fd_config().validate()?;
        Ok(())
    }

    pub fn fd_config(&self) -> FdConfig {
        FdConfig::with_step(self.fd_step)
    }
}

/// Loosely typed settings as read from a file or the command line.
///
/// Keys match the CLI flags without the leading dashes; `_` and `-` are
/// interchangeable.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub mi: Option<f64>,
    pub mf: Option<f64>,
    pub j2: Option<f64>,
    pub k_points: Option<usize>,
    pub t_max: Option<f64>,
    pub t_points: Option<usize>,
    pub components: Option<Vec<Component>>,
    pub fd_step: Option<f64>,
    pub fd_verify: Option<bool>,
    pub format: Option<Format>,
    pub out: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| ScanError::ConfigInvalid(format!("bad value `{value}` for `{key}`")))
}

impl Settings {
    /// Parse `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ScanError::ConfigInvalid(format!("line {}: expected key=value", n + 1))
            })?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "mi" => s.mi = Some(parse_value(&key, value)?),
                "mf" => s.mf = Some(parse_value(&key, value)?),
                "j2" => s.j2 = Some(parse_value(&key, value)?),
                "k-points" => s.k_points = Some(parse_value(&key, value)?),
                "t-max" => s.t_max = Some(parse_value(&key, value)?),
                "t-points" => s.t_points = Some(parse_value(&key, value)?),
                "components" => s.components = Some(parse_components(value)?),
                "fd-step" => s.fd_step = Some(parse_value(&key, value)?),
                "fd-verify" => s.fd_verify = Some(parse_value(&key, value)?),
                "format" => s.format = Some(value.parse()?),
                "out" => s.out = Some(value.to_string()),
                "seed" => s.seed = Some(parse_value(&key, value)?),
                "threads" => s.threads = Some(parse_value(&key, value)?),
                other => {
                    return Err(ScanError::ConfigInvalid(format!(
                        "line {}: unknown key `{other}`",
                        n + 1
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Fields set in `over` win.
    pub fn overridden_by(self, over: Settings) -> Settings {
        Settings {
            mi: over.mi.or(self.mi),
            mf: over.mf.or(self.mf),
            j2: over.j2.or(self.j2),
            k_points: over.k_points.or(self.k_points),
            t_max: over.t_max.or(self.t_max),
            t_points: over.t_points.or(self.t_points),
            components: over.components.or(self.components),
            fd_step: over.fd_step.or(self.fd_step),
            fd_verify: over.fd_verify.or(self.fd_verify),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            seed: over.seed.or(self.seed),
            threads: over.threads.or(self.threads),
        }
    }

    pub fn protocol(&self) -> Result<QuenchProtocol> {
        let mi = self.mi.ok_or_else(|| ScanError::ConfigInvalid("missing mi".into()))?;
        let mf = self.mf.ok_or_else(|| ScanError::ConfigInvalid("missing mf".into()))?;
        Ok(QuenchProtocol::new(mi, mf, self.j2.unwrap_or(1.0))?)
    }

    pub fn scan_config(&self) -> Result<ScanConfig> {
        let mut cfg = ScanConfig::new(self.protocol()?);
        if let Some(v) = self.k_points {
            cfg.k_points = v;
        }
        if let Some(v) = self.t_max {
            cfg.t_max = v;
        }
        if let Some(v) = self.t_points {
            cfg.t_points = v;
        }
        if let Some(v) = &self.components {
            cfg.components = v.clone();
        }
        if let Some(v) = self.fd_step {
            cfg.fd_step = v;
        }
        if let Some(v) = self.fd_verify {
            cfg.fd_verify = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg.threads = self.threads;
        cfg.validate()?;
        Ok(cfg)
    }
}
