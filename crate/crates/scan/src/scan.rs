//! `(k, t)` grid scans.

use quench_qgt_core::grid::{is_degenerate_node, MomentumGrid, TimeGrid};
use quench_qgt_core::{numeric_qgt, qgt_value, Error as CoreError, QuenchProtocol};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Component, ScanConfig};
use crate::error::{Result, ScanError};

/// Fraction of grid points cross-checked when verification is on.
pub const VERIFY_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolMeta {
    pub m_i: f64,
    pub m_f: f64,
    pub j2: f64,
}

impl From<QuenchProtocol> for ProtocolMeta {
    fn from(p: QuenchProtocol) -> Self {
        Self { m_i: p.m_i, m_f: p.m_f, j2: p.j2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub k_points: usize,
    pub usable_k_points: usize,
    pub t_max: f64,
    pub t_points: usize,
    /// Momentum nodes dropped because a gap closes there.
    pub excluded_k: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyMeta {
    pub fd_step: f64,
    pub seed: u64,
    /// Points actually differenced; nodes whose stencil would cross `t = 0`
    /// are skipped.
    pub samples: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub protocol: ProtocolMeta,
    pub grid: GridMeta,
    pub version: String,
    pub verification: Option<VerifyMeta>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub metadata: Metadata,
    /// `k`, `t`, then one column per component.
    pub columns: Vec<String>,
    /// k-major, then t.
    pub rows: Vec<Vec<f64>>,
}

impl ScanResult {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn columns_for(components: &[Component]) -> Vec<String> {
    ["k", "t"]
        .into_iter()
        .map(String::from)
        .chain(components.iter().map(|c| c.name().to_string()))
        .collect()
}

/// Usable nodes of a momentum grid plus the excluded ones.
pub fn momentum_nodes(proto: &QuenchProtocol, k_points: usize) -> (Vec<f64>, Vec<f64>) {
    MomentumGrid::new(k_points).nodes().partition(|&k| !is_degenerate_node(proto, k))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| ScanError::ConfigInvalid(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn run_scan(cfg: &ScanConfig) -> Result<ScanResult> {
    cfg.validate()?;
    let proto = cfg.proto;
    let (ks, excluded) = momentum_nodes(&proto, cfg.k_points);
    if ks.is_empty() {
        return Err(ScanError::DegenerateGrid("every momentum node is gapless".into()));
    }
    let ts: Vec<f64> = TimeGrid { t_max: cfg.t_max, points: cfg.t_points }.nodes().collect();

    let rows = with_pool(cfg.threads, || {
        ks.par_iter()
            .map(|&k| {
                ts.iter()
                    .map(|&t| {
                        let q = qgt_value(&proto, k, t)?;
                        let mut row = Vec::with_capacity(2 + cfg.components.len());
                        row.push(k);
                        row.push(t);
                        for c in &cfg.components {
                            row.push(c.evaluate(&proto, k, &q)?);
                        }
                        Ok(row)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let rows: Vec<Vec<f64>> = rows.into_iter().flatten().collect();

    let verification = if cfg.fd_verify {
        Some(with_pool(cfg.threads, || verify_subsample(cfg, &ks, &ts))??)
    } else {
        None
    };

    Ok(ScanResult {
        metadata: Metadata {
            protocol: proto.into(),
            grid: GridMeta {
                k_points: cfg.k_points,
                usable_k_points: ks.len(),
                t_max: cfg.t_max,
                t_points: cfg.t_points,
                excluded_k: excluded,
            },
            version: env!("CARGO_PKG_VERSION").to_string(),
            verification,
        },
        columns: columns_for(&cfg.components),
        rows,
    })
}

/// Cross-check a seeded random subsample against the finite-difference tensor.
fn verify_subsample(cfg: &ScanConfig, ks: &[f64], ts: &[f64]) -> Result<VerifyMeta> {
    let total = ks.len() * ts.len();
    let amount = ((total as f64 * VERIFY_FRACTION).ceil() as usize).clamp(1, total);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut picks = index::sample(&mut rng, total, amount).into_vec();
    picks.sort_unstable();

    let fd = cfg.fd_config();
    let residuals = picks
        .par_iter()
        .map(|&i| {
            let (k, t) = (ks[i / ts.len()], ts[i % ts.len()]);
            match numeric_qgt(&cfg.proto, k, t, &fd) {
                Ok(num) => Ok(Some(num.max_abs_diff(&qgt_value(&cfg.proto, k, t)?.to_matrix()))),
                Err(CoreError::StencilCrossesQuench { .. } | CoreError::DegenerateStencil { .. }) => Ok(None),
                Err(e) => Err(e.into()),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let checked: Vec<f64> = residuals.into_iter().flatten().collect();
    Ok(VerifyMeta {
        fd_step: cfg.fd_step,
        seed: cfg.seed,
        samples: checked.len(),
        max_residual: checked.iter().copied().fold(0.0, f64::max),
    })
}
