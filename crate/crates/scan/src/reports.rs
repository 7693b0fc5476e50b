//! Brillouin-zone integrals and per-protocol summaries.

use quench_qgt_core::grid::{is_degenerate_node, MomentumGrid};
use quench_qgt_core::{
    boundary_sign_diagnostic, g_tt, q_kt, BoundarySignReport, QuenchProtocol, Sign,
};
use serde::Serialize;

use crate::error::{Result, ScanError};
use crate::scan::{momentum_nodes, ProtocolMeta};

pub const MIN_INTEGRAL_POINTS: usize = 64;
pub const MIN_PEAK_POINTS: usize = 256;

/// Two quenches within one phase and two across the transition, listed in
/// order of increasing `g_tt` peak height.
pub const REFERENCE_PROTOCOLS: [(f64, f64); 4] = [(0.5, 0.1), (1.1, 2.0), (1.5, 0.1), (0.9, 2.0)];

pub fn reference_protocols() -> Vec<QuenchProtocol> {
    REFERENCE_PROTOCOLS
        .iter()
        .map(|&(mi, mf)| QuenchProtocol::new(mi, mf, 1.0).expect("valid protocol"))
        .collect()
}

/// Composite trapezoid of `Im Q_kt` over `(−π, π]` with the periodic
/// endpoint identified.
///
/// Nodes are visited in increasing order and each `k < 0` node is summed
/// together with its mirror `−k`, so the odd integrand cancels pair by pair.
/// A degenerate node removes its mirror as well.
pub fn bz_integral_im_qkt(proto: &QuenchProtocol, t: f64, k_points: usize) -> Result<f64> {
    if k_points < MIN_INTEGRAL_POINTS {
        return Err(ScanError::ConfigInvalid(format!(
            "k_points = {k_points} < {MIN_INTEGRAL_POINTS}"
        )));
    }
    let grid = MomentumGrid::new(k_points);
    let f = |k: f64| -> Result<f64> {
        if is_degenerate_node(proto, k) || is_degenerate_node(proto, -k) {
            Ok(0.0)
        } else {
            Ok(q_kt(proto, k, t)?.im)
        }
    };
    let mut acc = 0.0;
    for j in 1..=k_points {
        let k = grid.node(j);
        if k < 0.0 {
            acc += f(k)? + f(grid.node(k_points - j))?;
        } else if k == 0.0 || j == k_points {
            // self-mirrored nodes: 0 and π
            acc += f(k)?;
        }
    }
    Ok(acc * grid.spacing())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakEntry {
    pub protocol: ProtocolMeta,
    pub height: f64,
    /// First node (in increasing `k`) attaining the maximum.
    pub argmax_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakReport {
    pub k_points: usize,
    pub entries: Vec<PeakEntry>,
    /// Heights strictly increase in the order the protocols were given.
    pub strictly_increasing: bool,
}

pub fn gtt_peak_report(protocols: &[QuenchProtocol], k_points: usize) -> Result<PeakReport> {
    if k_points < MIN_PEAK_POINTS {
        return Err(ScanError::ConfigInvalid(format!("k_points = {k_points} < {MIN_PEAK_POINTS}")));
    }
    if protocols.is_empty() {
        return Err(ScanError::ConfigInvalid("no protocols given".into()));
    }
    let mut entries = Vec::with_capacity(protocols.len());
    for proto in protocols {
        let (ks, _) = momentum_nodes(proto, k_points);
        let mut best = PeakEntry { protocol: (*proto).into(), height: f64::NEG_INFINITY, argmax_k: 0.0 };
        for k in ks {
            let v = g_tt(proto, k)?;
            if v > best.height {
                best.height = v;
                best.argmax_k = k;
            }
        }
        entries.push(best);
    }
    let strictly_increasing = entries.windows(2).all(|w| w[0].height < w[1].height);
    Ok(PeakReport { k_points, entries, strictly_increasing })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignDiagnosis {
    pub report: BoundarySignReport,
    pub probe_k: f64,
    /// `Im Q_kt(−π + 0.01, 0)` evaluated directly.
    pub direct_im_qkt: f64,
    pub agrees: bool,
}

/// Boundary sign prediction alongside a direct evaluation at the probe point.
pub fn diagnose(proto: &QuenchProtocol) -> Result<SignDiagnosis> {
    let report = boundary_sign_diagnostic(proto)?;
    let probe_k = -std::f64::consts::PI + quench_qgt_core::analytic::BOUNDARY_PROBE_OFFSET;
    let direct_im_qkt = q_kt(proto, probe_k, 0.0)?.im;
    let agrees = Sign::of(direct_im_qkt) == report.initial_im_qkt_sign_negative_k;
    Ok(SignDiagnosis { report, probe_k, direct_im_qkt, agrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_vanishes() {
        let p = QuenchProtocol::new(0.9, 2.0, 1.0).unwrap();
        assert!(bz_integral_im_qkt(&p, 7.0, 512).unwrap().abs() < 1e-10);
        let p = QuenchProtocol::new(1.5, 0.1, 1.0).unwrap();
        assert!(bz_integral_im_qkt(&p, 0.0, 256).unwrap().abs() < 1e-10);
        let p = QuenchProtocol::new(0.7, 0.7, 1.0).unwrap();
        assert_eq!(bz_integral_im_qkt(&p, 3.0, 64).unwrap(), 0.0);
        assert!(bz_integral_im_qkt(&p, 3.0, 63).is_err());
    }

    #[test]
    fn integral_on_a_gapless_grid() {
        let p = QuenchProtocol::new(1.0, 0.4, 1.0).unwrap();
        for n in [64, 65, 512] {
            assert!(bz_integral_im_qkt(&p, 2.0, n).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn peaks() {
        let r = gtt_peak_report(&reference_protocols(), 512).unwrap();
        assert!(r.strictly_increasing);
        assert!(r.entries[3].argmax_k.abs() > r.entries[0].argmax_k.abs());
        let trivial = QuenchProtocol::new(0.6, 0.6, 1.0).unwrap();
        assert_eq!(gtt_peak_report(&[trivial], 256).unwrap().entries[0].height, 0.0);
        assert!(gtt_peak_report(&[trivial], 255).is_err());
    }

    #[test]
    fn diagnosis_agrees_with_direct_evaluation() {
        for (mi, mf) in [(1.1, 2.0), (0.9, 2.0), (1.5, 0.1), (0.5, 0.1)] {
            let d = diagnose(&QuenchProtocol::new(mi, mf, 1.0).unwrap()).unwrap();
            assert!(d.agrees, "{mi}->{mf}: {d:?}");
        }
        assert!(diagnose(&QuenchProtocol::new(1.0, 2.0, 1.0).unwrap()).is_err());
    }
}
