//! Uniform Brillouin-zone and time grids.
//!
//! Momentum nodes are `k_j = π(2j − N)/N` for `j = 1..=N`, covering `(−π, π]`
//! with the periodic endpoint identified. The integer numerator makes the node
//! set exactly symmetric: the negation of every node except `π` (and `0` for
//! even `N`) is bitwise another node.

use core::f64::consts::PI;

use crate::model::{r_tilde, GAP_TOLERANCE};
use crate::quench::QuenchProtocol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentumGrid {
    pub points: usize,
}

impl MomentumGrid {
    pub const fn new(points: usize) -> Self {
        Self { points }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.points as f64
    }

    /// Node `j` for `j` in `1..=points`.
    pub fn node(&self, j: usize) -> f64 {
        let n = self.points as i64;
        PI * ((2 * j as i64 - n) as f64 / n as f64)
    }

    /// Nodes in increasing order.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.points).map(move |j| self.node(j))
    }
}

/// True when `k` sits on a gap-closing point of either Hamiltonian.
pub fn is_degenerate_node(proto: &QuenchProtocol, k: f64) -> bool {
    r_tilde(&proto.initial(), k) <= GAP_TOLERANCE || r_tilde(&proto.post(), k) <= GAP_TOLERANCE
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_max: f64,
    pub points: usize,
}

impl TimeGrid {
    /// `t_j = t_max · j / (points − 1)`; a single point sits at `t = 0`.
    pub fn node(&self, j: usize) -> f64 {
        if self.points <= 1 {
            0.0
        } else if j + 1 == self.points {
            self.t_max
        } else {
            self.t_max * j as f64 / (self.points - 1) as f64
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |j| self.node(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn momentum_nodes_are_symmetric() {
        for n in [3usize, 11, 64, 101, 256, 512] {
            let g = MomentumGrid::new(n);
            assert_eq!(g.node(n), PI);
            assert!(g.node(1) > -PI);
            for j in 1..n {
                assert_eq!(g.node(n - j), -g.node(j));
            }
            let mut prev = -PI;
            for k in g.nodes() {
                assert!(k > prev);
                prev = k;
            }
        }
    }

    #[test]
    fn time_nodes() {
        let g = TimeGrid { t_max: 20.0, points: 201 };
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(200), 20.0);
        assert!((g.node(100) - 10.0).abs() < 1e-15);
        let one = TimeGrid { t_max: 5.0, points: 1 };
        assert_eq!(one.nodes().next(), Some(0.0));
    }

    #[test]
    fn degenerate_node_only_at_boundary() {
        let p = QuenchProtocol::new(1.0, 2.0, 1.0).unwrap();
        assert!(is_degenerate_node(&p, PI));
        assert!(!is_degenerate_node(&p, PI - 0.01));
        let q = QuenchProtocol::new(0.9, 2.0, 1.0).unwrap();
        assert!(!is_degenerate_node(&q, PI));
    }
}
