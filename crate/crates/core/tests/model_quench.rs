use std::f64::consts::{PI, TAU};

use quench_qgt_core::{
    berry_connection, bloch_hamiltonian, bloch_vector, eigensystem, energy_variance,
    evolved_state, excitation_probability, group_velocity, overlap_coeffs, r_tilde, Band,
    Matrix2, ModelParams, QuenchProtocol, Spinor, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_2026)
}

/// Random model away from the gap-closing point.
fn random_model(rng: &mut ChaCha8Rng) -> (ModelParams, f64) {
    loop {
        let p = ModelParams::new(rng.gen_range(0.0..2.5), rng.gen_range(0.2..3.0)).unwrap();
        let k = rng.gen_range(-PI..PI);
        if r_tilde(&p, k) > 1e-3 {
            return (p, k);
        }
    }
}

fn random_quench(rng: &mut ChaCha8Rng) -> (QuenchProtocol, f64) {
    loop {
        let p = QuenchProtocol::new(rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0), rng.gen_range(0.5..2.0)).unwrap();
        let k = rng.gen_range(-PI..PI);
        if r_tilde(&p.initial(), k) > 0.05 && r_tilde(&p.post(), k) > 0.05 {
            return (p, k);
        }
    }
}

/// Ground state of a Hermitian 2×2 matrix by the generic quadratic formula,
/// phase-fixed so the first component is real and positive.
fn generic_ground_state(h: &Matrix2) -> Spinor {
    let a = h.m[0][0].re;
    let d = h.m[1][1].re;
    let b = h.m[0][1];
    let e = 0.5 * (a + d) - ((0.5 * (a - d)).powi(2) + b.norm_sqr()).sqrt();
    let v = Spinor::new(b, C64::new(e - a, 0.0));
    let v = v * (1.0 / v.norm());
    let phase = v.c0.conj() / v.c0.norm();
    v.scale(phase)
}

#[test]
fn eigen_residuals_on_random_points() {
    let mut rng = rng();
    for _ in 0..1000 {
        let (p, k) = random_model(&mut rng);
        let es = eigensystem(&p, k).unwrap();
        let h = bloch_hamiltonian(&p, k);
        for band in [Band::Minus, Band::Plus] {
            let u = es.state(band);
            assert!((h.apply(&u) - u * es.energy(band)).norm() < 1e-10);
            assert!((u.norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert_eq!(es.e_plus, -es.e_minus);
        assert_eq!(es.e_plus, p.j2 * r_tilde(&p, k));
        assert!((bloch_vector(&p, k).norm() - p.j2 * r_tilde(&p, k)).abs() < 1e-12);
        assert_eq!(bloch_vector(&p, k).rz, 0.0);
        assert!(es.u_minus.inner(&es.u_plus).norm() < 1e-12);
        assert_eq!(es.u_minus.c0, C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    }
}

#[test]
fn parity_in_momentum() {
    let mut rng = rng();
    for _ in 0..500 {
        let (p, k) = random_model(&mut rng);
        assert_eq!(r_tilde(&p, k), r_tilde(&p, -k));
        assert_eq!(berry_connection(&p, k).unwrap(), berry_connection(&p, -k).unwrap());
        for band in [Band::Minus, Band::Plus] {
            assert_eq!(group_velocity(&p, k, band).unwrap(), -group_velocity(&p, -k, band).unwrap());
        }
    }
}

#[test]
fn periodic_in_momentum() {
    let mut rng = rng();
    for _ in 0..500 {
        let (p, k) = random_model(&mut rng);
        let k2 = k + TAU;
        assert!((r_tilde(&p, k) - r_tilde(&p, k2)).abs() < 1e-12);
        assert!((berry_connection(&p, k).unwrap() - berry_connection(&p, k2).unwrap()).abs() < 1e-12);
        assert!((group_velocity(&p, k, Band::Plus).unwrap() - group_velocity(&p, k2, Band::Plus).unwrap()).abs() < 1e-12);
        let (a, b) = (eigensystem(&p, k).unwrap(), eigensystem(&p, k2).unwrap());
        assert!((a.u_minus - b.u_minus).norm() < 1e-12);
    }
}

#[test]
fn berry_connection_matches_generic_eigenvector_derivative() {
    let mut rng = rng();
    let h = 1e-5;
    for _ in 0..300 {
        let (p, k) = random_model(&mut rng);
        if r_tilde(&p, k) < 0.1 {
            continue;
        }
        let u = generic_ground_state(&bloch_hamiltonian(&p, k));
        let up = generic_ground_state(&bloch_hamiltonian(&p, k + h));
        let um = generic_ground_state(&bloch_hamiltonian(&p, k - h));
        let du = (up - um) * (0.5 / h);
        let numeric = (C64::new(0.0, 1.0) * u.inner(&du)).re;
        let closed = berry_connection(&p, k).unwrap();
        assert!((numeric - closed).abs() < 1e-8, "m={} k={k}: {numeric} vs {closed}", p.m);
    }
}

#[test]
fn overlap_reconstructs_initial_ground_state() {
    let mut rng = rng();
    for _ in 0..1000 {
        let (p, k) = random_quench(&mut rng);
        let ov = overlap_coeffs(&p, k).unwrap();
        assert!((ov.ground_weight() + ov.excited_weight() - 1.0).abs() < 1e-12);
        let post = eigensystem(&p.post(), k).unwrap();
        let rebuilt = post.u_minus.scale(ov.alpha) + post.u_plus.scale(ov.beta);
        let ui = eigensystem(&p.initial(), k).unwrap().u_minus;
        assert!((rebuilt - ui).norm() < 1e-10);
        // independent route: projections onto the post-quench basis
        assert!((post.u_minus.inner(&ui) - ov.alpha).norm() < 1e-12);
        assert!((post.u_plus.inner(&ui) - ov.beta).norm() < 1e-12);
    }
}

#[test]
fn evolution_is_unitary() {
    let mut rng = rng();
    for _ in 0..500 {
        let (p, k) = random_quench(&mut rng);
        let t = rng.gen_range(0.0..100.0);
        let psi = evolved_state(&p, k, t).unwrap().spinor;
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn evolution_solves_schrodinger_equation() {
    let mut rng = rng();
    let dt = 1e-5;
    for _ in 0..200 {
        let (p, k) = random_quench(&mut rng);
        let t = rng.gen_range(0.1..30.0);
        let f = |t| evolved_state(&p, k, t).unwrap().spinor;
        let lhs = (f(t + dt) - f(t - dt)) * (0.5 / dt);
        let rhs = bloch_hamiltonian(&p.post(), k).apply(&f(t)).scale(C64::new(0.0, -1.0));
        // O(dt² R_f³) truncation plus rounding
        assert!((lhs - rhs).norm() < 1e-8, "{}", (lhs - rhs).norm());
    }
}

#[test]
fn energy_variance_three_routes() {
    let mut rng = rng();
    for _ in 0..500 {
        let (p, k) = random_quench(&mut rng);
        let closed = energy_variance(&p, k).unwrap();

        let ov = overlap_coeffs(&p, k).unwrap();
        let rf = p.j2 * r_tilde(&p.post(), k);
        let spectral = 4.0 * rf * rf * ov.ground_weight() * ov.excited_weight();
        assert!((closed - spectral).abs() < 1e-10);

        let h = bloch_hamiltonian(&p.post(), k);
        let t = rng.gen_range(0.0..50.0);
        let psi = evolved_state(&p, k, t).unwrap().spinor;
        let h_psi = h.apply(&psi);
        let mean = psi.inner(&h_psi).re;
        let operator = h_psi.norm_sqr() - mean * mean;
        assert!((closed - operator).abs() < 1e-10);
    }
}

#[test]
fn quench_observables_are_even() {
    let mut rng = rng();
    for _ in 0..300 {
        let (p, k) = random_quench(&mut rng);
        assert_eq!(energy_variance(&p, k).unwrap(), energy_variance(&p, -k).unwrap());
        assert!((excitation_probability(&p, k).unwrap() - excitation_probability(&p, -k).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn symmetry_points_lock_the_excitation() {
    let mut rng = rng();
    for _ in 0..200 {
        let p = QuenchProtocol::new(rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0), 1.0).unwrap();
        for k in [0.0, PI] {
            if p.touches_gap() {
                continue;
            }
            let b2 = excitation_probability(&p, k).unwrap();
            assert!(b2 < 1e-12 || (1.0 - b2) < 1e-12, "{b2}");
            assert!(energy_variance(&p, k).unwrap() < 1e-14);
        }
    }
}
